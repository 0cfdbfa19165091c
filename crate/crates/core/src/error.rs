use thiserror::Error;

/// Errors raised by the library.
///
/// Vertex and color numbers inside messages are 1-based, like everywhere else
/// in the public surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(usize),

    #[error("vertex {vertex} out of range 1..={p}")]
    VertexOutOfRange { vertex: usize, p: usize },

    #[error("invalid graph family `{0}` (expected K<m>, C<m>, P<m> or Star<k>)")]
    BadFamily(String),

    #[error("invalid builder argument: {0}")]
    BadBuilder(String),

    #[error("color count must satisfy 1 <= n <= {max}, got {n}")]
    ColorCount { n: usize, max: usize },

    #[error("tuple has {got} color sets but the graph has {expected} vertices")]
    TupleLength { expected: usize, got: usize },

    #[error("not a cell of Hom(G, K_n): {0}")]
    InvalidCell(String),

    #[error("cell cap of {cap} exceeded while enumerating dimension {dim}")]
    CellCapExceeded { cap: usize, dim: usize },

    #[error("dimension {requested} outside the enumerated range {min}..={max}")]
    DimensionOutOfRange { requested: usize, min: usize, max: usize },

    #[error("skeleton depth {max_dim} cannot determine H_{t_max}; enumerate at least dimension {needed}")]
    SkeletonTooShallow { max_dim: usize, t_max: usize, needed: usize },

    #[error("chain mixes dimensions {0} and {1}")]
    MixedDimensions(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not an edge path: {0}")]
    NotAPath(String),

    #[error("internal invariant breached (implementation bug): {0}")]
    InvariantBreach(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
