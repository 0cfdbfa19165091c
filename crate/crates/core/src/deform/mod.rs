//! Certificate-producing deformations.
//!
//! Loops in the 1-skeleton are contracted by elementary homotopies across
//! single cells ([`contract_loop`], checked by [`verify_moves`]). Cycles are
//! pushed into smaller subcomplexes by subtracting boundaries
//! ([`reduce_cycle`]) and filled outright when their dimension is below the
//! color-valency gap ([`nullify_cycle`]); every subtracted boundary is
//! recorded and [`verify_certificate`] re-checks the result exactly.

mod contract;
mod loops;
mod nullify;
mod reduce;

pub use contract::{advance_pass, contract_loop};
pub use loops::{
    first_coloring, neighbors, normalize_path, sample_loop, verify_moves, EdgePath, HomotopyMove, MoveCheck, MoveKind,
};
pub use nullify::nullify_cycle;
pub use reduce::{
    reduce_cycle, reduce_cycle_traced, simplex_boundary, simplex_fill, verify_certificate, CertificateCheck,
    ChainCertificate, PhaseSnapshot, Reduction, SimplexChain,
};
