use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{check_colors, first_defect, Cell, ColorSet};
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// A closed edge path in the 1-skeleton of `Hom(G, K_n)`.
///
/// Each vertex is a proper coloring indexed by graph-order position. The path
/// is cyclic: the last vertex is joined back to the first, which is not
/// repeated. Consecutive vertices differ in at most one coordinate (equal
/// neighbors are removed by [`normalize_path`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePath {
    vertices: Vec<Vec<u32>>,
}

impl EdgePath {
    /// Validates and wraps a cyclic vertex sequence.
    pub fn new(graph: &Graph, n: usize, vertices: Vec<Vec<u32>>) -> Result<Self> {
        check_colors(n)?;
        if vertices.is_empty() {
            return Err(Error::NotAPath("a closed path needs at least one vertex".into()));
        }
        for (k, v) in vertices.iter().enumerate() {
            check_coloring(graph, n, v).map_err(|why| Error::NotAPath(format!("vertex {}: {why}", k + 1)))?;
        }
        let m = vertices.len();
        for k in 0..m {
            let d = differing(&vertices[k], &vertices[(k + 1) % m]);
            if d > 1 {
                return Err(Error::NotAPath(format!(
                    "vertices {} and {} differ in {d} coordinates",
                    k + 1,
                    (k + 1) % m + 1
                )));
            }
        }
        Ok(EdgePath { vertices })
    }

    /// The constant loop at one coloring.
    pub fn constant(graph: &Graph, n: usize, vertex: Vec<u32>) -> Result<Self> {
        Self::new(graph, n, vec![vertex])
    }

    pub fn from_cells(graph: &Graph, n: usize, cells: &[Cell]) -> Result<Self> {
        let vertices = cells
            .iter()
            .map(|c| c.as_coloring().ok_or_else(|| Error::NotAPath(format!("{c} is not a vertex"))))
            .collect::<Result<_>>()?;
        Self::new(graph, n, vertices)
    }

    pub fn vertices(&self) -> &[Vec<u32>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Whether the loop has collapsed to a single vertex.
    pub fn is_constant(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn to_cells(&self) -> Vec<Cell> {
        self.vertices.iter().map(|v| Cell::vertex(v)).collect()
    }

    fn at(&self, k: isize) -> &[u32] {
        let m = self.vertices.len() as isize;
        &self.vertices[k.rem_euclid(m) as usize]
    }
}

impl fmt::Display for EdgePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.to_cells().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Vertices are written as cells with singleton color lists.
impl Serialize for EdgePath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_cells().serialize(serializer)
    }
}

/// Deserialization only checks the shape; use [`EdgePath::new`] or
/// [`EdgePath::from_cells`] to validate against a graph.
impl<'de> Deserialize<'de> for EdgePath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let cells = Vec::<Cell>::deserialize(deserializer)?;
        let vertices = cells
            .iter()
            .map(|c| c.as_coloring().ok_or_else(|| serde::de::Error::custom(format!("{c} is not a vertex"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if vertices.is_empty() {
            return Err(serde::de::Error::custom("empty path"));
        }
        Ok(EdgePath { vertices })
    }
}

/// The three elementary homotopies of a closed path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// `(a, a) -> (a)`.
    DropRepeat,
    /// `(u, w) -> (u, U, W, w)` across a square or edge.
    InsertPair,
    /// `(v_{k-1}, v_k, v_{k+1}) -> (v_{k-1}, v_{k+1})` across a triangle or
    /// edge.
    DeleteVertex,
}

/// One elementary homotopy, supported on a single cell.
///
/// `position` is 1-based and refers to the path as it stands when the move
/// is applied. For `InsertPair` the two new vertices go right after that
/// position; for the other kinds the vertex at that position is removed.
/// `vertices` holds the inserted pair or the removed vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyMove {
    pub kind: MoveKind,
    pub position: usize,
    pub vertices: Vec<Cell>,
    pub support: Cell,
}

/// Outcome of [`verify_moves`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveCheck {
    pub valid: bool,
    /// Number of moves replayed successfully.
    pub applied: usize,
    pub final_path: EdgePath,
    pub diagnostic: Option<String>,
}

/// Removes consecutive repeats (cyclically) with `DropRepeat` moves.
pub fn normalize_path(path: &EdgePath) -> (EdgePath, Vec<HomotopyMove>) {
    let mut p = path.clone();
    let mut moves = Vec::new();
    drop_repeats(&mut p, &mut moves);
    (p, moves)
}

pub(crate) fn drop_repeats(p: &mut EdgePath, moves: &mut Vec<HomotopyMove>) {
    while p.len() > 1 {
        let m = p.len();
        let Some(k) = (0..m).find(|&k| p.vertices[k] == p.vertices[(k + 1) % m]) else { break };
        moves.push(apply_drop(p, k));
    }
}

pub(crate) fn apply_drop(p: &mut EdgePath, k: usize) -> HomotopyMove {
    let v = p.vertices.remove(k);
    let cell = Cell::vertex(&v);
    HomotopyMove { kind: MoveKind::DropRepeat, position: k + 1, vertices: vec![cell.clone()], support: cell }
}

pub(crate) fn apply_insert(p: &mut EdgePath, k: usize, a: Vec<u32>, b: Vec<u32>, support: Cell) -> HomotopyMove {
    let cells = vec![Cell::vertex(&a), Cell::vertex(&b)];
    p.vertices.splice(k + 1..k + 1, [a, b]);
    HomotopyMove { kind: MoveKind::InsertPair, position: k + 1, vertices: cells, support }
}

pub(crate) fn apply_delete(p: &mut EdgePath, k: usize, support: Cell) -> HomotopyMove {
    let v = p.vertices.remove(k);
    HomotopyMove { kind: MoveKind::DeleteVertex, position: k + 1, vertices: vec![Cell::vertex(&v)], support }
}

/// Replays `moves` from `start`, checking each one locally: the support is a
/// valid cell of dimension at most 2, the old and new windows are edge paths
/// with the same endpoints, and every vertex involved lies in the closure of
/// the support. Such a replacement is a homotopy because the closure of a
/// cell is contractible.
///
/// With `expect_constant`, the final path must be a single vertex.
pub fn verify_moves(
    graph: &Graph,
    n: usize,
    start: &EdgePath,
    moves: &[HomotopyMove],
    expect_constant: bool,
) -> MoveCheck {
    let mut path = start.clone();
    let fail = |path: EdgePath, applied: usize, why: String| MoveCheck {
        valid: false,
        applied,
        final_path: path,
        diagnostic: Some(why),
    };
    if let Err(e) = EdgePath::new(graph, n, start.vertices.clone()) {
        return fail(path, 0, format!("start path: {e}"));
    }
    for (idx, mv) in moves.iter().enumerate() {
        if let Err(why) = check_move(graph, n, &mut path, mv) {
            return fail(path, idx, format!("move {} ({:?} at {}): {why}", idx + 1, mv.kind, mv.position));
        }
    }
    if expect_constant && !path.is_constant() {
        let len = path.len();
        return fail(path, moves.len(), format!("final path has {len} vertices, expected a constant loop"));
    }
    MoveCheck { valid: true, applied: moves.len(), final_path: path, diagnostic: None }
}

fn check_move(graph: &Graph, n: usize, path: &mut EdgePath, mv: &HomotopyMove) -> std::result::Result<(), String> {
    let m = path.len();
    if mv.position == 0 || mv.position > m {
        return Err(format!("position out of range 1..={m}"));
    }
    let k = mv.position - 1;
    if let Some(why) = first_defect(graph, n, mv.support.sets()) {
        return Err(format!("support {}: {why}", mv.support));
    }
    if mv.support.dim() > 2 {
        return Err(format!("support {} has dimension {}", mv.support, mv.support.dim()));
    }
    let inside = |v: &[u32]| v.iter().zip(mv.support.sets()).all(|(&c, s)| s.contains(c));
    let vertex_of = |c: &Cell| c.as_coloring().ok_or_else(|| format!("{c} is not a vertex"));
    match mv.kind {
        MoveKind::DropRepeat => {
            if m < 2 {
                return Err("cannot drop the only vertex".into());
            }
            if path.vertices[k] != path.vertices[(k + 1) % m] {
                return Err("the vertex is not repeated".into());
            }
            expect_vertices(mv, &[&path.vertices[k]])?;
            path.vertices.remove(k);
        }
        MoveKind::InsertPair => {
            let [a, b] = mv.vertices.as_slice() else { return Err("expected two inserted vertices".into()) };
            let (a, b) = (vertex_of(a)?, vertex_of(b)?);
            for v in [&a, &b] {
                check_coloring(graph, n, v)?;
            }
            let (u, w) = (path.vertices[k].clone(), path.vertices[(k + 1) % m].clone());
            let window = [&u, &a, &b, &w];
            if window.windows(2).any(|x| differing(x[0], x[1]) > 1) {
                return Err("the new window is not an edge path".into());
            }
            if !window.iter().all(|v| inside(v)) {
                return Err(format!("window leaves the closure of {}", mv.support));
            }
            path.vertices.splice(k + 1..k + 1, [a, b]);
        }
        MoveKind::DeleteVertex => {
            if m < 2 {
                return Err("cannot delete the only vertex".into());
            }
            let (prev, v, next) = (path.at(k as isize - 1), path.at(k as isize), path.at(k as isize + 1));
            expect_vertices(mv, &[v])?;
            if differing(prev, next) > 1 {
                return Err("the shortened window is not an edge path".into());
            }
            if !(inside(prev) && inside(v) && inside(next)) {
                return Err(format!("window leaves the closure of {}", mv.support));
            }
            path.vertices.remove(k);
        }
    }
    Ok(())
}

fn expect_vertices(mv: &HomotopyMove, expected: &[&[u32]]) -> std::result::Result<(), String> {
    let got: Vec<Option<Vec<u32>>> = mv.vertices.iter().map(Cell::as_coloring).collect();
    let want: Vec<Option<Vec<u32>>> = expected.iter().map(|v| Some(v.to_vec())).collect();
    if got != want {
        return Err("recorded vertex does not match the path".into());
    }
    Ok(())
}

pub(crate) fn differing(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub(crate) fn check_coloring(graph: &Graph, n: usize, v: &[u32]) -> std::result::Result<(), String> {
    if v.iter().any(|&c| c == 0 || c as usize > n) {
        return Err(format!("colors must lie in 1..={n}"));
    }
    let sets: Vec<ColorSet> = v.iter().map(|&c| ColorSet::singleton(c)).collect();
    match first_defect(graph, n, &sets) {
        Some(why) => Err(why),
        None => Ok(()),
    }
}

/// The first proper coloring in canonical order, if any.
pub fn first_coloring(graph: &Graph, n: usize) -> Option<Vec<u32>> {
    fn go(graph: &Graph, n: usize, v: &mut Vec<u32>) -> bool {
        let pos = v.len();
        if pos == graph.p() {
            return true;
        }
        for c in 1..=n as u32 {
            if graph.position_neighbors(pos).iter().all(|&b| b >= pos || v[b] != c) {
                v.push(c);
                if go(graph, n, v) {
                    return true;
                }
                v.pop();
            }
        }
        false
    }
    let mut v = Vec::with_capacity(graph.p());
    go(graph, n, &mut v).then_some(v)
}

/// Colorings one recoloring away from `v`.
pub fn neighbors(graph: &Graph, n: usize, v: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for pos in 0..v.len() {
        for c in 1..=n as u32 {
            if c != v[pos] && graph.position_neighbors(pos).iter().all(|&b| v[b] != c) {
                let mut w = v.to_vec();
                w[pos] = c;
                out.push(w);
            }
        }
    }
    out
}

/// A random closed path of the form: tree path from the base vertex to a
/// random vertex, a random walk of `steps` edges, and the tree path back.
///
/// The tree is the breadth-first tree of the 1-skeleton rooted at the first
/// coloring in canonical order, so the whole vertex set is visited once.
/// Deterministic for a seeded `rng`.
pub fn sample_loop<R: Rng>(graph: &Graph, n: usize, steps: usize, rng: &mut R) -> Result<EdgePath> {
    check_colors(n)?;
    let base = first_coloring(graph, n).ok_or_else(|| Error::Precondition(format!("Hom(G, K_{n}) is empty")))?;
    let mut parent: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    let mut seen = vec![base.clone()];
    parent.insert(base.clone(), base.clone());
    let mut queue = VecDeque::from([base.clone()]);
    while let Some(v) = queue.pop_front() {
        for w in neighbors(graph, n, &v) {
            if !parent.contains_key(&w) {
                parent.insert(w.clone(), v.clone());
                seen.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    let to_root = |mut v: Vec<u32>| {
        let mut out = vec![v.clone()];
        while v != base {
            v = parent[&v].clone();
            out.push(v.clone());
        }
        out
    };
    let start = seen[rng.gen_range(0..seen.len())].clone();
    let mut vertices: Vec<Vec<u32>> = to_root(start.clone()).into_iter().rev().collect();
    let mut cur = start;
    for _ in 0..steps {
        let nb = neighbors(graph, n, &cur);
        if nb.is_empty() {
            break;
        }
        cur = nb[rng.gen_range(0..nb.len())].clone();
        vertices.push(cur.clone());
    }
    let back = to_root(cur);
    vertices.extend(back.into_iter().skip(1));
    // the closing vertex is the base again
    vertices.pop();
    if vertices.is_empty() {
        vertices.push(base);
    }
    EdgePath::new(graph, n, vertices)
}
