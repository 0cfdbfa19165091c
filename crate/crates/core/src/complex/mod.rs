//! Cells of `Hom(G, K_n)`, their boundaries, and skeletal enumeration.
//!
//! A cell is a tuple `(A_1, ..., A_p)` of nonempty color sets indexed by the
//! graph order (see [`crate::graphs`]) such that `A_a ∩ A_b = ∅` whenever
//! `x_a x_b` is an edge. Its dimension is `Σ |A_j| - p`; the vertices are the
//! proper colorings.

mod cell;
mod skeleton;

pub(crate) use cell::signed_faces;
pub use cell::{cell_dim, parse_compact_chain, Cell, Chain, ColorSet, Term, MAX_COLORS};
pub use skeleton::{enumerate_skeleton, ComplexSkeleton, DEFAULT_CELL_CAP};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Rejects color counts outside `1..=62`.
pub fn check_colors(n: usize) -> Result<()> {
    if n == 0 || n > MAX_COLORS {
        return Err(Error::ColorCount { n, max: MAX_COLORS });
    }
    Ok(())
}

/// Whether `sets` indexes a cell of `Hom(G, K_n)`: every set nonempty and
/// inside `[n]`, and sets on adjacent positions disjoint.
pub fn is_cell(graph: &Graph, n: usize, sets: &[ColorSet]) -> Result<bool> {
    if sets.len() != graph.p() {
        return Err(Error::TupleLength { expected: graph.p(), got: sets.len() });
    }
    Ok(first_defect(graph, n, sets).is_none())
}

/// Describes why a tuple is not a cell, or `None` when it is one.
pub fn first_defect(graph: &Graph, n: usize, sets: &[ColorSet]) -> Option<String> {
    if sets.len() != graph.p() {
        return Some(format!("tuple length {} but p = {}", sets.len(), graph.p()));
    }
    let universe = ColorSet::full(n);
    for (a, &set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Some(format!("coordinate {} is empty", a + 1));
        }
        if !set.is_subset(universe) {
            return Some(format!("coordinate {} uses a color outside 1..={n}", a + 1));
        }
        for &b in graph.position_neighbors(a).iter().filter(|&&b| b > a) {
            if set.intersects(sets[b]) {
                return Some(format!("coordinates {} and {} are adjacent but share a color", a + 1, b + 1));
            }
        }
    }
    None
}

/// Checks a cell and returns a descriptive error if it is invalid.
pub fn validate_cell(graph: &Graph, n: usize, cell: &Cell) -> Result<()> {
    match first_defect(graph, n, cell.sets()) {
        None => Ok(()),
        Some(why) => Err(Error::InvalidCell(format!("{cell}: {why}"))),
    }
}

/// Cell test for a general target graph `H`: `sets[a]` holds vertices of `H`
/// (1-based) and every pair across an edge of `G` must be an edge of `H`.
///
/// With `H = K_n` this agrees with [`is_cell`].
pub fn is_hom_cell(graph: &Graph, target: &Graph, sets: &[ColorSet]) -> Result<bool> {
    if sets.len() != graph.p() {
        return Err(Error::TupleLength { expected: graph.p(), got: sets.len() });
    }
    let universe = ColorSet::full(target.p());
    if sets.iter().any(|s| s.is_empty() || !s.is_subset(universe)) {
        return Ok(false);
    }
    for a in 0..graph.p() {
        for &b in graph.position_neighbors(a).iter().filter(|&&b| b > a) {
            for u in sets[a].iter() {
                for v in sets[b].iter() {
                    if !target.adjacent(u as usize, v as usize) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Membership in `X_i(G, j)`: the first `j` coordinates use only colors
/// `i..=n`.
pub fn in_x(cell: &Cell, i: u32, j: usize) -> bool {
    let forbidden = if i <= 1 { ColorSet::EMPTY } else { ColorSet::full(i as usize - 1) };
    cell.sets().iter().take(j).all(|s| !s.intersects(forbidden))
}

/// Whether every cell of `chain` lies in `X_i(G, j)`.
pub fn chain_in_x(chain: &Chain, i: u32, j: usize) -> bool {
    chain.cells().all(|c| in_x(c, i, j))
}

/// Draws a cell of dimension `dim`: a random proper coloring, then `dim`
/// random admissible colors added one at a time.
///
/// Returns `None` when `G` has no proper `n`-coloring or the growth runs out
/// of admissible colors.
pub fn random_cell<R: Rng + ?Sized>(graph: &Graph, n: usize, dim: usize, rng: &mut R) -> Option<Cell> {
    fn extend<R: Rng + ?Sized>(graph: &Graph, n: usize, sets: &mut Vec<ColorSet>, rng: &mut R) -> bool {
        let a = sets.len();
        if a == graph.p() {
            return true;
        }
        let mut colors: Vec<u32> = (1..=n as u32).collect();
        colors.shuffle(rng);
        for c in colors {
            if graph.position_neighbors(a).iter().any(|&b| b < a && sets[b].contains(c)) {
                continue;
            }
            sets.push(ColorSet::singleton(c));
            if extend(graph, n, sets, rng) {
                return true;
            }
            sets.pop();
        }
        false
    }
    let mut sets = Vec::with_capacity(graph.p());
    if !extend(graph, n, &mut sets, rng) {
        return None;
    }
    for _ in 0..dim {
        let options: Vec<(usize, u32)> = (0..graph.p())
            .flat_map(|a| (1..=n as u32).map(move |c| (a, c)))
            .filter(|&(a, c)| !sets[a].contains(c) && graph.position_neighbors(a).iter().all(|&b| !sets[b].contains(c)))
            .collect();
        let &(a, c) = options.choose(rng)?;
        sets[a] = sets[a].with(c);
    }
    Some(Cell::new(sets))
}
