use std::cmp::Ordering as CmpOrdering;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{check_colors, Cell, ColorSet};
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Default bound on the aggregate number of enumerated cells.
pub const DEFAULT_CELL_CAP: usize = 10_000_000;

/// All cells of `Hom(G, K_n)` of dimension at most `max_dim`.
///
/// Cells of each dimension are stored back to back (`p` masks per cell) in
/// canonical order: lexicographic on the tuple of masks. Lookups are binary
/// searches.
#[derive(Debug, Clone)]
pub struct ComplexSkeleton {
    graph: Graph,
    n: usize,
    max_dim: usize,
    cells: Vec<Vec<ColorSet>>,
}

impl ComplexSkeleton {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn p(&self) -> usize {
        self.graph.p()
    }

    /// Number of cells in dimension `d` (0 beyond `max_dim`).
    pub fn count(&self, d: usize) -> usize {
        match self.cells.get(d) {
            Some(flat) if self.p() > 0 => flat.len() / self.p(),
            Some(flat) => flat.len().min(1),
            None => 0,
        }
    }

    /// Cell counts for dimensions `0..=max_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.max_dim).map(|d| self.count(d)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.f_vector().iter().sum()
    }

    /// Highest dimension holding at least one cell.
    pub fn top_dim(&self) -> Option<usize> {
        (0..=self.max_dim).rev().find(|&d| self.count(d) > 0)
    }

    /// The `k`-th cell of dimension `d`, as a slice of color sets.
    pub fn cell_sets(&self, d: usize, k: usize) -> &[ColorSet] {
        let p = self.p();
        &self.cells[d][k * p..(k + 1) * p]
    }

    pub fn cell(&self, d: usize, k: usize) -> Cell {
        Cell::new(self.cell_sets(d, k).to_vec())
    }

    /// Cells of dimension `d` in canonical order.
    pub fn cells(&self, d: usize) -> impl ExactSizeIterator<Item = &[ColorSet]> + '_ {
        let p = self.p().max(1);
        self.cells.get(d).map(|v| v.as_slice()).unwrap_or(&[]).chunks_exact(p)
    }

    /// Position of `sets` among the cells of its dimension.
    pub fn index_of(&self, sets: &[ColorSet]) -> Option<(usize, usize)> {
        if sets.len() != self.p() || sets.iter().any(|s| s.is_empty()) {
            return None;
        }
        let d = super::cell_dim(sets);
        let flat = self.cells.get(d)?;
        let p = self.p();
        let (mut lo, mut hi) = (0usize, flat.len() / p);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * p..(mid + 1) * p].cmp(sets) {
                CmpOrdering::Less => lo = mid + 1,
                CmpOrdering::Greater => hi = mid,
                CmpOrdering::Equal => return Some((d, mid)),
            }
        }
        None
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.index_of(cell.sets()).is_some()
    }
}

/// Enumerates every cell of dimension `<= max_dim` by backtracking over the
/// graph order: each position receives a nonempty color set disjoint from the
/// sets already placed on its neighbors, and branches whose dimension excess
/// exceeds `max_dim` are cut.
///
/// Fails with [`Error::CellCapExceeded`] once more than `cell_cap` cells have
/// been produced. Branches on the first position's color set run in
/// parallel; the result does not depend on scheduling.
pub fn enumerate_skeleton(graph: &Graph, n: usize, max_dim: usize, cell_cap: usize) -> Result<ComplexSkeleton> {
    check_colors(n)?;
    if cell_cap == 0 {
        return Err(Error::Precondition("cell cap must be positive".into()));
    }
    let p = graph.p();
    let full = ColorSet::full(n).mask();
    let counter = AtomicUsize::new(0);
    let overflow_dim = AtomicUsize::new(usize::MAX);
    let stop = AtomicBool::new(false);

    let firsts: Vec<u64> = submasks_ascending(full).filter(|m| (m.count_ones() as usize) <= max_dim + 1).collect();

    let branches: Vec<Vec<Vec<ColorSet>>> = firsts
        .par_iter()
        .map(|&first| {
            let mut search = Search {
                graph,
                full,
                max_dim,
                cap: cell_cap,
                counter: &counter,
                overflow_dim: &overflow_dim,
                stop: &stop,
                assign: Vec::with_capacity(p),
                out: vec![Vec::new(); max_dim + 1],
            };
            search.assign.push(ColorSet::from_mask(first));
            search.descend(1, first.count_ones() as usize - 1);
            search.out
        })
        .collect();

    if stop.load(Ordering::Relaxed) {
        return Err(Error::CellCapExceeded { cap: cell_cap, dim: overflow_dim.load(Ordering::Relaxed) });
    }
    let mut cells = vec![Vec::new(); max_dim + 1];
    for branch in branches {
        for (d, flat) in branch.into_iter().enumerate() {
            cells[d].extend(flat);
        }
    }
    Ok(ComplexSkeleton { graph: graph.clone(), n, max_dim, cells })
}

struct Search<'a> {
    graph: &'a Graph,
    full: u64,
    max_dim: usize,
    cap: usize,
    counter: &'a AtomicUsize,
    overflow_dim: &'a AtomicUsize,
    stop: &'a AtomicBool,
    assign: Vec<ColorSet>,
    out: Vec<Vec<ColorSet>>,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize, excess: usize) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if pos == self.graph.p() {
            if self.counter.fetch_add(1, Ordering::Relaxed) >= self.cap {
                self.overflow_dim.fetch_min(excess, Ordering::Relaxed);
                self.stop.store(true, Ordering::Relaxed);
                return;
            }
            self.out[excess].extend_from_slice(&self.assign);
            return;
        }
        let forbidden = self
            .graph
            .position_neighbors(pos)
            .iter()
            .filter(|&&b| b < pos)
            .fold(0u64, |acc, &b| acc | self.assign[b].mask());
        let allowed = self.full & !forbidden;
        let budget = self.max_dim - excess;
        for mask in submasks_ascending(allowed) {
            let extra = mask.count_ones() as usize - 1;
            if extra > budget {
                continue;
            }
            self.assign.push(ColorSet::from_mask(mask));
            self.descend(pos + 1, excess + extra);
            self.assign.pop();
        }
    }
}

/// Nonempty submasks of `mask` in increasing numeric order.
fn submasks_ascending(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = 0u64;
    std::iter::from_fn(move || {
        // (cur - mask) & mask steps to the next larger submask
        cur = cur.wrapping_sub(mask) & mask;
        (cur != 0).then_some(cur)
    })
}
