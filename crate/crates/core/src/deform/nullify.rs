use super::reduce::{reduce_cycle, ChainCertificate};
use crate::complex::{check_colors, Cell, Chain, ColorSet, Term};
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Finds `D` with `∂D = C` for a `t`-cycle with `1 <= t <= vgap(G, n) - 1`.
///
/// The cycle is reduced for `i = 2..=n`, which pins the independent prefix
/// to color `n`. What remains is a cycle of `Hom(G - prefix, K_{n-1})`; it
/// is filled recursively and the filler is carried back. When the prefix
/// covers the whole graph no cell of positive dimension survives pinning,
/// so the reduced cycle is already zero.
pub fn nullify_cycle(graph: &Graph, n: usize, c: &Chain) -> Result<ChainCertificate> {
    check_colors(n)?;
    let t = c.dim();
    if c.is_zero() {
        return Ok(ChainCertificate { t, additions: vec![] });
    }
    let vgap = graph.vgap(n);
    if t == 0 || t as i64 > vgap - 1 {
        return Err(Error::Precondition(format!("cycle dimension {t} outside 1..={}", vgap - 1)));
    }
    let mut additions = Vec::new();
    let mut cur = c.clone();
    for i in 2..=n as u32 {
        let (next, cert) = reduce_cycle(graph, n, &cur, i)?;
        additions.extend(cert.additions);
        cur = next;
    }
    if cur.is_zero() {
        return Ok(ChainCertificate { t, additions });
    }
    let Some((sub, map)) = graph.without_prefix() else {
        return Err(Error::InvariantBreach(format!("pinned cycle on an edgeless graph is nonzero: {cur}")));
    };
    let transport = Transport { lambda: graph.lambda(), p: graph.p(), n, map };
    let sub_cycle = cur.map_cells(|cell| {
        let down = transport.project(cell);
        (transport.sign(&down), down)
    });
    for term in nullify_cycle(&sub, n - 1, &sub_cycle)?.additions {
        let up = transport.lift(&term.cell);
        additions.push(Term { coeff: term.coeff * transport.sign(&term.cell), cell: up });
    }
    Ok(ChainCertificate { t, additions })
}

/// The embedding of `Hom(G - prefix, K_{n-1})` into `Hom(G, K_n)` that puts
/// color `n` on the prefix.
///
/// The two complexes order their coordinates differently, so a cell is
/// carried over with the sign `(-1)^{λ·N}·ε`, where `N` counts its colors
/// and `ε` is the sign of the permutation taking its color list from the
/// subgraph's coordinate order to the graph's. This makes the embedding
/// commute with `∂`.
pub(crate) struct Transport {
    pub lambda: usize,
    pub p: usize,
    pub n: usize,
    /// Subgraph position to graph position.
    pub map: Vec<usize>,
}

impl Transport {
    pub fn lift(&self, cell: &Cell) -> Cell {
        let mut out = vec![ColorSet::singleton(self.n as u32); self.p];
        for (k, &q) in self.map.iter().enumerate() {
            out[q] = cell.sets()[k];
        }
        Cell::new(out)
    }

    pub fn project(&self, cell: &Cell) -> Cell {
        debug_assert!(cell.sets()[..self.lambda].iter().all(|s| *s == ColorSet::singleton(self.n as u32)));
        Cell::new(self.map.iter().map(|&q| cell.sets()[q]).collect())
    }

    /// Sign of the lift of a subgraph cell.
    pub fn sign(&self, sub_cell: &Cell) -> i64 {
        let sizes: Vec<usize> = sub_cell.sets().iter().map(|s| s.len()).collect();
        let mut parity = self.lambda * sizes.iter().sum::<usize>();
        for a in 0..sizes.len() {
            for b in a + 1..sizes.len() {
                if self.map[a] > self.map[b] {
                    parity += sizes[a] * sizes[b];
                }
            }
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }
}
