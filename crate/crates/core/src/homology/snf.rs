//! Exact Smith normal form of sparse integer matrices.
//!
//! Columns are reduced one at a time against previously accepted pivot
//! columns, each of which owns a pivot row holding a `±1`. Only unimodular
//! column operations are used, so the accepted pivots contribute invariant
//! factors equal to one. Columns that end up without a unit entry are kept
//! aside and finished by a dense big-integer Smith normal form.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

const NO_PIVOT: u32 = u32::MAX;

/// Rank and invariant factors of an integer matrix.
///
/// The factors `d_1 | d_2 | ... | d_rank` are stored as a count of leading
/// ones plus the factors greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmithForm {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigUint>,
}

impl SmithForm {
    /// All `rank` invariant factors, ones included.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let ones = self.rank - self.torsion.len();
        std::iter::repeat(BigUint::one()).take(ones).chain(self.torsion.iter().cloned()).collect()
    }
}

/// A column-major sparse integer matrix with `u32` row indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseIntMatrix { nrows, cols: Vec::new() }
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i as u32, rows[i][j])).collect())
            .collect();
        SparseIntMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
}

/// Smith normal form of a sparse matrix.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let mut elim = UnitEliminator::new(m.nrows);
    for col in &m.cols {
        elim.push_column(col.iter().copied());
    }
    elim.finish().0
}

/// Incremental column reducer; see the module documentation.
pub struct UnitEliminator {
    pivot_of_row: Vec<u32>,
    pivot_rows: Vec<u32>,
    pivot_signs: Vec<i64>,
    pivot_cols: Vec<Vec<(u32, i64)>>,
    residual: Vec<BTreeMap<u32, BigInt>>,
    acc: Vec<i64>,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl UnitEliminator {
    pub fn new(nrows: usize) -> Self {
        UnitEliminator {
            pivot_of_row: vec![NO_PIVOT; nrows],
            pivot_rows: Vec::new(),
            pivot_signs: Vec::new(),
            pivot_cols: Vec::new(),
            residual: Vec::new(),
            acc: vec![0; nrows],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    /// Number of unit pivots accepted so far.
    pub fn unit_rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn push_column<I: IntoIterator<Item = (u32, i64)>>(&mut self, col: I) {
        let col: Vec<(u32, i64)> = col.into_iter().filter(|&(_, v)| v != 0).collect();
        let reduced = match self.reduce_small(&col) {
            Some(r) => r,
            None => {
                let big = self.reduce_big(col.iter().map(|&(r, v)| (r, BigInt::from(v))));
                match big.iter().map(|(&r, v)| v.to_i64().map(|v| (r, v))).collect::<Option<Vec<_>>>() {
                    Some(small) => small,
                    None => {
                        self.residual.push(big);
                        return;
                    }
                }
            }
        };
        if reduced.is_empty() {
            return;
        }
        // heuristic: the lowest unit entry becomes the pivot
        match reduced.iter().rev().find(|(_, v)| v.abs() == 1) {
            Some(&(row, sign)) => {
                let idx = self.pivot_rows.len() as u32;
                self.pivot_of_row[row as usize] = idx;
                self.pivot_rows.push(row);
                self.pivot_signs.push(sign);
                self.pivot_cols.push(reduced);
            }
            None => self.residual.push(reduced.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect()),
        }
    }

    /// Reduces with `i64` arithmetic; `None` on overflow.
    fn reduce_small(&mut self, col: &[(u32, i64)]) -> Option<Vec<(u32, i64)>> {
        for &(r, v) in col {
            self.acc[r as usize] += v;
            self.touched.push(r);
            let idx = self.pivot_of_row[r as usize];
            if idx != NO_PIVOT {
                self.heap.push(Reverse(idx));
            }
        }
        let mut overflow = false;
        'outer: while let Some(Reverse(idx)) = self.heap.pop() {
            let prow = self.pivot_rows[idx as usize] as usize;
            let a = self.acc[prow];
            if a == 0 {
                continue;
            }
            let factor = a * self.pivot_signs[idx as usize];
            for &(row, val) in &self.pivot_cols[idx as usize] {
                let old = self.acc[row as usize];
                let Some(new) = factor.checked_mul(val).and_then(|d| old.checked_sub(d)) else {
                    overflow = true;
                    break 'outer;
                };
                self.acc[row as usize] = new;
                if old == 0 && new != 0 {
                    self.touched.push(row);
                    let idx2 = self.pivot_of_row[row as usize];
                    if idx2 != NO_PIVOT {
                        self.heap.push(Reverse(idx2));
                    }
                }
            }
        }
        self.touched.sort_unstable();
        self.touched.dedup();
        let out = if overflow {
            None
        } else {
            Some(
                self.touched
                    .iter()
                    .filter(|&&r| self.acc[r as usize] != 0)
                    .map(|&r| (r, self.acc[r as usize]))
                    .collect(),
            )
        };
        for &r in &self.touched {
            self.acc[r as usize] = 0;
        }
        self.touched.clear();
        self.heap.clear();
        out
    }

    fn reduce_big<I: IntoIterator<Item = (u32, BigInt)>>(&self, col: I) -> BTreeMap<u32, BigInt> {
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        let mut heap = BinaryHeap::new();
        for (r, v) in col {
            *acc.entry(r).or_default() += v;
            let idx = self.pivot_of_row[r as usize];
            if idx != NO_PIVOT {
                heap.push(Reverse(idx));
            }
        }
        while let Some(Reverse(idx)) = heap.pop() {
            let prow = self.pivot_rows[idx as usize];
            let Some(a) = acc.get(&prow).filter(|a| !a.is_zero()).cloned() else { continue };
            let factor = a * self.pivot_signs[idx as usize];
            for &(row, val) in &self.pivot_cols[idx as usize] {
                let slot = acc.entry(row).or_default();
                let was_zero = slot.is_zero();
                *slot -= &factor * val;
                if was_zero && !slot.is_zero() {
                    let idx2 = self.pivot_of_row[row as usize];
                    if idx2 != NO_PIVOT {
                        heap.push(Reverse(idx2));
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    /// Completes the reduction. Also returns the unit pivot rows; columns of
    /// the next lower boundary matrix indexed by these rows can be skipped
    /// without changing its Smith form.
    pub fn finish(self) -> (SmithForm, Vec<u32>) {
        let unit = self.pivot_rows.len();
        // residual columns may meet pivot rows created after they were stored
        let residual: Vec<BTreeMap<u32, BigInt>> = self
            .residual
            .iter()
            .map(|c| self.reduce_big(c.iter().map(|(&r, v)| (r, v.clone()))))
            .filter(|c| !c.is_empty())
            .collect();
        let mut factors = dense_block_snf(&residual);
        let rank = unit + factors.len();
        factors.retain(|d| !d.is_one());
        (SmithForm { rank, torsion: factors }, self.pivot_rows)
    }
}

fn dense_block_snf(cols: &[BTreeMap<u32, BigInt>]) -> Vec<BigUint> {
    if cols.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<u32> = cols.iter().flat_map(|c| c.keys().copied()).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (j, col) in cols.iter().enumerate() {
        for (r, v) in col {
            let i = rows.binary_search(r).unwrap();
            dense[i][j] = v.clone();
        }
    }
    dense_smith_factors(dense)
}

/// Nonzero invariant factors of a dense integer matrix, in divisibility
/// order. Pivots are chosen by smallest magnitude to limit entry growth.
#[allow(clippy::needless_range_loop)]
pub fn dense_smith_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..nrows.min(ncols) {
        let Some((pi, pj)) = smallest_nonzero(&m, t, t) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if !m[i][t].is_zero() {
                    let q = &m[i][t] / &m[t][t];
                    for j in t..ncols {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                    clean &= m[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !m[t][j].is_zero() {
                    let q = &m[t][j] / &m[t][t];
                    for i in t..nrows {
                        let d = &q * &m[i][t];
                        m[i][j] -= d;
                    }
                    clean &= m[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder is now smaller than the pivot
                let (bi, bj) = smallest_in_cross(&m, t);
                m.swap(t, bi);
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            let pivot = m[t][t].clone();
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&m[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs().to_biguint().expect("absolute value is nonnegative"));
    }
    out
}

fn smallest_nonzero(m: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.magnitude() < m[bi][bj].magnitude()) {
                best = Some((i, j));
                if v.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn smallest_in_cross(m: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..m.len() {
        if !m[i][t].is_zero() && (m[best.0][best.1].is_zero() || m[i][t].magnitude() < m[best.0][best.1].magnitude()) {
            best = (i, t);
        }
    }
    for j in t..m[t].len() {
        if !m[t][j].is_zero() && m[t][j].magnitude() < m[best.0][best.1].magnitude() {
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(f: &SmithForm) -> Vec<u64> {
        f.invariant_factors().iter().map(|d| d.to_u64().unwrap()).collect()
    }

    #[test]
    fn zero_matrix() {
        let m = SparseIntMatrix::from_dense(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(smith_normal_form(&m), SmithForm::default());
        assert_eq!(smith_normal_form(&SparseIntMatrix::new(0)).rank, 0);
    }

    #[test]
    fn diag_two() {
        let f = smith_normal_form(&SparseIntMatrix::from_dense(&[vec![2]]));
        assert_eq!(f.rank, 1);
        assert_eq!(factors(&f), vec![2]);
    }

    #[test]
    fn hexagon_incidence() {
        // 6-cycle: edge k joins vertices k and k+1 mod 6
        let mut rows = vec![vec![0i64; 6]; 6];
        for k in 0..6 {
            rows[k][k] = -1;
            rows[(k + 1) % 6][k] = 1;
        }
        let f = smith_normal_form(&SparseIntMatrix::from_dense(&rows));
        assert_eq!(f.rank, 5);
        assert!(f.torsion.is_empty());
    }

    #[test]
    fn classic_torsion() {
        // SNF of [[2,4,4],[-6,6,12],[10,-4,-16]] is diag(2, 6, 12)
        let m = SparseIntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let f = smith_normal_form(&m);
        assert_eq!(factors(&f), vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) must become diag(1, 6)
        let m = SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(factors(&smith_normal_form(&m)), vec![1, 6]);
    }

    #[test]
    fn projective_plane_boundary_has_two_torsion() {
        // d2 of the minimal RP^2 (one 2-cell glued along a doubled edge)
        let m = SparseIntMatrix::from_dense(&[vec![2]]);
        assert_eq!(smith_normal_form(&m).torsion, vec![BigUint::from(2u32)]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2 + 7;
        let m = SparseIntMatrix::from_dense(&[vec![1, big], vec![big, 1]]);
        // det = 1 - big^2, both entries coprime structure: rank 2
        let f = smith_normal_form(&m);
        assert_eq!(f.rank, 2);
        let det: BigInt = BigInt::from(big) * BigInt::from(big) - 1;
        assert_eq!(f.torsion, vec![det.magnitude().clone()]);
    }
}
