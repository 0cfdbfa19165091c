use rayon::prelude::*;

use super::snf::SparseIntMatrix;
use crate::complex::{signed_faces, ColorSet, ComplexSkeleton};
use crate::error::{Error, Result};

/// The matrix of `∂_t`: rows are `(t-1)`-cells and columns `t`-cells, both in
/// canonical order. Every column lists its nonzero entries by ascending row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub nrows: usize,
    pub cols: Vec<Vec<(u32, i8)>>,
}

impl BoundaryMatrix {
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Dense copy, for small matrices and tests.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                out[r as usize][j] = v as i64;
            }
        }
        out
    }

    pub fn to_sparse(&self) -> SparseIntMatrix {
        SparseIntMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|c| c.iter().map(|&(r, v)| (r, v as i64)).collect()).collect(),
        }
    }
}

/// Assembles `∂_t` for `1 <= t <= max_dim`.
pub fn boundary_matrix(sk: &ComplexSkeleton, t: usize) -> Result<BoundaryMatrix> {
    if t == 0 || t > sk.max_dim() {
        return Err(Error::DimensionOutOfRange { requested: t, min: 1, max: sk.max_dim() });
    }
    let sets: Vec<&[ColorSet]> = sk.cells(t).collect();
    let cols = sets.par_iter().map(|s| boundary_column(sk, s)).collect();
    Ok(BoundaryMatrix { dim: t, nrows: sk.count(t - 1), cols })
}

/// Column of `∂` for one cell of the skeleton, sorted by row.
pub(crate) fn boundary_column(sk: &ComplexSkeleton, sets: &[ColorSet]) -> Vec<(u32, i8)> {
    let mut face = sets.to_vec();
    let mut col: Vec<(u32, i8)> = signed_faces(sets)
        .map(|(sign, pos, color)| {
            face[pos] = sets[pos].without(color);
            let (_, row) = sk.index_of(&face).expect("skeleton is closed under faces");
            face[pos] = sets[pos];
            (row as u32, sign as i8)
        })
        .collect();
    col.sort_unstable_by_key(|&(r, _)| r);
    col
}
