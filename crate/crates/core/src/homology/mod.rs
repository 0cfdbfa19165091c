//! Integer homology of `Hom(G, K_n)` from its skeleton.
//!
//! Boundary matrices are reduced from the top dimension down. Whenever a
//! column of `∂_{t+1}` is accepted with a unit pivot in row `r`, the `t`-cell
//! `r` is a redundant generator of the image of `∂_t` and its column is never
//! assembled. Over `ℤ` this relies on the accepted pivot block being
//! unitriangular, which the eliminator guarantees.

mod connectivity;
mod matrix;
mod snf;

pub use connectivity::{connectivity_report, Check, ConnectivityOptions, ConnectivityReport, Status, Verdict};
pub use matrix::{boundary_matrix, BoundaryMatrix};
pub use snf::{dense_smith_factors, smith_normal_form, SmithForm, SparseIntMatrix, UnitEliminator};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::complex::ComplexSkeleton;
use crate::error::{Error, Result};

const CHUNK: usize = 1 << 15;

/// Betti numbers and torsion coefficients of `H_0 .. H_{t_max}`.
///
/// `H_0` is unreduced. `torsion[t]` lists the invariant factors greater than
/// one, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologySummary {
    pub fn t_max(&self) -> usize {
        self.betti.len() - 1
    }

    /// Whether `H_t` is the zero group.
    pub fn vanishes(&self, t: usize) -> bool {
        self.betti[t] == 0 && self.torsion[t].is_empty()
    }

    /// Whether `H_t` is `ℤ`.
    pub fn is_integers(&self, t: usize) -> bool {
        self.betti[t] == 1 && self.torsion[t].is_empty()
    }
}

impl Serialize for HomologySummary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Factors<'a>(&'a [BigUint]);
        impl Serialize for Factors<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for d in self.0 {
                    // factors beyond u64 are written as decimal strings
                    match d.to_u64() {
                        Some(v) => seq.serialize_element(&v)?,
                        None => seq.serialize_element(&d.to_string())?,
                    }
                }
                seq.end()
            }
        }
        let torsion: Vec<Factors> = self.torsion.iter().map(|t| Factors(t)).collect();
        let mut st = serializer.serialize_struct("HomologySummary", 2)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Computes `H_t(Hom(G, K_n); ℤ)` for `0 <= t <= t_max`.
///
/// The skeleton must reach dimension `t_max + 1`; a shallower one would
/// silently under-count the rank of `∂_{t_max+1}` and is rejected.
pub fn homology_summary(sk: &ComplexSkeleton, t_max: usize) -> Result<HomologySummary> {
    let top = t_max + 1;
    if sk.max_dim() < top {
        return Err(Error::SkeletonTooShallow { max_dim: sk.max_dim(), t_max, needed: top });
    }
    let mut rank = vec![0usize; top + 2];
    let mut torsion = vec![Vec::new(); top + 2];
    let mut cleared: Vec<bool> = Vec::new();
    for t in (1..=top).rev() {
        let (form, pivot_rows) = reduce_boundary(sk, t, &cleared);
        rank[t] = form.rank;
        torsion[t] = form.torsion;
        cleared = vec![false; sk.count(t - 1)];
        for r in pivot_rows {
            cleared[r as usize] = true;
        }
    }
    let betti = (0..=t_max).map(|t| sk.count(t) - rank[t] - rank[t + 1]).collect();
    let torsion = (0..=t_max).map(|t| std::mem::take(&mut torsion[t + 1])).collect();
    Ok(HomologySummary { betti, torsion })
}

/// Smith form of `∂_t` with the columns flagged in `skip` left out.
fn reduce_boundary(sk: &ComplexSkeleton, t: usize, skip: &[bool]) -> (SmithForm, Vec<u32>) {
    let live: Vec<usize> = (0..sk.count(t)).filter(|&k| !skip.get(k).copied().unwrap_or(false)).collect();
    let mut elim = UnitEliminator::new(sk.count(t - 1));
    for chunk in live.chunks(CHUNK) {
        let cols: Vec<Vec<(u32, i8)>> =
            chunk.par_iter().map(|&k| matrix::boundary_column(sk, sk.cell_sets(t, k))).collect();
        for col in cols {
            elim.push_column(col.into_iter().map(|(r, v)| (r, v as i64)));
        }
    }
    elim.finish()
}

/// Free rank `e - v + 1` of the fundamental group of a connected complex
/// with no cells above dimension one.
///
/// The skeleton must reach dimension 2 so that the absence of 2-cells is a
/// fact about the complex rather than about the truncation.
pub fn pi1_free_rank(sk: &ComplexSkeleton) -> Result<usize> {
    if sk.max_dim() < 2 {
        return Err(Error::Precondition(format!(
            "enumerate at least dimension 2 to rule out 2-cells (got max_dim = {})",
            sk.max_dim()
        )));
    }
    if sk.count(2) > 0 {
        return Err(Error::Precondition(format!("the complex has {} cells of dimension 2", sk.count(2))));
    }
    let v = sk.count(0);
    if v == 0 {
        return Err(Error::Precondition("the complex is empty".into()));
    }
    let components = component_count(sk);
    if components != 1 {
        return Err(Error::Precondition(format!("the complex has {components} connected components")));
    }
    Ok(sk.count(1) + 1 - v)
}

/// Number of connected components of the 1-skeleton.
pub fn component_count(sk: &ComplexSkeleton) -> usize {
    let mut parent: Vec<usize> = (0..sk.count(0)).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = sk.count(0);
    if sk.max_dim() >= 1 {
        for sets in sk.cells(1) {
            let col = matrix::boundary_column(sk, sets);
            let (a, b) = (root(&mut parent, col[0].0 as usize), root(&mut parent, col[1].0 as usize));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components
}
