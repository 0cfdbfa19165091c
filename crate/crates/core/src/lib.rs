//! Graph-coloring complexes `Hom(G, K_n)`: enumeration, exact integer
//! homology, and certificate-producing deformations of loops and cycles.
//!
//! Vertices of `G` and colors are 1-based everywhere in the public surface.

pub mod complex;
pub mod deform;
pub mod error;
pub mod graphs;
pub mod homology;

pub use complex::{enumerate_skeleton, random_cell, Cell, Chain, ColorSet, ComplexSkeleton};
pub use error::{Error, Result};
pub use graphs::Graph;
pub use homology::{connectivity_report, homology_summary, pi1_free_rank, HomologySummary};
