//! The guide in `book/` compiled as doc-tests, so every listing runs under
//! `cargo test`. Each chapter gets its own module to make failures easy to
//! place.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cells.md")]
pub mod cells {}
#[doc = include_str!("../../../book/src/skeleton.md")]
pub mod skeleton {}
#[doc = include_str!("../../../book/src/homology.md")]
pub mod homology {}
#[doc = include_str!("../../../book/src/connectivity.md")]
pub mod connectivity {}
#[doc = include_str!("../../../book/src/loops.md")]
pub mod loops {}
#[doc = include_str!("../../../book/src/cycles.md")]
pub mod cycles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
