//! Inverses of weighted and signed graphs through their Sachs subgraphs,
//! cross-validated against exact linear algebra, plus the spectral
//! consequences on stellated and corona graph families.
//!
//! The combinatorial core works over exact rationals end to end; floating
//! point appears only in the [`spectra`] eigensolver. Every structural
//! computation (determinant by the Sachs formula, inverse by path sums)
//! has an independent Gaussian-elimination twin in [`matrix`], and the
//! [`verify`] module sweeps both routes against each other on exhaustive
//! small-graph catalogs.
//!
//! ```
//! use graphinv::WeightedGraph;
//! use graphinv::inverse::invert_both;
//! use graphinv::sachs::det_via_sachs;
//!
//! // the path on four vertices
//! let g = WeightedGraph::parse("4 3\n0 1 1\n1 2 1\n2 3 1\n")?;
//! assert_eq!(det_via_sachs(&g)?, g.adjacency_matrix().det());
//!
//! let report = invert_both(&g)?; // both routes must agree exactly
//! assert_eq!(report.inverse.to_text(), "4 3\n0 1 1\n0 3 -1\n2 3 1\n");
//! # Ok::<(), graphinv::Error>(())
//! ```

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod families;
pub mod graph;
pub mod inverse;
pub mod iso;
pub mod matrix;
pub mod rational;
pub mod sachs;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{SignedGraph, WeightedGraph};
pub use matrix::{ExactMatrix, FloatMatrix};
pub use rational::Rational;
