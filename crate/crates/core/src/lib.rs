//! Exact H-matrix detection for diagonally dominant matrices.
//!
//! A diagonally dominant matrix is an H-matrix exactly when its set of
//! non-strictly-dominant rows can be peeled away recursively until a strictly
//! dominant block remains. Equivalently, every such row reaches a strictly
//! dominant row along a chain of nonzero entries. This crate decides that
//! property and produces certificates that can be checked independently:
//!
//! - chains of nonzero entries ([`graph::chain_condition`]),
//! - interwoven index sequences ([`interwoven`]),
//! - witness sets whose principal submatrix has no strict row
//!   ([`hmatrix::non_h_witness`]),
//! - positive diagonal scalings that make `A D` strictly diagonally dominant
//!   ([`hmatrix::scaling_certificate`]).
//!
//! The [`oracle`] module holds ground-truth machinery (LU, inverse
//! nonnegativity of the comparison matrix, Jacobi spectral radius, and a
//! reproducible random ensemble) that the test suites use to cross-check the
//! combinatorial algorithms.

pub mod error;
pub mod graph;
pub mod hmatrix;
pub mod interwoven;
pub mod matrix;
pub mod mtx;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use graph::{ChainReport, DirectedGraph, FrobeniusForm};
pub use hmatrix::{HVerdict, PeelOutcome, SHReport, ScalingCertificate};
pub use interwoven::InterwovenCertificate;
pub use matrix::{DominanceClass, IndexSet, Matrix, RealMatrix, Tolerance};
