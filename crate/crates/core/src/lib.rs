//! Max-times linear algebra over nonnegative matrices.
//!
//! The crate computes the maximum cycle geometric mean `μ(A)` and
//! max-eigenvectors (`A ⊗ x = μ x` with `(A ⊗ x)_i = max_j a_ij x_j`) by
//! three independent routes, and applies them to ranking from symmetrically
//! reciprocal pairwise-comparison matrices.

// Index loops mirror the subscript notation of the algorithms.
#![allow(clippy::needless_range_loop)]

pub mod ahp;
pub mod bench;
mod error;
mod graph;
pub mod io;
pub mod matrix;
pub mod policy;
pub mod random;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
pub use policy::NumericPolicy;
