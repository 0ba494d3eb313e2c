//! Exact arithmetic over Q(i) and the dense/sparse linear algebra kernel.

mod matrix;
mod scalar;
mod sparse;

pub use matrix::{hermitian_psd, is_bijective, kernel, solve_linear, Matrix, Solution};
pub use scalar::{rational_sqrt, GaussianRational};
pub use sparse::{sparse_inverse, sparse_rank, RowEchelon, Sparse};
