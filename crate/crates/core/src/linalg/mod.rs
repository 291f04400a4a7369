//! Sparse storage, matrix–vector products and the partial SVD engine.

mod dense;
mod lanczos;
mod operator;
mod sparse;
mod tridiag;
pub(crate) mod vector;

pub use dense::DenseMatrix;
pub use lanczos::{partial_svd, partial_svd_deflated, SvdConfig, SvdTriplet};
pub use operator::{CenteredColumns, LinearOperator};
pub use sparse::SparseMatrix;
pub use tridiag::symmetric_tridiagonal_eigen;
