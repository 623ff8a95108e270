//! Dense complex linear algebra: matrices, Hermitian eigensolver, SVD.

pub mod eigen;
pub mod matrix;
pub mod svd;
pub mod vector;

pub use eigen::{hermitian_eigen, hermitian_tolerance, HermitianEigen};
pub use matrix::Matrix;
pub use svd::{svd, svd_extremes, Svd};
