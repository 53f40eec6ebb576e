//! Dense real linear algebra and scalar convex minimization.

mod eigen;
mod matrix;
mod minimize;
mod norm;
mod svd;

pub use eigen::{sym_eigen, EigenDecomposition, EIGEN_TOL};
pub use matrix::{orthonormalize_columns, DenseMatrix, MatrixJson, Vector};
pub use minimize::{minimize_scalar_convex, ScalarMinimum, LAMBDA_CAP};
pub use norm::{operator_norm, NormSelector, PNorm};
pub use svd::{singular_values, SingularValues};

pub(crate) use matrix::norm2;
