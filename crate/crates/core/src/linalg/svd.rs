use super::eigen::sym_eigen;
use super::matrix::DenseMatrix;
use crate::error::Result;

/// Singular values of `T` with the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct SingularValues {
    /// Descending; one per column of `T`.
    pub values: Vec<f64>,
    /// Right singular vectors as columns, in the order of `values`.
    pub right_vectors: DenseMatrix,
}

impl SingularValues {
    /// `σ₁ = ‖T‖₂`.
    pub fn largest(&self) -> f64 {
        self.values[0]
    }
}

/// Singular values through the eigendecomposition of the Gram matrix `TᵀT`.
///
/// Squaring the matrix squares its condition number, so small singular
/// values lose relative accuracy. The largest ones, which is all this crate
/// needs, are accurate to working precision.
pub fn singular_values(t: &DenseMatrix, tol: f64) -> Result<SingularValues> {
    let eig = sym_eigen(&t.gram(), tol)?;
    let values = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(SingularValues { values, right_vectors: eig.vectors })
}
