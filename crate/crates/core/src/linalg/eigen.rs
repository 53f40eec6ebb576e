//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use super::matrix::{norm2, DenseMatrix};
use crate::error::{Error, Result};

/// Default off-diagonal threshold, relative to `‖S‖_F`.
pub const EIGEN_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unit eigenvectors as columns, in the order of `values`.
    pub vectors: DenseMatrix,
    /// `max_i ‖S v_i − λ_i v_i‖₂` against the input matrix.
    pub residual: f64,
}

impl EigenDecomposition {
    /// `‖S − VΛVᵀ‖_F`.
    pub fn reconstruction_error(&self, s: &DenseMatrix) -> f64 {
        let n = self.values.len();
        let mut diff = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| self.vectors.get(i, k) * self.values[k] * self.vectors.get(j, k)).sum();
                diff.push(s.get(i, j) - r);
            }
        }
        norm2(&diff)
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps run until every off-diagonal magnitude is at most `tol·‖S‖_F`.
/// Eigenvalues come back sorted descending; equal values keep the order in
/// which they appear on the rotated diagonal.
pub fn sym_eigen(s: &DenseMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("eigen tolerance {tol}")));
    }
    let n = s.rows();
    let fro = s.frobenius_norm();
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            asym = asym.max((s.get(i, j) - s.get(j, i)).abs());
        }
    }
    if asym > tol * fro {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }

    let mut a: Vec<f64> = s.as_slice().to_vec();
    // symmetrize so rotations act on an exactly symmetric matrix
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
    }
    let mut v = DenseMatrix::identity(n).as_slice().to_vec();
    let threshold = tol * fro;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = max_off_diagonal(&a, n);
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
                rotate(&mut a, &mut v, n, p, q, c, s);
            }
        }
    }
    if !converged && max_off_diagonal(&a, n) > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep index order
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_j, v[i * n + old_j]);
        }
    }

    let mut residual = 0.0f64;
    for (j, lambda) in values.iter().enumerate() {
        let col = vectors.column(j);
        let sv = s.mul_vec(&col)?;
        let r = sv.axpy(-lambda, &col).norm2();
        residual = residual.max(r);
    }

    Ok(EigenDecomposition { values, vectors, residual })
}

fn max_off_diagonal(a: &[f64], n: usize) -> f64 {
    let mut m = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            m = m.max(a[i * n + j].abs());
        }
    }
    m
}

/// `(cos, sin)` of the rotation that annihilates the `(p, q)` entry of
/// `[[app, apq], [apq, aqq]]`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c)
}

fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(s: &DenseMatrix, e: &EigenDecomposition) {
        let fro = s.frobenius_norm().max(1.0);
        assert!(e.reconstruction_error(s) <= 10.0 * EIGEN_TOL * fro, "{}", e.reconstruction_error(s));
        assert!(e.vectors.orthonormality_defect() < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let s = DenseMatrix::identity(2);
        let e = sym_eigen(&s, EIGEN_TOL).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
        check(&s, &e);
    }

    #[test]
    fn diagonal_keeps_axes() {
        let s = DenseMatrix::diag(&[3.0, -1.0]).unwrap();
        let e = sym_eigen(&s, EIGEN_TOL).unwrap();
        assert_eq!(e.values, vec![3.0, -1.0]);
        assert_eq!(e.vectors.column(0).as_slice()[0].abs(), 1.0);
        assert_eq!(e.vectors.column(1).as_slice()[1].abs(), 1.0);
    }

    #[test]
    fn swap_matrix_has_diagonal_eigenvectors() {
        let s = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let e = sym_eigen(&s, EIGEN_TOL).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] + 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.vectors.column(0);
        let v1 = e.vectors.column(1);
        assert!((v0[0].abs() - h).abs() < 1e-15 && (v0[0] - v0[1]).abs() < 1e-15);
        assert!((v1[0].abs() - h).abs() < 1e-15 && (v1[0] + v1[1]).abs() < 1e-15);
        assert!(e.residual < 1e-15);
        check(&s, &e);
    }

    #[test]
    fn ties_sorted_by_original_index() {
        let s = DenseMatrix::diag(&[1.0, 2.0, 1.0]).unwrap();
        let e = sym_eigen(&s, EIGEN_TOL).unwrap();
        assert_eq!(e.values, vec![2.0, 1.0, 1.0]);
        assert_eq!(e.vectors.column(1).as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(e.vectors.column(2).as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_input() {
        let rect = DenseMatrix::zeros(2, 3);
        assert!(matches!(sym_eigen(&rect, EIGEN_TOL), Err(Error::NotSquare { .. })));
        let asym = DenseMatrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eigen(&asym, EIGEN_TOL), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn zero_matrix() {
        let e = sym_eigen(&DenseMatrix::zeros(3, 3), EIGEN_TOL).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }

    #[test]
    fn dense_symmetric() {
        let s = DenseMatrix::from_rows(&[
            [4.0, 1.0, -2.0, 2.0],
            [1.0, 2.0, 0.0, 1.0],
            [-2.0, 0.0, 3.0, -2.0],
            [2.0, 1.0, -2.0, -1.0],
        ])
        .unwrap();
        let e = sym_eigen(&s, EIGEN_TOL).unwrap();
        check(&s, &e);
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 8.0).abs() < 1e-13);
    }
}
