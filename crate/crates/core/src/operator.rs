//! Birkhoff-James orthogonality of operators.
//!
//! For the spectral norm the norm-attaining set `M_T` is the unit sphere of
//! the top right singular subspace `H₀`, and `T ⊥_B A` holds exactly when the
//! quadratic form `x ↦ ⟨Tx, Ax⟩` vanishes somewhere on that sphere. With `Q`
//! an orthonormal basis of `H₀`, that is the case when the symmetric matrix
//! `Qᵀ·sym(TᵀA)·Q` has eigenvalues of both signs (zero counting as both).
//! [`bj_operator_oracle`] checks the definition directly instead.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    minimize_scalar_convex, operator_norm, orthonormalize_columns, singular_values, sym_eigen, DenseMatrix,
    NormSelector, Vector, EIGEN_TOL,
};

/// Number of unit vectors of `H₀` sampled by [`descent_lambda`].
pub const DESCENT_SAMPLES: usize = 128;

/// Orthonormal basis of `H₀` together with `‖T‖₂` and `‖T|_{H₀⊥}‖₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormAttainingSet {
    /// `n × k`, orthonormal columns spanning `H₀`.
    pub basis: DenseMatrix,
    pub sigma1: f64,
    /// `σ_{k+1}`, or zero when `k` is the number of columns.
    pub sigma_out: f64,
    pub multiplicity: usize,
    pub tol_used: f64,
}

impl NormAttainingSet {
    pub fn vector(&self, j: usize) -> Vector {
        self.basis.column(j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SpectralTest,
    Oracle,
    DerivativeTest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BjVerdict {
    pub orthogonal: bool,
    /// Unit `x ∈ M_T` with `⟨Tx, Ax⟩ ≈ 0`; spectral test only.
    pub witness: Option<Vector>,
    pub lambda_min: f64,
    pub norm_min: f64,
    pub method: Method,
}

/// A nonzero `λ₀` that strictly lowers `‖T + λ₀A‖₂` below `‖T‖₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentCertificate {
    pub lambda0: f64,
    pub operator_norm_after: f64,
    /// Largest `‖Tx + λ₀Ax‖₂` over the sampled unit vectors of `H₀`.
    pub max_over_mt: f64,
    pub sigma1: f64,
    pub samples: usize,
}

fn check_shapes(t: &DenseMatrix, a: &DenseMatrix) -> Result<()> {
    if t.shape() != a.shape() {
        return Err(Error::DimensionMismatch(format!(
            "T is {}x{}, A is {}x{}",
            t.rows(),
            t.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// `M_T` for the spectral norm: right singular vectors whose singular value
/// is at least `σ₁·(1 − tol)`.
pub fn norm_attaining_set(t: &DenseMatrix, tol: f64) -> Result<NormAttainingSet> {
    if t.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let sv = singular_values(t, EIGEN_TOL)?;
    let sigma1 = sv.largest();
    let cut = sigma1 * (1.0 - tol);
    let k = sv.values.iter().take_while(|&&s| s >= cut).count().max(1);
    let basis = orthonormalize_columns(&sv.right_vectors.leading_columns(k))?;
    Ok(NormAttainingSet {
        basis,
        sigma1,
        sigma_out: sv.values.get(k).copied().unwrap_or(0.0),
        multiplicity: k,
        tol_used: tol,
    })
}

/// The restricted form `Qᵀ·sym(TᵀA)·Q` on `H₀`.
fn restricted_form(t: &DenseMatrix, a: &DenseMatrix, q: &DenseMatrix) -> Result<DenseMatrix> {
    let tq = t.matmul(q)?;
    let aq = a.matmul(q)?;
    tq.tr_matmul(&aq)?.symmetric_part()
}

/// Decides `T ⊥_B A` for the spectral norm from the sign pattern of the
/// restricted form on `H₀`.
///
/// Orthogonal when `λ_min ≤ tol·s` and `λ_max ≥ −tol·s`, `s = ‖T‖₂‖A‖₂`. The
/// witness is a unit vector of `H₀` where the form vanishes: one of the two
/// extreme eigenvectors if it already does, otherwise
/// `cos θ·v_max + sin θ·v_min` with `λ_max cos²θ + λ_min sin²θ = 0`.
pub fn bj_operator_spectral(t: &DenseMatrix, a: &DenseMatrix, tol: f64) -> Result<BjVerdict> {
    check_shapes(t, a)?;
    let mt = norm_attaining_set(t, tol)?;
    let q = &mt.basis;
    let form = restricted_form(t, a, q)?;
    let eig = sym_eigen(&form, EIGEN_TOL)?;
    let k = eig.values.len();
    let (hi, lo) = (eig.values[0], eig.values[k - 1]);
    let s = mt.sigma1 * operator_norm(a, NormSelector::Two)?;
    let orthogonal = lo <= tol * s && hi >= -tol * s;

    if orthogonal {
        let v_max = eig.vectors.column(0);
        let v_min = eig.vectors.column(k - 1);
        let v = if hi <= 0.0 {
            v_max
        } else if lo >= 0.0 {
            v_min
        } else {
            let cos2 = -lo / (hi - lo);
            let (c, sn) = (cos2.sqrt(), (1.0 - cos2).max(0.0).sqrt());
            v_max.scale(c).axpy(sn, &v_min)
        };
        let w = q.mul_vec(&v)?.normalized().ok_or(Error::ZeroVector)?;
        return Ok(BjVerdict {
            orthogonal,
            witness: Some(w),
            lambda_min: 0.0,
            norm_min: mt.sigma1,
            method: Method::SpectralTest,
        });
    }

    // Not orthogonal: report where the norm actually drops.
    let m = minimize_norm(t, a, NormSelector::Two, mt.sigma1)?;
    Ok(BjVerdict { orthogonal, witness: None, lambda_min: m.0, norm_min: m.1, method: Method::SpectralTest })
}

/// `argmin_λ ‖T + λA‖_p` and the minimum. The search runs in `μ = λ‖A‖/‖T‖`,
/// so the bracket cap bounds `μ` and a tiny `A` does not trip it.
fn minimize_norm(t: &DenseMatrix, a: &DenseMatrix, p: NormSelector, norm_t: f64) -> Result<(f64, f64)> {
    let norm_a = operator_norm(a, p)?;
    if norm_a == 0.0 {
        return Ok((0.0, norm_t));
    }
    let scale = if norm_t > 0.0 { norm_t / norm_a } else { 1.0 / norm_a };
    let f = |mu: f64| operator_norm(&t.add_scaled(mu * scale, a)?, p);
    let m = minimize_scalar_convex(f, 1.0, 1e-12)?;
    Ok((m.lambda * scale, m.value))
}

/// Decides `T ⊥_B A` from the definition: orthogonal when
/// `min_λ ‖T + λA‖_p ≥ ‖T‖_p·(1 − tol)`.
pub fn bj_operator_oracle(t: &DenseMatrix, a: &DenseMatrix, p: NormSelector, tol: f64) -> Result<BjVerdict> {
    check_shapes(t, a)?;
    let norm_t = operator_norm(t, p)?;
    let (lambda_min, norm_min) = minimize_norm(t, a, p, norm_t)?;
    Ok(BjVerdict {
        orthogonal: norm_min >= norm_t * (1.0 - tol),
        witness: None,
        lambda_min,
        norm_min,
        method: Method::Oracle,
    })
}

/// When `T` is not orthogonal to `A`, a scalar `λ₀ ≠ 0` with
/// `‖T + λ₀A‖₂ < ‖T‖₂`, together with the largest value of
/// `‖Tx + λ₀Ax‖₂` over sampled unit vectors `x ∈ H₀`. `None` when
/// `T ⊥_B A`.
///
/// In finite dimension the per-point decrease on `M_T` extends to the
/// operator norm itself, which is what `operator_norm_after` records.
pub fn descent_lambda(t: &DenseMatrix, a: &DenseMatrix, tol: f64, seed: u64) -> Result<Option<DescentCertificate>> {
    let spectral = bj_operator_spectral(t, a, tol)?;
    if spectral.orthogonal {
        return Ok(None);
    }
    let mt = norm_attaining_set(t, tol)?;
    let oracle = bj_operator_oracle(t, a, NormSelector::Two, tol)?;
    let lambda0 = oracle.lambda_min;
    let moved = t.add_scaled(lambda0, a)?;

    let k = mt.multiplicity;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_over_mt = 0.0f64;
    for s in 0..DESCENT_SAMPLES {
        let x = if s < k {
            mt.vector(s)
        } else {
            let u = Vector::from_vec((0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect());
            match mt.basis.mul_vec(&u)?.normalized() {
                Some(x) => x,
                None => continue,
            }
        };
        max_over_mt = max_over_mt.max(moved.mul_vec(&x)?.norm2());
    }
    Ok(Some(DescentCertificate {
        lambda0,
        operator_norm_after: oracle.norm_min,
        max_over_mt,
        sigma1: mt.sigma1,
        samples: DESCENT_SAMPLES,
    }))
}

/// Spectral verdicts for `(T, A)` and `(Tᵀ, Aᵀ)`; the two always agree.
pub fn adjoint_invariance(t: &DenseMatrix, a: &DenseMatrix, tol: f64) -> Result<(bool, bool)> {
    check_shapes(t, a)?;
    let direct = bj_operator_spectral(t, a, tol)?.orthogonal;
    let transposed = bj_operator_spectral(&t.transpose(), &a.transpose(), tol)?.orthogonal;
    Ok((direct, transposed))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn diag(d: &[f64]) -> DenseMatrix {
        DenseMatrix::diag(d).unwrap()
    }

    fn truncation(n: usize) -> DenseMatrix {
        let mut d = vec![-1.0];
        d.extend((2..=n).map(|k| 1.0 - 1.0 / k as f64));
        diag(&d)
    }

    #[test]
    fn mt_of_diagonal() {
        let mt = norm_attaining_set(&diag(&[2.0, 1.0]), TOL).unwrap();
        assert_eq!(mt.multiplicity, 1);
        assert_eq!(mt.sigma1, 2.0);
        assert_eq!(mt.sigma_out, 1.0);
        assert_eq!(mt.vector(0)[0].abs(), 1.0);
    }

    #[test]
    fn mt_of_identity_is_whole_sphere() {
        let mt = norm_attaining_set(&DenseMatrix::identity(3), TOL).unwrap();
        assert_eq!(mt.multiplicity, 3);
        assert_eq!(mt.sigma_out, 0.0);
        assert!(mt.basis.orthonormality_defect() < 1e-15);
    }

    #[test]
    fn mt_of_truncated_family() {
        let mt = norm_attaining_set(&truncation(5), TOL).unwrap();
        assert_eq!(mt.multiplicity, 1);
        assert!((mt.sigma1 - 1.0).abs() < 1e-15);
        assert!((mt.sigma_out - 0.8).abs() < 1e-15);
        assert!((mt.vector(0)[0].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_operator_is_flagged() {
        let z = DenseMatrix::zeros(2, 2);
        assert_eq!(norm_attaining_set(&z, TOL).unwrap_err(), Error::ZeroOperator);
        assert_eq!(bj_operator_spectral(&z, &z, TOL).unwrap_err(), Error::ZeroOperator);
        assert_eq!(descent_lambda(&z, &z, TOL, 0).unwrap_err(), Error::ZeroOperator);
    }

    #[test]
    fn shape_mismatch() {
        let r = bj_operator_spectral(&DenseMatrix::identity(2), &DenseMatrix::identity(3), TOL);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
        let r = bj_operator_oracle(&DenseMatrix::identity(2), &DenseMatrix::zeros(2, 3), NormSelector::Two, TOL);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn spectral_diagonal_example() {
        let v = bj_operator_spectral(&diag(&[1.0, 0.5]), &diag(&[0.0, 1.0]), TOL).unwrap();
        assert!(v.orthogonal);
        let w = v.witness.unwrap();
        assert!((w[0].abs() - 1.0).abs() < 1e-15 && w[1].abs() < 1e-15);
    }

    #[test]
    fn spectral_rotated_witness() {
        let t = DenseMatrix::identity(2);
        let a = diag(&[1.0, -1.0]);
        let v = bj_operator_spectral(&t, &a, TOL).unwrap();
        assert!(v.orthogonal);
        let w = v.witness.unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w[0].abs() - h).abs() < 1e-15 && (w[1].abs() - h).abs() < 1e-15);
        let aw = a.mul_vec(&w).unwrap();
        assert!(w.dot(&aw).abs() < 1e-15);
    }

    #[test]
    fn truncated_family_is_not_orthogonal_to_identity() {
        for n in [2, 3, 7] {
            let t = truncation(n);
            let i = DenseMatrix::identity(n);
            let v = bj_operator_spectral(&t, &i, TOL).unwrap();
            assert!(!v.orthogonal);
            assert!(v.norm_min < 1.0);
            let o = bj_operator_oracle(&t, &i, NormSelector::Two, TOL).unwrap();
            assert!(!o.orthogonal);
            let expected = 1.0 / (2.0 * n as f64);
            assert!((o.lambda_min - expected).abs() < 1e-9);
            assert!((o.norm_min - (1.0 - expected)).abs() < 1e-10);
        }
    }

    #[test]
    fn oracle_examples() {
        let t = DenseMatrix::from_rows(&[[1.0, 2.0], [-0.5, 0.3]]).unwrap();
        let o = bj_operator_oracle(&t, &t, NormSelector::Two, TOL).unwrap();
        assert!(!o.orthogonal);
        assert!((o.lambda_min + 1.0).abs() < 1e-9 && o.norm_min < 1e-9);

        let o = bj_operator_oracle(&diag(&[-1.0, 0.5]), &DenseMatrix::identity(2), NormSelector::Two, TOL).unwrap();
        assert!(!o.orthogonal);
        assert!((o.lambda_min - 0.25).abs() < 1e-10 && (o.norm_min - 0.75).abs() < 1e-10);

        for p in [NormSelector::One, NormSelector::Inf] {
            let o = bj_operator_oracle(&diag(&[1.0, 0.5]), &diag(&[0.0, 1.0]), p, TOL).unwrap();
            assert!(o.orthogonal, "p={p}");
        }
        let o = bj_operator_oracle(&diag(&[1.0, 0.5]), &DenseMatrix::zeros(2, 2), NormSelector::Two, TOL).unwrap();
        assert!(o.orthogonal);
    }

    #[test]
    fn descent_examples() {
        let c = descent_lambda(&diag(&[-1.0, 0.5]), &DenseMatrix::identity(2), TOL, 1).unwrap().unwrap();
        assert!((c.lambda0 - 0.25).abs() < 1e-10);
        assert!((c.operator_norm_after - 0.75).abs() < 1e-10);
        assert!(c.max_over_mt < 1.0);

        assert!(descent_lambda(&diag(&[1.0, 0.5]), &diag(&[0.0, 1.0]), TOL, 1).unwrap().is_none());

        let i = DenseMatrix::identity(2);
        let c = descent_lambda(&i, &i, TOL, 1).unwrap().unwrap();
        assert!((c.lambda0 + 1.0).abs() < 1e-9);
        assert!(c.operator_norm_after < 1e-9);
        assert!(c.max_over_mt < 1e-9);
    }

    #[test]
    fn transpose_examples() {
        let s = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, -1.0]]).unwrap();
        let a = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 3.0]]).unwrap();
        let (x, y) = adjoint_invariance(&s, &a, TOL).unwrap();
        assert_eq!(x, y);
        let t = DenseMatrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        let (x, y) = adjoint_invariance(&t, &DenseMatrix::identity(2), TOL).unwrap();
        assert_eq!(x, y);
    }
}
