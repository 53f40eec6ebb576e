//! Birkhoff-James orthogonality, smoothness and support functionals in `ℓ_p^n`.
//!
//! The structural test looks at the one-sided derivatives of
//! `g(λ) = ‖x + λy‖_p` at zero: `x ⊥_B y` exactly when `g` does not descend
//! in either direction. Coordinates that are zero (for `p = 1`) or tied for
//! the maximum (for `p = ∞`) are detected relative to `tol·‖x‖_p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{minimize_scalar_convex, PNorm, Vector};
use crate::operator::{BjVerdict, Method};

/// Upper bound on the number of extreme functionals listed at an `ℓ_1`
/// point with many zero coordinates.
pub const MAX_EXTREME_FUNCTIONALS: usize = 4096;

/// Norm-one functional `f` with `f(x) = ‖x‖_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportFunctional {
    pub coefficients: Vector,
    pub attained_at: Vector,
    pub norm_value: f64,
}

impl SupportFunctional {
    pub fn apply(&self, y: &Vector) -> f64 {
        self.coefficients.dot(y)
    }

    /// Norm of the functional in the dual space `ℓ_q`.
    pub fn dual_norm(&self, p: PNorm) -> f64 {
        p.dual().norm(self.coefficients.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorSmoothness {
    pub smooth: bool,
    /// The unique support functional when smooth, otherwise the extreme
    /// points of the set of support functionals (at least two).
    pub functionals: Vec<SupportFunctional>,
}

fn check_pair(x: &Vector, y: &Vector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!("x has length {}, y has length {}", x.len(), y.len())));
    }
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// One-sided derivatives `(d₋, d₊)` of `λ ↦ ‖x + λy‖_p` at `λ = 0`.
pub fn one_sided_derivatives(x: &Vector, y: &Vector, p: PNorm, tol: f64) -> Result<(f64, f64)> {
    check_pair(x, y)?;
    let nx = p.norm(x.as_slice());
    let pairs = x.iter().zip(y.iter());
    Ok(match p {
        PNorm::Infinity => {
            let cut = nx * (1.0 - tol);
            let active = pairs.filter(|(xi, _)| xi.abs() >= cut).map(|(xi, yi)| xi.signum() * yi);
            active.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        }
        PNorm::Finite(1.0) => {
            let cut = tol * nx;
            let (mut s, mut r) = (0.0, 0.0);
            for (xi, yi) in pairs {
                if xi.abs() <= cut {
                    r += yi.abs();
                } else {
                    s += xi.signum() * yi;
                }
            }
            (s - r, s + r)
        }
        PNorm::Finite(q) => {
            let d: f64 = pairs
                .map(|(xi, yi)| {
                    let u = xi / nx;
                    u.signum() * u.abs().powf(q - 1.0) * yi
                })
                .sum();
            (d, d)
        }
    })
}

/// Decides `x ⊥_B y` in `ℓ_p` from the one-sided derivatives.
///
/// Orthogonal when `d₋ ≤ tol·‖y‖_p` and `d₊ ≥ −tol·‖y‖_p`. The verdict also
/// carries the oracle minimum of `‖x + λy‖_p` for reference.
pub fn bj_vector(x: &Vector, y: &Vector, p: PNorm, tol: f64) -> Result<BjVerdict> {
    let (lo, hi) = one_sided_derivatives(x, y, p, tol)?;
    let slack = tol * p.norm(y.as_slice());
    let orthogonal = lo <= slack && hi >= -slack;
    let oracle = bj_vector_oracle(x, y, p, tol)?;
    Ok(BjVerdict {
        orthogonal,
        witness: None,
        lambda_min: oracle.lambda_min,
        norm_min: oracle.norm_min,
        method: Method::DerivativeTest,
    })
}

/// Decides `x ⊥_B y` by minimizing `‖x + λy‖_p` directly: orthogonal when
/// the minimum is at least `‖x‖_p·(1 − tol)`.
pub fn bj_vector_oracle(x: &Vector, y: &Vector, p: PNorm, tol: f64) -> Result<BjVerdict> {
    check_pair(x, y)?;
    let nx = p.norm(x.as_slice());
    let ny = p.norm(y.as_slice());
    if ny == 0.0 {
        return Ok(BjVerdict {
            orthogonal: true,
            witness: None,
            lambda_min: 0.0,
            norm_min: nx,
            method: Method::Oracle,
        });
    }
    // search in μ = λ‖y‖/‖x‖ so the bracket cap is scale-free
    let scale = nx / ny;
    let g = |mu: f64| Ok(p.norm(x.axpy(mu * scale, y).as_slice()));
    let m = minimize_scalar_convex(g, 1.0, 1e-12)?;
    Ok(BjVerdict {
        orthogonal: m.value >= nx * (1.0 - tol),
        witness: None,
        lambda_min: m.lambda * scale,
        norm_min: m.value,
        method: Method::Oracle,
    })
}

/// Smoothness of `x` in `ℓ_p` and its support functional(s).
pub fn vector_smooth(x: &Vector, p: PNorm, tol: f64) -> Result<VectorSmoothness> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = x.len();
    let nx = p.norm(x.as_slice());
    let make = |coefficients: Vec<f64>| SupportFunctional {
        coefficients: Vector::from_vec(coefficients),
        attained_at: x.clone(),
        norm_value: nx,
    };
    match p {
        PNorm::Finite(q) if q > 1.0 => {
            let f = x
                .iter()
                .map(|xi| {
                    let u = xi / nx;
                    u.signum() * u.abs().powf(q - 1.0)
                })
                .collect();
            Ok(VectorSmoothness { smooth: true, functionals: vec![make(f)] })
        }
        PNorm::Finite(_) => {
            let cut = tol * nx;
            let zeros: Vec<usize> = (0..n).filter(|&i| x[i].abs() <= cut).collect();
            let base: Vec<f64> = x.iter().map(|xi| if xi.abs() <= cut { 0.0 } else { xi.signum() }).collect();
            if zeros.is_empty() {
                return Ok(VectorSmoothness { smooth: true, functionals: vec![make(base)] });
            }
            let count = 1usize.checked_shl(zeros.len() as u32).unwrap_or(usize::MAX).min(MAX_EXTREME_FUNCTIONALS);
            let functionals = (0..count)
                .map(|mask| {
                    let mut f = base.clone();
                    for (bit, &i) in zeros.iter().enumerate() {
                        f[i] = if mask >> bit & 1 == 0 { 1.0 } else { -1.0 };
                    }
                    make(f)
                })
                .collect();
            Ok(VectorSmoothness { smooth: false, functionals })
        }
        PNorm::Infinity => {
            let cut = nx * (1.0 - tol);
            let functionals: Vec<SupportFunctional> = (0..n)
                .filter(|&i| x[i].abs() >= cut)
                .map(|i| {
                    let mut f = vec![0.0; n];
                    f[i] = x[i].signum();
                    make(f)
                })
                .collect();
            Ok(VectorSmoothness { smooth: functionals.len() == 1, functionals })
        }
    }
}

/// Searches for `y, z` with `x ⊥_B y`, `x ⊥_B z` but not `x ⊥_B (y + z)`.
///
/// Random `y₀` are pushed into the orthogonal set of `x` along `x` using one
/// of the extreme support functionals `f`: `y = y₀ − (f(y₀)/‖x‖_p)·x`. A pair
/// is reported only if the derivative test rejects `y + z` and the oracle
/// agrees.
pub fn right_additivity_probe(
    x: &Vector,
    p: PNorm,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<Option<(Vector, Vector)>> {
    let functionals = vector_smooth(x, p, tol)?.functionals;
    let nx = p.norm(x.as_slice());
    let n = x.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| {
        let f = &functionals[rng.gen_range(0..functionals.len())];
        let y0 = Vector::from_vec((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect());
        y0.axpy(-f.apply(&y0) / nx, x)
    };
    for _ in 0..trials {
        let y = sample(&mut rng);
        let z = sample(&mut rng);
        if !bj_vector_structural(x, &y, p, tol)? || !bj_vector_structural(x, &z, p, tol)? {
            continue;
        }
        let sum = y.add(&z);
        if bj_vector_structural(x, &sum, p, tol)? {
            continue;
        }
        if !bj_vector_oracle(x, &sum, p, tol)?.orthogonal {
            return Ok(Some((y, z)));
        }
    }
    Ok(None)
}

fn bj_vector_structural(x: &Vector, y: &Vector, p: PNorm, tol: f64) -> Result<bool> {
    let (lo, hi) = one_sided_derivatives(x, y, p, tol)?;
    let slack = tol * p.norm(y.as_slice());
    Ok(lo <= slack && hi >= -slack)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::new(x.to_vec()).unwrap()
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn euclidean_orthogonality() {
        let r = bj_vector(&v(&[1.0, 0.0]), &v(&[0.0, 1.0]), PNorm::TWO, TOL).unwrap();
        assert!(r.orthogonal);
        assert!((r.norm_min - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l1_orthogonality_with_flat_minimum() {
        let (x, y) = (v(&[1.0, 1.0]), v(&[1.0, -1.0]));
        // ‖x + λy‖₁ = 2·max(1, |λ|)
        for l in [-3.0, -1.0, -0.5, 0.0, 0.7, 2.0] {
            let g = PNorm::ONE.norm(x.axpy(l, &y).as_slice());
            assert_eq!(g, 2.0 * f64::max(1.0, f64::abs(l)));
        }
        let r = bj_vector(&x, &y, PNorm::ONE, TOL).unwrap();
        assert!(r.orthogonal);
        assert!((r.norm_min - 2.0).abs() < 1e-12);
    }

    #[test]
    fn parallel_vectors_are_not_orthogonal() {
        let (x, y) = (v(&[1.0, 1.0]), v(&[1.0, 1.0]));
        assert_eq!(PNorm::INF.norm(x.axpy(-0.5, &y).as_slice()), 0.5);
        let r = bj_vector(&x, &y, PNorm::INF, TOL).unwrap();
        assert!(!r.orthogonal);
        assert!(r.norm_min < 1e-9);
        assert!((r.lambda_min + 1.0).abs() < 1e-9);
    }

    #[test]
    fn derivative_formulas() {
        let x = v(&[1.0, 0.0, -2.0]);
        let y = v(&[0.5, -3.0, 1.0]);
        // p = 1: s = 0.5 - 1 = -0.5, r = 3
        assert_eq!(one_sided_derivatives(&x, &y, PNorm::ONE, TOL).unwrap(), (-3.5, 2.5));
        // p = ∞: only index 2 is active
        assert_eq!(one_sided_derivatives(&x, &y, PNorm::INF, TOL).unwrap(), (-1.0, -1.0));
        // p = 2: ⟨x, y⟩ / ‖x‖ = (0.5 - 2) / √5
        let (a, b) = one_sided_derivatives(&x, &y, PNorm::TWO, TOL).unwrap();
        assert!((a - (-1.5 / 5f64.sqrt())).abs() < 1e-15 && a == b);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let x = v(&[0.3, -1.2, 0.8]);
        let y = v(&[1.0, 0.4, -0.6]);
        for p in [PNorm::Finite(1.5), PNorm::TWO, PNorm::Finite(3.0)] {
            let h = 1e-6;
            let g = |l: f64| p.norm(x.axpy(l, &y).as_slice());
            let fd = (g(h) - g(-h)) / (2.0 * h);
            let (d, _) = one_sided_derivatives(&x, &y, p, TOL).unwrap();
            assert!((d - fd).abs() < 1e-8, "p={p}: {d} vs {fd}");
        }
    }

    #[test]
    fn errors() {
        let z = Vector::zeros(2);
        assert_eq!(bj_vector(&z, &v(&[1.0, 0.0]), PNorm::TWO, TOL).unwrap_err(), Error::ZeroVector);
        assert!(matches!(bj_vector(&v(&[1.0]), &v(&[1.0, 0.0]), PNorm::TWO, TOL), Err(Error::DimensionMismatch(_))));
        assert_eq!(vector_smooth(&z, PNorm::ONE, TOL).unwrap_err(), Error::ZeroVector);
        assert!(right_additivity_probe(&z, PNorm::ONE, 10, 0, TOL).is_err());
    }

    #[test]
    fn hilbert_functional() {
        let s = vector_smooth(&v(&[3.0, 4.0]), PNorm::TWO, TOL).unwrap();
        assert!(s.smooth);
        let f = &s.functionals[0];
        assert!((f.coefficients[0] - 0.6).abs() < 1e-15 && (f.coefficients[1] - 0.8).abs() < 1e-15);
        assert!((f.apply(&f.attained_at) - 5.0).abs() < 1e-14);
    }

    #[test]
    fn l1_corner_has_two_functionals() {
        let x = v(&[1.0, 0.0]);
        let s = vector_smooth(&x, PNorm::ONE, TOL).unwrap();
        assert!(!s.smooth);
        let coeffs: Vec<&[f64]> = s.functionals.iter().map(|f| f.coefficients.as_slice()).collect();
        assert_eq!(coeffs, vec![&[1.0, 1.0][..], &[1.0, -1.0][..]]);
        for f in &s.functionals {
            assert_eq!(f.dual_norm(PNorm::ONE), 1.0);
            assert_eq!(f.apply(&x), 1.0);
        }
    }

    #[test]
    fn linf_tie_has_coordinate_functionals() {
        let s = vector_smooth(&v(&[1.0, 1.0]), PNorm::INF, TOL).unwrap();
        assert!(!s.smooth);
        assert_eq!(s.functionals.len(), 2);
        assert_eq!(s.functionals[0].coefficients.as_slice(), &[1.0, 0.0]);
        assert_eq!(s.functionals[1].coefficients.as_slice(), &[0.0, 1.0]);
        let smooth = vector_smooth(&v(&[1.0, -3.0]), PNorm::INF, TOL).unwrap();
        assert!(smooth.smooth);
        assert_eq!(smooth.functionals[0].coefficients.as_slice(), &[0.0, -1.0]);
    }

    #[test]
    fn functionals_have_unit_dual_norm() {
        for p in [PNorm::ONE, PNorm::Finite(1.5), PNorm::TWO, PNorm::Finite(3.0), PNorm::INF] {
            let x = v(&[0.5, -2.0, 1.25, 0.0]);
            for f in vector_smooth(&x, p, TOL).unwrap().functionals {
                assert!((f.dual_norm(p) - 1.0).abs() < 1e-12, "p={p}");
                assert!((f.apply(&x) - f.norm_value).abs() < 1e-12, "p={p}");
            }
        }
    }

    #[test]
    fn right_additivity_examples() {
        assert_eq!(right_additivity_probe(&v(&[1.0, 0.0]), PNorm::TWO, 200, 3, TOL).unwrap(), None);

        let x = v(&[1.0, 1.0]);
        let (y, z) = (v(&[0.0, 1.0]), v(&[1.0, 0.0]));
        assert!(bj_vector(&x, &y, PNorm::INF, TOL).unwrap().orthogonal);
        assert!(bj_vector(&x, &z, PNorm::INF, TOL).unwrap().orthogonal);
        assert!(!bj_vector(&x, &y.add(&z), PNorm::INF, TOL).unwrap().orthogonal);
        assert!(right_additivity_probe(&x, PNorm::INF, 200, 3, TOL).unwrap().is_some());

        let x = v(&[1.0, 0.0]);
        let (y, z) = (v(&[-1.0, 1.0]), v(&[-1.0, -1.0]));
        assert!(bj_vector(&x, &y, PNorm::ONE, TOL).unwrap().orthogonal);
        assert!(bj_vector(&x, &z, PNorm::ONE, TOL).unwrap().orthogonal);
        let sum = bj_vector(&x, &y.add(&z), PNorm::ONE, TOL).unwrap();
        assert!(!sum.orthogonal);
        assert!(sum.norm_min < 1e-9);
        let (py, pz) = right_additivity_probe(&x, PNorm::ONE, 200, 3, TOL).unwrap().unwrap();
        assert!(bj_vector(&x, &py, PNorm::ONE, TOL).unwrap().orthogonal);
        assert!(bj_vector(&x, &pz, PNorm::ONE, TOL).unwrap().orthogonal);
        assert!(!bj_vector_oracle(&x, &py.add(&pz), PNorm::ONE, TOL).unwrap().orthogonal);
    }

    #[test]
    fn probe_is_seed_deterministic() {
        let x = v(&[2.0, 2.0, -1.0]);
        let a = right_additivity_probe(&x, PNorm::INF, 50, 11, TOL).unwrap();
        let b = right_additivity_probe(&x, PNorm::INF, 50, 11, TOL).unwrap();
        assert_eq!(a, b);
    }
}
