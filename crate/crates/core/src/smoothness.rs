//! Smooth points of the operator space.
//!
//! On Euclidean spaces `T` is smooth exactly when `σ₁` is simple, that is
//! `T` attains its norm only at `±x₀`, and `‖T‖` restricted to the hyperplane
//! `x₀⊥` (which equals `σ₂`) stays below `σ₁`. When `σ₁` is repeated,
//! [`nonsmooth_witness`] splits `T = A₁ + A₂` with `T ⊥_B A₁` and
//! `T ⊥_B A₂`, which right-additivity would forbid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, DenseMatrix, NormSelector, PNorm, Vector, EIGEN_TOL};
use crate::operator::{bj_operator_oracle, bj_operator_spectral, norm_attaining_set};
use crate::vector::vector_smooth;

/// How far `‖x0‖₂` may stray from one in [`hyperplane_sup`].
pub const UNIT_TOL: f64 = 1e-8;

/// Multi-start count for `ℓ₂ → ℓ_p` norm maximization.
pub const DEFAULT_STARTS: usize = 64;

const ASCENT_STEPS: usize = 2000;
const DIRECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub sigma1: f64,
    pub sigma2: f64,
    /// Top right singular vector, largest-magnitude entry positive.
    pub x0: Option<Vector>,
    /// `sup ‖Ty‖₂` over unit `y ⊥ x0`.
    pub hyperplane_sup: f64,
    pub witness_pair: Option<(DenseMatrix, DenseMatrix)>,
}

/// Classifies `T` as a smooth point for the spectral norm.
pub fn operator_smooth(t: &DenseMatrix, tol: f64) -> Result<SmoothnessReport> {
    if t.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let sv = singular_values(t, EIGEN_TOL)?;
    let sigma1 = sv.largest();
    let sigma2 = sv.values.get(1).copied().unwrap_or(0.0);
    let smooth = sigma1 - sigma2 > tol * sigma1;
    let x0 = canonical_sign(sv.right_vectors.column(0));
    let hyperplane_sup = hyperplane_sup(t, &x0)?;
    let witness_pair = if smooth { None } else { Some(nonsmooth_witness(t, tol)?) };
    Ok(SmoothnessReport { smooth, sigma1, sigma2, x0: smooth.then_some(x0), hyperplane_sup, witness_pair })
}

fn canonical_sign(v: Vector) -> Vector {
    let pivot = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if pivot < 0.0 {
        v.scale(-1.0)
    } else {
        v
    }
}

/// `A₁ = (Tx₁)x₁ᵀ` and `A₂ = T − A₁` for the first two orthonormal vectors
/// `x₁, x₂` of the top singular subspace.
///
/// `T ⊥_B A₁` through `x₂` and `T ⊥_B A₂` through `x₁`. Entries of `A₁` are
/// rounded onto the coarsest binary grid holding every entry of `T`, so that
/// `A₁ + A₂ = T` holds exactly in floating point whenever the subtraction
/// fits in 53 bits (always the case for matrices with entries on `2⁻ᵏ·ℤ`
/// and moderate magnitude). Entries where no pair of doubles can sum to
/// `T_ij` fall back to the nearest split.
pub fn nonsmooth_witness(t: &DenseMatrix, tol: f64) -> Result<(DenseMatrix, DenseMatrix)> {
    let mt = norm_attaining_set(t, tol)?;
    if mt.multiplicity < 2 {
        return Err(Error::SimpleTopSingularValue);
    }
    let x1 = mt.vector(0);
    let rank_one = DenseMatrix::outer(&t.mul_vec(&x1)?, &x1);
    let grid = common_grid(t.as_slice());
    let (rows, cols) = t.shape();
    let mut a1 = DenseMatrix::zeros(rows, cols);
    let mut a2 = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let (p, q) = exact_split(t.get(i, j), rank_one.get(i, j), grid);
            // `+ 0.0` turns −0 into +0 and leaves every other value alone
            a1.set(i, j, p + 0.0);
            a2.set(i, j, q + 0.0);
        }
    }
    Ok((a1, a2))
}

/// Largest power of two dividing every nonzero entry, or `None` for an
/// all-zero slice.
fn common_grid(values: &[f64]) -> Option<f64> {
    values
        .iter()
        .filter(|v| **v != 0.0 && v.is_normal())
        .map(|v| {
            let bits = v.to_bits();
            let exp = ((bits >> 52) & 0x7ff) as i32 - 1075;
            let mantissa = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
            exp + mantissa.trailing_zeros() as i32
        })
        .min()
        .map(|e| 2f64.powi(e))
}

/// Splits `total` into `(part, total − part)` with `part ≈ approx` and a
/// floating-point sum of exactly `total` when such a pair exists.
fn exact_split(total: f64, approx: f64, grid: Option<f64>) -> (f64, f64) {
    let mut candidates = Vec::with_capacity(20);
    if let Some(g) = grid {
        let snapped = (approx / g).round() * g;
        if snapped.is_finite() {
            candidates.push(snapped);
        }
    }
    candidates.push(approx);
    // exact whenever |approx| <= |total| (Fast2Sum)
    candidates.push(total - (total - approx));
    let (mut up, mut down) = (approx, approx);
    for _ in 0..8 {
        up = up.next_up();
        down = down.next_down();
        candidates.extend([up, down]);
    }
    for cand in candidates {
        let rest = total - cand;
        if cand + rest == total {
            return (cand, rest);
        }
    }
    (approx, total - approx)
}

/// `‖T(I − x0x0ᵀ)‖₂`, the supremum of `‖Ty‖₂` over unit `y ⊥ x0`.
pub fn hyperplane_sup(t: &DenseMatrix, x0: &Vector) -> Result<f64> {
    if x0.len() != t.cols() {
        return Err(Error::DimensionMismatch(format!("x0 has length {}, T has {} columns", x0.len(), t.cols())));
    }
    let n = x0.norm2();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit(n));
    }
    let projector = DenseMatrix::identity(t.cols()).sub(&DenseMatrix::outer(x0, x0))?;
    let restricted = t.matmul(&projector)?;
    if restricted.is_zero() {
        return Ok(0.0);
    }
    Ok(singular_values(&restricted, EIGEN_TOL)?.largest())
}

/// Sufficient conditions for smoothness of `T : ℓ₂ⁿ → ℓ_pᵐ`, checked
/// separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactSmoothReport {
    pub target_p: PNorm,
    /// `‖T‖` as an operator from `ℓ₂` to `ℓ_p`.
    pub norm: f64,
    pub x0: Vector,
    /// Pairwise non-parallel maximizers found; one means uniqueness.
    pub maximizers: Vec<Vector>,
    pub unique_norming: bool,
    pub image_smooth: bool,
    pub smooth: bool,
    pub starts: usize,
}

/// [`compact_smooth_conditions_with`] using [`DEFAULT_STARTS`] and seed 0.
pub fn compact_smooth_conditions(t: &DenseMatrix, target_p: PNorm, tol: f64) -> Result<CompactSmoothReport> {
    compact_smooth_conditions_with(t, target_p, tol, DEFAULT_STARTS, 0)
}

/// Checks that `T` attains its `ℓ₂ → ℓ_p` norm at a unique `±x₀` and that
/// `Tx₀` is a smooth point of `ℓ_p`.
///
/// For `p = 2` uniqueness is read off the singular values. Otherwise the
/// norming vectors are searched by ascent from `starts` random points of the
/// sphere, `x ← Tᵀf / ‖Tᵀf‖₂` with `f` a support functional of `Tx`; each
/// step can only increase `‖Tx‖_p`. This is a probe: a second maximizer
/// missed by every start goes unnoticed.
pub fn compact_smooth_conditions_with(
    t: &DenseMatrix,
    target_p: PNorm,
    tol: f64,
    starts: usize,
    seed: u64,
) -> Result<CompactSmoothReport> {
    if t.is_zero() {
        return Err(Error::ZeroOperator);
    }
    if target_p.is_two() {
        let report = operator_smooth(t, tol)?;
        let sv = singular_values(t, EIGEN_TOL)?;
        let x0 = canonical_sign(sv.right_vectors.column(0));
        let maximizers =
            if report.smooth { vec![x0.clone()] } else { vec![x0.clone(), canonical_sign(sv.right_vectors.column(1))] };
        return Ok(CompactSmoothReport {
            target_p,
            norm: report.sigma1,
            x0,
            unique_norming: report.smooth,
            maximizers,
            image_smooth: true,
            smooth: report.smooth,
            starts: 0,
        });
    }
    if starts == 0 {
        return Err(Error::InvalidArgument("at least one start is required".into()));
    }

    let n = t.cols();
    let mut found: Vec<(f64, Vector)> = Vec::with_capacity(starts);
    for s in 0..starts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(s as u64);
        let start = loop {
            let v = Vector::from_vec((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect());
            if let Some(u) = v.normalized() {
                break u;
            }
        };
        found.push(ascend(t, target_p, start, tol)?);
    }
    // best value, lowest start index on ties
    let (best, x0) = found
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(b.0.cmp(&a.0)))
        .map(|(_, (v, x))| (*v, canonical_sign(x.clone())))
        .expect("at least one start");

    let cut = best * (1.0 - tol.max(1e-9));
    let mut maximizers: Vec<Vector> = vec![x0.clone()];
    for (v, x) in &found {
        if *v < cut {
            continue;
        }
        if maximizers.iter().all(|m| m.dot(x).abs() < 1.0 - DIRECTION_TOL) {
            maximizers.push(canonical_sign(x.clone()));
        }
    }
    let unique_norming = maximizers.len() == 1;
    let image = t.mul_vec(&x0)?;
    let image_smooth = vector_smooth(&image, target_p, tol)?.smooth;
    Ok(CompactSmoothReport {
        target_p,
        norm: best,
        x0,
        maximizers,
        unique_norming,
        image_smooth,
        smooth: unique_norming && image_smooth,
        starts,
    })
}

fn ascend(t: &DenseMatrix, p: PNorm, mut x: Vector, tol: f64) -> Result<(f64, Vector)> {
    let mut value = p.norm(t.mul_vec(&x)?.as_slice());
    for _ in 0..ASCENT_STEPS {
        let y = t.mul_vec(&x)?;
        if y.is_zero() {
            break;
        }
        let f = &vector_smooth(&y, p, tol)?.functionals[0];
        let Some(next) = t.tr_mul_vec(&f.coefficients)?.normalized() else {
            break;
        };
        let next_value = p.norm(t.mul_vec(&next)?.as_slice());
        if next_value < value {
            break;
        }
        let moved = next.axpy(-1.0, &x).norm2();
        x = next;
        let gain = next_value - value;
        value = next_value;
        if moved <= 1e-13 || gain <= 1e-16 * value && moved <= 1e-9 {
            break;
        }
    }
    Ok((value, x))
}

/// Searches for `A₁, A₂` with `T ⊥_B A₁`, `T ⊥_B A₂` but `T` not orthogonal
/// to `A₁ + A₂` in the spectral norm.
///
/// Candidates alternate between two constructions. Even pairs split `T`
/// itself: `A₁ = (Tx)xᵀ`, `A₂ = T − A₁` for a random unit `x ∈ H₀`. Odd pairs
/// start from random matrices `A` made orthogonal to `T` along a random unit
/// `w ∈ H₀`: `A ← A − (⟨Tw, Aw⟩/‖Tw‖²)·(Tw)wᵀ`. Individual orthogonality is
/// checked with the spectral test; the sum is judged by the oracle.
pub fn operator_additivity_probe(
    t: &DenseMatrix,
    pairs: usize,
    seed: u64,
    tol: f64,
) -> Result<Option<(DenseMatrix, DenseMatrix)>> {
    let mt = norm_attaining_set(t, tol)?;
    let (rows, cols) = t.shape();
    let k = mt.multiplicity;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit_in_h0 = |rng: &mut ChaCha8Rng| -> Result<Vector> {
        loop {
            let u = Vector::from_vec((0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect());
            if let Some(w) = mt.basis.mul_vec(&u)?.normalized() {
                return Ok(w);
            }
        }
    };
    let projected = |rng: &mut ChaCha8Rng| -> Result<DenseMatrix> {
        let w = unit_in_h0(rng)?;
        let a = DenseMatrix::new(rows, cols, (0..rows * cols).map(|_| rng.gen_range(-1.0..=1.0)).collect())?;
        project_orthogonal(t, &a, &w)
    };
    for i in 0..pairs {
        let (a1, a2) = if i % 2 == 0 {
            let x = unit_in_h0(&mut rng)?;
            let a1 = DenseMatrix::outer(&t.mul_vec(&x)?, &x);
            let a2 = t.sub(&a1)?;
            (a1, a2)
        } else {
            (projected(&mut rng)?, projected(&mut rng)?)
        };
        if !bj_operator_spectral(t, &a1, tol)?.orthogonal || !bj_operator_spectral(t, &a2, tol)?.orthogonal {
            continue;
        }
        if !bj_operator_oracle(t, &a1.add(&a2)?, NormSelector::Two, tol)?.orthogonal {
            return Ok(Some((a1, a2)));
        }
    }
    Ok(None)
}

/// `A − (⟨Tw, Aw⟩/‖Tw‖²)·(Tw)wᵀ` for unit `w`; the result satisfies
/// `⟨Tw, Aw⟩ = 0`.
pub fn project_orthogonal(t: &DenseMatrix, a: &DenseMatrix, w: &Vector) -> Result<DenseMatrix> {
    let tw = t.mul_vec(w)?;
    let denom = tw.dot(&tw);
    if denom == 0.0 {
        return Ok(a.clone());
    }
    let coef = tw.dot(&a.mul_vec(w)?) / denom;
    a.add_scaled(-coef, &DenseMatrix::outer(&tw, w))
}
