//! Seeded verification suites and the truncated diagonal family.
//!
//! Every trial draws its input from its own ChaCha8 stream (`seed`, stream
//! = trial index), so a report depends only on the seed, the trial count,
//! the dimension range and the tolerance. Each trial compares a reference
//! verdict with a candidate verdict; disagreements are stored together with
//! their full input and can be re-checked with [`replay`].
//!
//! Random operators have i.i.d. uniform `[−1, 1]` entries, except for a
//! fifth of the trials whose spectrum is engineered to have a repeated top
//! singular value: `T = U·diag(1, …, 1, σ_{k+1}, …)·Vᵀ` with orthogonal
//! `U`, `V`. Engineered matrices are rounded to multiples of `2⁻⁴⁰`, which
//! moves their singular values by less than `1e-11` and puts all entries on
//! a common binary grid.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize_columns, singular_values, DenseMatrix, NormSelector, PNorm, Vector, EIGEN_TOL};
use crate::operator::{
    adjoint_invariance, bj_operator_oracle, bj_operator_spectral, descent_lambda, norm_attaining_set,
};
use crate::smoothness::{nonsmooth_witness, operator_additivity_probe, operator_smooth, project_orthogonal};
use crate::vector::{bj_vector, bj_vector_oracle};

/// Version of the report layout; bumped on any field change.
pub const SCHEMA_VERSION: u32 = 1;

/// Share of operator trials drawn with a repeated top singular value.
pub const DEGENERATE_FRACTION: f64 = 0.2;

/// Engineered matrices are rounded to multiples of `2^-GRID_BITS`.
pub const GRID_BITS: i32 = 40;

/// Constructed pairs tried per trial by the right-additivity probe.
pub const PROBE_PAIRS: usize = 100;

/// Exponents drawn by the vector suite.
pub const VECTOR_EXPONENTS: [PNorm; 5] = [PNorm::ONE, PNorm::Finite(1.5), PNorm::TWO, PNorm::Finite(3.0), PNorm::INF];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Spectral test against the minimization oracle.
    OracleEquivalence,
    /// Verdict for `(T, A)` against the verdict for `(Tᵀ, Aᵀ)`.
    Adjoint,
    /// Spectral witnesses and non-smoothness splits.
    WitnessValidity,
    /// Smoothness classification, hyperplane supremum and the additivity probe.
    SmoothnessAdditivity,
    /// `ℓ_p` derivative test against the oracle.
    VectorDerivative,
    /// Descent certificates lower the norm.
    Descent,
    /// Columns of `M_T` attain `σ₁`, its complement stays below `σ_out`.
    MtCorrectness,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::OracleEquivalence,
        Suite::Adjoint,
        Suite::WitnessValidity,
        Suite::SmoothnessAdditivity,
        Suite::VectorDerivative,
        Suite::Descent,
        Suite::MtCorrectness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Adjoint => "adjoint",
            Suite::WitnessValidity => "witness-validity",
            Suite::SmoothnessAdditivity => "smoothness-additivity",
            Suite::VectorDerivative => "vector-derivative",
            Suite::Descent => "descent",
            Suite::MtCorrectness => "mt-correctness",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    pub tol: f64,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        SuiteConfig { seed, trials, min_dim: 2, max_dim: 8, tol: 1e-7 }
    }

    fn validate(&self) -> Result<()> {
        if self.min_dim < 2 || self.min_dim > self.max_dim {
            return Err(Error::InvalidArgument(format!(
                "dimension range {}..={} (need 2 <= min <= max)",
                self.min_dim, self.max_dim
            )));
        }
        if !(self.tol.is_finite() && self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::InvalidArgument(format!("tolerance {}", self.tol)));
        }
        Ok(())
    }
}

/// Self-contained input of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrialInput {
    Pair { t: DenseMatrix, a: DenseMatrix, seed: u64 },
    Operator { t: DenseMatrix, smooth_by_construction: bool, seed: u64 },
    Vectors { x: Vector, y: Vector, p: PNorm },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub reference: bool,
    pub candidate: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl TrialOutcome {
    pub fn agrees(&self) -> bool {
        self.reference == self.candidate
    }

    fn with(reference: bool, candidate: bool) -> Self {
        TrialOutcome { reference, candidate, note: None }
    }

    /// A property that should hold; `failures` lists what went wrong.
    fn property(failures: Vec<String>) -> Self {
        let ok = failures.is_empty();
        TrialOutcome { reference: true, candidate: ok, note: (!ok).then(|| failures.join("; ")) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub input: TrialInput,
    pub outcome: TrialOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub seed: u64,
    pub tol: f64,
    pub min_dim: usize,
    pub max_dim: usize,
    pub trials: usize,
    pub agreements: usize,
    /// Sorted by trial index.
    pub disagreements: Vec<TrialRecord>,
    /// Wall-clock time; zero when timing is disabled.
    pub runtime_seconds: f64,
}

/// ChaCha8 stream of trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs a suite and measures its wall-clock time.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = run_suite_untimed(suite, config)?;
    report.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Runs a suite with `runtime_seconds` left at zero, so equal configurations
/// give equal reports.
pub fn run_suite_untimed(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut disagreements = Vec::new();
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let input = generate(suite, &mut rng, config)?;
        let outcome = check_or_note(suite, &input, config.tol);
        if !outcome.agrees() {
            disagreements.push(TrialRecord { trial, input, outcome });
        }
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        suite,
        seed: config.seed,
        tol: config.tol,
        min_dim: config.min_dim,
        max_dim: config.max_dim,
        trials: config.trials,
        agreements: config.trials - disagreements.len(),
        disagreements,
        runtime_seconds: 0.0,
    })
}

/// Re-runs the check of a stored record.
pub fn replay(suite: Suite, record: &TrialRecord, tol: f64) -> TrialOutcome {
    check_or_note(suite, &record.input, tol)
}

fn check_or_note(suite: Suite, input: &TrialInput, tol: f64) -> TrialOutcome {
    check(suite, input, tol).unwrap_or_else(|e| TrialOutcome {
        reference: true,
        candidate: false,
        note: Some(format!("error: {e}")),
    })
}

/// The input of trial `rng` for `suite`.
pub fn generate(suite: Suite, rng: &mut ChaCha8Rng, config: &SuiteConfig) -> Result<TrialInput> {
    let dim = |rng: &mut ChaCha8Rng| rng.gen_range(config.min_dim..=config.max_dim);
    let (m, n) = (dim(rng), dim(rng));
    Ok(match suite {
        Suite::OracleEquivalence | Suite::Adjoint | Suite::Descent => {
            let t = random_operator(rng, m, n)?;
            let a = random_matrix(rng, m, n);
            let a = if suite != Suite::Descent && rng.gen_bool(0.5) {
                let w = random_unit_in_top_space(rng, &t, config.tol)?;
                project_orthogonal(&t, &a, &w)?
            } else {
                a
            };
            TrialInput::Pair { t, a, seed: rng.gen() }
        }
        Suite::WitnessValidity => {
            let t = random_degenerate(rng, m, n, 2)?;
            let w = random_unit_in_top_space(rng, &t, config.tol)?;
            let a = project_orthogonal(&t, &random_matrix(rng, m, n), &w)?;
            TrialInput::Pair { t, a, seed: rng.gen() }
        }
        Suite::SmoothnessAdditivity => {
            let smooth = rng.gen_bool(0.5);
            let t = if smooth {
                let gap = rng.gen_range(0.05..0.5);
                random_with_gap(rng, m, n, gap)?
            } else {
                let k = rng.gen_range(2..=m.min(n).min(3));
                random_degenerate(rng, m, n, k)?
            };
            TrialInput::Operator { t, smooth_by_construction: smooth, seed: rng.gen() }
        }
        Suite::MtCorrectness => {
            let t = random_operator(rng, m, n)?;
            TrialInput::Operator { t, smooth_by_construction: false, seed: rng.gen() }
        }
        Suite::VectorDerivative => {
            let p = VECTOR_EXPONENTS[rng.gen_range(0..VECTOR_EXPONENTS.len())];
            let (x, y) = random_vector_pair(rng, n, p);
            TrialInput::Vectors { x, y, p }
        }
    })
}

/// Evaluates one trial.
pub fn check(suite: Suite, input: &TrialInput, tol: f64) -> Result<TrialOutcome> {
    match (suite, input) {
        (Suite::OracleEquivalence, TrialInput::Pair { t, a, .. }) => {
            let oracle = bj_operator_oracle(t, a, NormSelector::Two, tol)?.orthogonal;
            let spectral = bj_operator_spectral(t, a, tol)?.orthogonal;
            Ok(TrialOutcome::with(oracle, spectral))
        }
        (Suite::Adjoint, TrialInput::Pair { t, a, .. }) => {
            let (direct, transposed) = adjoint_invariance(t, a, tol)?;
            Ok(TrialOutcome::with(direct, transposed))
        }
        (Suite::WitnessValidity, TrialInput::Pair { t, a, .. }) => check_witnesses(t, a, tol),
        (Suite::Descent, TrialInput::Pair { t, a, seed }) => check_descent(t, a, *seed, tol),
        (Suite::SmoothnessAdditivity, TrialInput::Operator { t, smooth_by_construction, seed }) => {
            check_smoothness(t, *smooth_by_construction, *seed, tol)
        }
        (Suite::MtCorrectness, TrialInput::Operator { t, seed, .. }) => check_mt(t, *seed, tol),
        (Suite::VectorDerivative, TrialInput::Vectors { x, y, p }) => {
            let oracle = bj_vector_oracle(x, y, *p, tol)?.orthogonal;
            let derivative = bj_vector(x, y, *p, tol)?.orthogonal;
            Ok(TrialOutcome::with(oracle, derivative))
        }
        _ => Err(Error::InvalidArgument(format!("input kind does not belong to suite {suite}"))),
    }
}

fn check_witnesses(t: &DenseMatrix, a: &DenseMatrix, tol: f64) -> Result<TrialOutcome> {
    let mut failures = Vec::new();
    let verdict = bj_operator_spectral(t, a, tol)?;
    let sigma1 = norm_attaining_set(t, tol)?.sigma1;
    let scale = sigma1 * singular_values(a, EIGEN_TOL)?.largest();
    match (&verdict.orthogonal, &verdict.witness) {
        (true, Some(x)) => {
            let tx = t.mul_vec(x)?;
            if (x.norm2() - 1.0).abs() > 1e-12 {
                failures.push(format!("witness norm {}", x.norm2()));
            }
            if (tx.norm2() - sigma1).abs() > tol * sigma1 {
                failures.push(format!("‖Tx‖ = {} but σ₁ = {sigma1}", tx.norm2()));
            }
            let form = tx.dot(&a.mul_vec(x)?);
            if form.abs() > tol * scale {
                failures.push(format!("⟨Tx, Ax⟩ = {form}"));
            }
        }
        _ => failures.push("projected pair not recognized as orthogonal".into()),
    }
    let (a1, a2) = nonsmooth_witness(t, tol)?;
    if a1.add(&a2)? != *t {
        failures.push("A₁ + A₂ differs from T".into());
    }
    for (name, part) in [("A₁", &a1), ("A₂", &a2)] {
        if !bj_operator_oracle(t, part, NormSelector::Two, tol)?.orthogonal {
            failures.push(format!("T not orthogonal to {name}"));
        }
    }
    Ok(TrialOutcome::property(failures))
}

fn check_descent(t: &DenseMatrix, a: &DenseMatrix, seed: u64, tol: f64) -> Result<TrialOutcome> {
    let orthogonal = bj_operator_spectral(t, a, tol)?.orthogonal;
    let mut failures = Vec::new();
    match (orthogonal, descent_lambda(t, a, tol, seed)?) {
        (true, None) => {}
        (false, Some(c)) => {
            if c.lambda0 == 0.0 {
                failures.push("λ₀ = 0".into());
            }
            if c.operator_norm_after >= c.sigma1 {
                failures.push(format!("‖T + λ₀A‖ = {} not below σ₁ = {}", c.operator_norm_after, c.sigma1));
            }
            if c.max_over_mt >= c.sigma1 {
                failures.push(format!("max over M_T {} not below σ₁ = {}", c.max_over_mt, c.sigma1));
            }
        }
        (true, Some(_)) => failures.push("certificate for an orthogonal pair".into()),
        (false, None) => failures.push("no certificate for a non-orthogonal pair".into()),
    }
    Ok(TrialOutcome::property(failures))
}

fn check_smoothness(t: &DenseMatrix, constructed: bool, seed: u64, tol: f64) -> Result<TrialOutcome> {
    let report = operator_smooth(t, tol)?;
    let mut notes = Vec::new();
    if constructed && (report.hyperplane_sup - report.sigma2).abs() > 1e-8 * report.sigma2.max(f64::MIN_POSITIVE) {
        notes.push(format!("hyperplane sup {} but σ₂ = {}", report.hyperplane_sup, report.sigma2));
    }
    let counterexample = operator_additivity_probe(t, PROBE_PAIRS, seed, tol)?.is_some();
    if counterexample == report.smooth {
        notes.push(format!("smooth = {} but counterexample found = {counterexample}", report.smooth));
    }
    let candidate = if notes.is_empty() { report.smooth } else { !constructed };
    Ok(TrialOutcome { reference: constructed, candidate, note: (!notes.is_empty()).then(|| notes.join("; ")) })
}

fn check_mt(t: &DenseMatrix, seed: u64, tol: f64) -> Result<TrialOutcome> {
    let mt = norm_attaining_set(t, tol)?;
    let mut failures = Vec::new();
    for j in 0..mt.multiplicity {
        let tq = t.mul_vec(&mt.vector(j))?.norm2();
        if (tq - mt.sigma1).abs() > 1e-9 * mt.sigma1 {
            failures.push(format!("column {j}: ‖Tq‖ = {tq}, σ₁ = {}", mt.sigma1));
        }
    }
    if mt.multiplicity < t.cols() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = loop {
            let v = random_unit(&mut rng, t.cols());
            let proj = mt.basis.mul_vec(&mt.basis.tr_mul_vec(&v)?)?;
            if let Some(y) = v.axpy(-1.0, &proj).normalized() {
                break y;
            }
        };
        let ty = t.mul_vec(&y)?.norm2();
        if ty > mt.sigma_out + 1e-9 {
            failures.push(format!("‖Ty‖ = {ty} above σ_out = {}", mt.sigma_out));
        }
    }
    Ok(TrialOutcome::property(failures))
}

/// `m × n` matrix with i.i.d. uniform `[−1, 1]` entries.
pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> DenseMatrix {
    DenseMatrix::from_raw(m, n, (0..m * n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

/// Uniform random matrix, or with probability [`DEGENERATE_FRACTION`] one
/// whose top singular value has multiplicity two or three.
pub fn random_operator(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Result<DenseMatrix> {
    if m.min(n) >= 2 && rng.gen_bool(DEGENERATE_FRACTION) {
        let k = rng.gen_range(2..=m.min(n).min(3));
        random_degenerate(rng, m, n, k)
    } else {
        Ok(random_matrix(rng, m, n))
    }
}

/// Random `n × n` orthogonal matrix (Gram-Schmidt of a uniform matrix).
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Result<DenseMatrix> {
    loop {
        match orthonormalize_columns(&random_matrix(rng, n, n)) {
            Ok(q) => return Ok(q),
            Err(Error::DimensionMismatch(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// `U·diag(sigma)·Vᵀ` with random orthogonal `U`, `V`, in full precision.
pub fn random_with_spectrum(rng: &mut ChaCha8Rng, m: usize, n: usize, sigma: &[f64]) -> Result<DenseMatrix> {
    let r = m.min(n);
    if sigma.len() != r {
        return Err(Error::DimensionMismatch(format!("{} singular values for a {m}x{n} matrix", sigma.len())));
    }
    let u = random_orthogonal(rng, m)?;
    let v = random_orthogonal(rng, n)?;
    let mut d = DenseMatrix::zeros(m, n);
    for (i, &s) in sigma.iter().enumerate() {
        d.set(i, i, s);
    }
    u.matmul(&d)?.matmul(&v.transpose())
}

/// Top singular value `1` repeated `k` times, the rest uniform in `[0, 0.9]`;
/// rounded to the `2^-GRID_BITS` grid.
pub fn random_degenerate(rng: &mut ChaCha8Rng, m: usize, n: usize, k: usize) -> Result<DenseMatrix> {
    let r = m.min(n);
    if k < 2 || k > r {
        return Err(Error::InvalidArgument(format!("multiplicity {k} for a {m}x{n} matrix")));
    }
    let mut sigma = vec![1.0; k];
    sigma.extend((k..r).map(|_| rng.gen_range(0.0..=0.9)));
    Ok(quantize(&random_with_spectrum(rng, m, n, &sigma)?, GRID_BITS))
}

/// `σ₁ = 1`, `σ₂ = 1 − gap`, the rest uniform in `[0, σ₂]`; rounded to the
/// `2^-GRID_BITS` grid.
pub fn random_with_gap(rng: &mut ChaCha8Rng, m: usize, n: usize, gap: f64) -> Result<DenseMatrix> {
    if !(gap > 0.0 && gap <= 1.0) {
        return Err(Error::InvalidArgument(format!("spectral gap {gap}")));
    }
    let r = m.min(n);
    let s2 = 1.0 - gap;
    let mut sigma = vec![1.0];
    if r >= 2 {
        sigma.push(s2);
    }
    sigma.extend((2..r).map(|_| rng.gen_range(0.0..=s2)));
    Ok(quantize(&random_with_spectrum(rng, m, n, &sigma)?, GRID_BITS))
}

/// Rounds every entry to the nearest multiple of `2^-bits`.
pub fn quantize(m: &DenseMatrix, bits: i32) -> DenseMatrix {
    let g = 2f64.powi(bits);
    let data = m.as_slice().iter().map(|v| (v * g).round() / g).collect();
    DenseMatrix::from_raw(m.rows(), m.cols(), data)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    loop {
        let v = Vector::from_vec((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect());
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

fn random_unit_in_top_space(rng: &mut ChaCha8Rng, t: &DenseMatrix, tol: f64) -> Result<Vector> {
    let mt = norm_attaining_set(t, tol)?;
    mt.basis.mul_vec(&random_unit(rng, mt.multiplicity))
}

/// `(x, y)` in `ℓ_pⁿ`. For `p = 1` and `p = ∞` half of the points are made
/// non-smooth (zeroed or tied coordinates); half of the `y` are pushed into
/// the orthogonal set of `x` along a support functional.
fn random_vector_pair(rng: &mut ChaCha8Rng, n: usize, p: PNorm) -> (Vector, Vector) {
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    if (p.is_one() || p == PNorm::INF) && rng.gen_bool(0.5) {
        let special = rng.gen_range(1..n.max(2)).min(n - 1).max(1);
        let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(0.5);
        for v in x.iter_mut().take(special) {
            *v = if p.is_one() { 0.0 } else { peak * v.signum() };
        }
    }
    if x.iter().all(|v| *v == 0.0) {
        x[0] = 1.0;
    }
    let x = Vector::from_vec(x);
    let mut y = Vector::from_vec((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect());
    if rng.gen_bool(0.5) {
        // a support functional f of x: y ← y − f(y)/‖x‖·x gives f(y) = 0
        let nx = p.norm(x.as_slice());
        let f: Vec<f64> = match p {
            PNorm::Infinity => {
                let i = (0..n).max_by(|&i, &j| x[i].abs().total_cmp(&x[j].abs())).unwrap_or(0);
                (0..n).map(|j| if j == i { x[i].signum() } else { 0.0 }).collect()
            }
            PNorm::Finite(q) => x
                .iter()
                .map(|v| {
                    let u = v / nx;
                    u.signum() * u.abs().powf(q - 1.0)
                })
                .collect(),
        };
        let fy: f64 = f.iter().zip(y.iter()).map(|(a, b)| a * b).sum();
        y = y.axpy(-fy / nx, &x);
    }
    (x, y)
}

/// The truncated diagonal family `T_n = diag(−1, 1/2, 2/3, …, 1 − 1/n)`
/// against `A = I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedExample {
    pub n: usize,
    pub t: DenseMatrix,
    pub a: DenseMatrix,
    /// `‖T_n‖ − min_λ ‖T_n + λI‖₂` as found by the oracle.
    pub gap: f64,
    /// Oracle minimizer.
    pub lambda_star: f64,
    pub norm_min: f64,
    pub orthogonal: bool,
    /// `1/(2n)`, the exact value of both `gap` and `lambda_star`.
    pub closed_form: f64,
}

/// `T_n` and `A = I` with the oracle's minimum. `‖T_n‖ = 1`, yet
/// `‖T_n + λI‖₂ = max(1 − λ, 1 − 1/n + λ)` for small `λ > 0`, so the
/// minimum `1 − 1/(2n)` sits at `λ = 1/(2n)` and `T_n` is never orthogonal
/// to the identity.
pub fn truncated_example(n: usize, tol: f64) -> Result<TruncatedExample> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("truncation size {n} (need n >= 2)")));
    }
    let mut d = vec![-1.0];
    d.extend((2..=n).map(|k| 1.0 - 1.0 / k as f64));
    let t = DenseMatrix::diag(&d)?;
    let a = DenseMatrix::identity(n);
    let v = bj_operator_oracle(&t, &a, NormSelector::Two, tol)?;
    Ok(TruncatedExample {
        n,
        gap: 1.0 - v.norm_min,
        lambda_star: v.lambda_min,
        norm_min: v.norm_min,
        orthogonal: v.orthogonal,
        closed_form: 1.0 / (2.0 * n as f64),
        t,
        a,
    })
}
