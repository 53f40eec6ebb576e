//! Bracketing golden-section search for convex functions of one variable.

use crate::error::{Error, Result};

/// Bracket expansion gives up once `|λ|` would exceed this.
pub const LAMBDA_CAP: f64 = 1e12;

const MAX_GOLDEN_STEPS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMinimum {
    pub lambda: f64,
    pub value: f64,
    pub evaluations: usize,
}

struct Tracker<F> {
    f: F,
    best: (f64, f64),
    evaluations: usize,
}

impl<F: FnMut(f64) -> Result<f64>> Tracker<F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        let v = (self.f)(x)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteValue(x));
        }
        self.evaluations += 1;
        // ties keep the earlier point, so f(0) wins over equal values
        if v < self.best.1 {
            self.best = (x, v);
        }
        Ok(v)
    }
}

/// Minimizes a convex `f` over the real line.
///
/// Samples `0, ±w, ±2w, ±4w, …` (with `w = seed_width`) until the outermost
/// samples on both sides are no lower than the best inner sample. By
/// convexity the minimizer then lies between the neighbours of that sample,
/// and golden-section search shrinks the bracket until its width is at most
/// `tol`. The returned point is the best of every evaluation, so
/// `value ≤ f(0)` always holds.
pub fn minimize_scalar_convex<F>(f: F, seed_width: f64, tol: f64) -> Result<ScalarMinimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(seed_width.is_finite() && seed_width > 0.0) {
        return Err(Error::InvalidArgument(format!("seed bracket width {seed_width}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("minimization tolerance {tol}")));
    }
    let mut tr = Tracker { f, best: (0.0, f64::INFINITY), evaluations: 0 };
    let f0 = tr.eval(0.0)?;

    // sorted samples: ascending in λ
    let mut left: Vec<(f64, f64)> = Vec::new(); // nearest first
    let mut right: Vec<(f64, f64)> = Vec::new();
    let mut w = seed_width;
    loop {
        if w > LAMBDA_CAP {
            return Err(Error::BracketCap { cap: LAMBDA_CAP });
        }
        let fl = tr.eval(-w)?;
        let fr = tr.eval(w)?;
        left.push((-w, fl));
        right.push((w, fr));
        let inner_best = left[..left.len() - 1].iter().chain(&right[..right.len() - 1]).map(|p| p.1).fold(f0, f64::min);
        if fl >= inner_best && fr >= inner_best {
            break;
        }
        w *= 2.0;
    }

    let mut samples: Vec<(f64, f64)> = left.iter().rev().copied().collect();
    samples.push((0.0, f0));
    samples.extend(right.iter().copied());
    let idx = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1).then(a.1 .0.abs().total_cmp(&b.1 .0.abs())))
        .map(|(i, _)| i)
        .expect("non-empty");
    let idx = idx.clamp(1, samples.len() - 2);
    let (mut a, mut b) = (samples[idx - 1].0, samples[idx + 1].0);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = tr.eval(x1)?;
    let mut f2 = tr.eval(x2)?;
    for _ in 0..MAX_GOLDEN_STEPS {
        let floor = 4.0 * f64::EPSILON * a.abs().max(b.abs());
        if b - a <= tol.max(floor) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = tr.eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = tr.eval(x2)?;
        }
    }
    tr.eval(0.5 * (a + b))?;

    Ok(ScalarMinimum { lambda: tr.best.0, value: tr.best.1, evaluations: tr.evaluations })
}
