use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::eigen::EIGEN_TOL;
use super::matrix::DenseMatrix;
use super::svd::singular_values;
use crate::error::{Error, Result};

/// Exponent of an `ℓ_p` norm, `1 ≤ p ≤ ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub const ONE: PNorm = PNorm::Finite(1.0);
    pub const TWO: PNorm = PNorm::Finite(2.0);
    pub const INF: PNorm = PNorm::Infinity;

    /// Rejects `p < 1` and NaN; `f64::INFINITY` maps to [`PNorm::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(PNorm::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(PNorm::Finite(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PNorm::Finite(p) => p,
            PNorm::Infinity => f64::INFINITY,
        }
    }

    pub fn is_one(self) -> bool {
        self == PNorm::Finite(1.0)
    }

    pub fn is_two(self) -> bool {
        self == PNorm::Finite(2.0)
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn dual(self) -> PNorm {
        match self {
            PNorm::Infinity => PNorm::ONE,
            PNorm::Finite(1.0) => PNorm::INF,
            PNorm::Finite(p) => PNorm::Finite(p / (p - 1.0)),
        }
    }

    /// `‖x‖_p`, scaled by `max |x_i|` to avoid overflow.
    pub fn norm(self, x: &[f64]) -> f64 {
        let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        match self {
            PNorm::Infinity => scale,
            PNorm::Finite(1.0) => x.iter().map(|v| v.abs()).sum(),
            PNorm::Finite(2.0) => super::norm2(x),
            PNorm::Finite(p) => scale * x.iter().map(|v| (v.abs() / scale).powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(PNorm::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse p = {s:?}")))
                .and_then(PNorm::new),
        }
    }
}

impl Serialize for PNorm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PNorm::Finite(p) => s.serialize_f64(*p),
            PNorm::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PNorm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(p) => PNorm::new(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Induced operator norm used for `‖T‖`: `ℓ_p → ℓ_p` with `p ∈ {1, 2, ∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormSelector {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "inf")]
    Inf,
}

impl TryFrom<PNorm> for NormSelector {
    type Error = Error;

    fn try_from(p: PNorm) -> Result<Self> {
        match p {
            PNorm::Infinity => Ok(NormSelector::Inf),
            PNorm::Finite(1.0) => Ok(NormSelector::One),
            PNorm::Finite(2.0) => Ok(NormSelector::Two),
            other => Err(Error::UnsupportedNorm(other.to_string())),
        }
    }
}

impl FromStr for NormSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: PNorm = s.parse().map_err(|_| Error::UnsupportedNorm(s.to_string()))?;
        NormSelector::try_from(p)
    }
}

impl fmt::Display for NormSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormSelector::One => "1",
            NormSelector::Two => "2",
            NormSelector::Inf => "inf",
        })
    }
}

/// `‖T‖_p`: max absolute column sum for `p = 1`, max absolute row sum for
/// `p = ∞`, largest singular value for `p = 2`.
pub fn operator_norm(t: &DenseMatrix, p: NormSelector) -> Result<f64> {
    Ok(match p {
        NormSelector::One => {
            (0..t.cols()).map(|j| (0..t.rows()).map(|i| t.get(i, j).abs()).sum::<f64>()).fold(0.0, f64::max)
        }
        NormSelector::Inf => (0..t.rows()).map(|i| t.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max),
        NormSelector::Two => {
            if t.is_zero() {
                0.0
            } else {
                singular_values(t, EIGEN_TOL)?.largest()
            }
        }
    })
}
