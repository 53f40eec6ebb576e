use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("data length {len} does not match {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, len: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: max |S_ij - S_ji| = {asymmetry:e}")]
    NotSymmetric { asymmetry: f64 },

    #[error("zero operator: every unit vector attains the norm")]
    ZeroOperator,

    #[error("zero vector has no norming direction")]
    ZeroVector,

    #[error("invalid norm exponent p = {0} (need 1 <= p <= inf)")]
    InvalidExponent(f64),

    #[error("unsupported operator norm selector: {0} (expected 1, 2 or inf)")]
    UnsupportedNorm(String),

    #[error("x0 must be a unit vector, got norm {0}")]
    NotUnit(f64),

    #[error("top singular value is simple; T is smooth and has no witness pair")]
    SimpleTopSingularValue,

    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),

    #[error("{source_name}: {message}")]
    Parse { source_name: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bracket expansion passed |λ| = {cap:e}; the function is not coercive")]
    BracketCap { cap: f64 },

    #[error("function value is not finite at λ = {0}")]
    NonFiniteValue(f64),

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

impl Error {
    /// Numerical failures, as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::BracketCap { .. } | Error::NonFiniteValue(_) | Error::NoConvergence { .. })
    }
}
