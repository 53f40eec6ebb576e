//! Birkhoff-James orthogonality and smoothness for finite-dimensional real
//! operators.
//!
//! The crate decides `T ⊥_B A` (the norm of `T` cannot be reduced by adding
//! any multiple of `A`) in two independent ways: a spectral test on the top
//! singular subspace of `T`, and a direct convex minimization of
//! `λ ↦ ‖T + λA‖`. The same split exists for vectors in `ℓ_p^n`, where
//! one-sided directional derivatives of the norm are checked against the
//! minimization oracle.
//!
//! Module map:
//!
//! * [`linalg`]: dense matrices, cyclic Jacobi eigensolver, Gram-matrix
//!   singular values, induced norms and a bracketing golden-section search.
//! * [`vector`]: orthogonality, smoothness, support functionals and
//!   right-additivity probes in `ℓ_p^n`.
//! * [`operator`]: the norm-attaining set, the spectral and oracle
//!   orthogonality tests, descent certificates and transpose invariance.
//! * [`smoothness`]: smooth-point classification and non-smoothness
//!   witnesses.
//! * [`harness`]: seeded verification suites with JSON reports.
//! * [`io`]: matrix and vector file formats used by the CLI.

pub mod error;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod smoothness;
pub mod vector;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, NormSelector, PNorm, Vector};
pub use operator::{BjVerdict, DescentCertificate, Method, NormAttainingSet};
pub use smoothness::SmoothnessReport;
pub use vector::SupportFunctional;

/// Default relative tolerance for verdicts and multiplicity decisions.
pub const DEFAULT_TOL: f64 = 1e-9;
