//! C ABI for `bjortho`.
//!
//! Matrices cross the boundary as opaque [`BjMatrix`] handles built from
//! row-major `double` arrays and released with [`bj_matrix_free`]. Every
//! fallible call returns a [`BjStatus`]; on failure the message is kept per
//! thread and can be copied out with [`bj_last_error_message`]. Panics are
//! caught and reported as `BJ_STATUS_PANIC`.
//!
//! The header `include/bjortho.h` is generated by cbindgen at build time.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bjortho::harness::truncated_example;
use bjortho::linalg::operator_norm;
use bjortho::operator::{bj_operator_oracle, bj_operator_spectral};
use bjortho::smoothness::{nonsmooth_witness, operator_smooth};
use bjortho::vector::bj_vector;
use bjortho::{DenseMatrix, Error, NormSelector, PNorm, Vector};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BjStatus {
    Ok = 0,
    NullPointer = 1,
    /// Rejected input: bad shape, non-finite entry, unmet precondition.
    InvalidInput = 2,
    /// Non-convergence or a non-finite intermediate value.
    Numerical = 3,
    Panic = 4,
}

/// Operator norm selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BjNorm {
    One = 1,
    Two = 2,
    Inf = 3,
}

impl From<BjNorm> for NormSelector {
    fn from(n: BjNorm) -> Self {
        match n {
            BjNorm::One => NormSelector::One,
            BjNorm::Two => NormSelector::Two,
            BjNorm::Inf => NormSelector::Inf,
        }
    }
}

/// Opaque dense real matrix.
pub struct BjMatrix {
    inner: DenseMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> BjStatus {
    set_last_error(&e.to_string());
    if e.is_numerical() {
        BjStatus::Numerical
    } else {
        BjStatus::InvalidInput
    }
}

fn null(what: &str) -> BjStatus {
    set_last_error(&format!("null pointer: {what}"));
    BjStatus::NullPointer
}

/// Runs `f`, turning errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), BjStatus>>(f: F) -> BjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BjStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_last_error("internal panic");
            BjStatus::Panic
        }
    }
}

unsafe fn matrix<'a>(m: *const BjMatrix, what: &str) -> Result<&'a DenseMatrix, BjStatus> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, BjStatus> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn vector(data: *const f64, len: usize, what: &str) -> Result<Vector, BjStatus> {
    if data.is_null() {
        return Err(null(what));
    }
    Vector::new(std::slice::from_raw_parts(data, len).to_vec()).map_err(fail)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes) and returns the full message length without
/// the terminator; 0 when there is no error.
#[no_mangle]
pub unsafe extern "C" fn bj_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds a `rows × cols` matrix from `rows·cols` row-major values.
#[no_mangle]
pub unsafe extern "C" fn bj_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out_matrix: *mut *mut BjMatrix,
) -> BjStatus {
    guard(|| {
        let slot = out(out_matrix, "out_matrix")?;
        *slot = ptr::null_mut();
        if data.is_null() {
            return Err(null("data"));
        }
        let len = rows.checked_mul(cols).ok_or_else(|| fail(Error::InvalidArgument("size overflow".into())))?;
        let values = std::slice::from_raw_parts(data, len).to_vec();
        let inner = DenseMatrix::new(rows, cols, values).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BjMatrix { inner }));
        Ok(())
    })
}

/// Releases a matrix; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bj_matrix_free(m: *mut BjMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Row count, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn bj_matrix_rows(m: *const BjMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// Column count, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn bj_matrix_cols(m: *const BjMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.cols())
}

/// Copies the entries row-major into `buf`, which holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bj_matrix_data(m: *const BjMatrix, buf: *mut f64, len: usize) -> BjStatus {
    guard(|| {
        let m = matrix(m, "matrix")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let src = m.as_slice();
        if len < src.len() {
            return Err(fail(Error::InvalidArgument(format!("buffer holds {len} values, need {}", src.len()))));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        Ok(())
    })
}

/// Induced operator norm `‖T‖`.
#[no_mangle]
pub unsafe extern "C" fn bj_operator_norm(t: *const BjMatrix, norm: BjNorm, out_norm: *mut f64) -> BjStatus {
    guard(|| {
        let t = matrix(t, "t")?;
        *out(out_norm, "out_norm")? = operator_norm(t, norm.into()).map_err(fail)?;
        Ok(())
    })
}

/// Spectral-norm test of `T ⊥_B A`. When orthogonal and `witness` is
/// non-null, the unit witness vector (length `cols`) is written there.
#[no_mangle]
pub unsafe extern "C" fn bj_orthogonal_spectral(
    t: *const BjMatrix,
    a: *const BjMatrix,
    tol: f64,
    out_orthogonal: *mut bool,
    witness: *mut f64,
) -> BjStatus {
    guard(|| {
        let (t, a) = (matrix(t, "t")?, matrix(a, "a")?);
        let flag = out(out_orthogonal, "out_orthogonal")?;
        let v = bj_operator_spectral(t, a, tol).map_err(fail)?;
        *flag = v.orthogonal;
        if let (Some(w), false) = (&v.witness, witness.is_null()) {
            ptr::copy_nonoverlapping(w.as_slice().as_ptr(), witness, w.len());
        }
        Ok(())
    })
}

/// Oracle test of `T ⊥_B A`: minimizes `λ ↦ ‖T + λA‖` directly. The
/// minimizer and minimum are written to the optional outputs.
#[no_mangle]
pub unsafe extern "C" fn bj_orthogonal_oracle(
    t: *const BjMatrix,
    a: *const BjMatrix,
    norm: BjNorm,
    tol: f64,
    out_orthogonal: *mut bool,
    out_lambda_min: *mut f64,
    out_norm_min: *mut f64,
) -> BjStatus {
    guard(|| {
        let (t, a) = (matrix(t, "t")?, matrix(a, "a")?);
        let flag = out(out_orthogonal, "out_orthogonal")?;
        let v = bj_operator_oracle(t, a, norm.into(), tol).map_err(fail)?;
        *flag = v.orthogonal;
        if let Some(l) = out_lambda_min.as_mut() {
            *l = v.lambda_min;
        }
        if let Some(n) = out_norm_min.as_mut() {
            *n = v.norm_min;
        }
        Ok(())
    })
}

/// `x ⊥_B y` in `ℓ_p` by one-sided derivatives; pass `p = INFINITY` for
/// the max norm.
#[no_mangle]
pub unsafe extern "C" fn bj_vector_orthogonal(
    x: *const f64,
    y: *const f64,
    len: usize,
    p: f64,
    tol: f64,
    out_orthogonal: *mut bool,
) -> BjStatus {
    guard(|| {
        let (x, y) = (vector(x, len, "x")?, vector(y, len, "y")?);
        let p = if p == f64::INFINITY { PNorm::Infinity } else { PNorm::new(p).map_err(fail)? };
        *out(out_orthogonal, "out_orthogonal")? = bj_vector(&x, &y, p, tol).map_err(fail)?.orthogonal;
        Ok(())
    })
}

/// Smoothness of `T` for the spectral norm with its two largest singular
/// values.
#[no_mangle]
pub unsafe extern "C" fn bj_operator_smooth(
    t: *const BjMatrix,
    tol: f64,
    out_smooth: *mut bool,
    out_sigma1: *mut f64,
    out_sigma2: *mut f64,
) -> BjStatus {
    guard(|| {
        let t = matrix(t, "t")?;
        let flag = out(out_smooth, "out_smooth")?;
        let r = operator_smooth(t, tol).map_err(fail)?;
        *flag = r.smooth;
        if let Some(s) = out_sigma1.as_mut() {
            *s = r.sigma1;
        }
        if let Some(s) = out_sigma2.as_mut() {
            *s = r.sigma2;
        }
        Ok(())
    })
}

/// The split `T = A₁ + A₂` into two operators orthogonal to `T`; requires a
/// repeated top singular value. Both handles must be freed by the caller.
#[no_mangle]
pub unsafe extern "C" fn bj_nonsmooth_witness(
    t: *const BjMatrix,
    tol: f64,
    out_a1: *mut *mut BjMatrix,
    out_a2: *mut *mut BjMatrix,
) -> BjStatus {
    guard(|| {
        let t = matrix(t, "t")?;
        let s1 = out(out_a1, "out_a1")?;
        let s2 = out(out_a2, "out_a2")?;
        *s1 = ptr::null_mut();
        *s2 = ptr::null_mut();
        let (a1, a2) = nonsmooth_witness(t, tol).map_err(fail)?;
        *s1 = Box::into_raw(Box::new(BjMatrix { inner: a1 }));
        *s2 = Box::into_raw(Box::new(BjMatrix { inner: a2 }));
        Ok(())
    })
}

/// Oracle minimum for `diag(−1, 1/2, …, 1 − 1/n)` against the identity:
/// the norm gap and the minimizing `λ`, both `1/(2n)` in exact arithmetic.
#[no_mangle]
pub unsafe extern "C" fn bj_truncated_example(
    n: usize,
    tol: f64,
    out_gap: *mut f64,
    out_lambda_star: *mut f64,
) -> BjStatus {
    guard(|| {
        let gap = out(out_gap, "out_gap")?;
        let lambda = out(out_lambda_star, "out_lambda_star")?;
        let e = truncated_example(n, tol).map_err(fail)?;
        *gap = e.gap;
        *lambda = e.lambda_star;
        Ok(())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
