use std::ffi::c_char;
use std::ptr;

use bjortho_ffi::*;

fn matrix(rows: usize, cols: usize, data: &[f64]) -> *mut BjMatrix {
    let mut m = ptr::null_mut();
    let s = unsafe { bj_matrix_new(rows, cols, data.as_ptr(), &mut m) };
    assert_eq!(s, BjStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { bj_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf.iter().take(n.min(255)).map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn matrix_round_trip() {
    let m = matrix(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    unsafe {
        assert_eq!((bj_matrix_rows(m), bj_matrix_cols(m)), (2, 3));
        let mut buf = [0.0; 6];
        assert_eq!(bj_matrix_data(m, buf.as_mut_ptr(), 6), BjStatus::Ok);
        assert_eq!(buf, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(bj_matrix_data(m, buf.as_mut_ptr(), 5), BjStatus::InvalidInput);
        bj_matrix_free(m);
        bj_matrix_free(ptr::null_mut());
        assert_eq!(bj_matrix_rows(ptr::null()), 0);
    }
}

#[test]
fn rejects_bad_input() {
    let mut m = ptr::null_mut();
    unsafe {
        let data = [1.0, f64::NAN];
        assert_eq!(bj_matrix_new(1, 2, data.as_ptr(), &mut m), BjStatus::InvalidInput);
        assert!(m.is_null());
        assert!(last_error().contains("non-finite"), "{}", last_error());
        assert_eq!(bj_matrix_new(1, 2, ptr::null(), &mut m), BjStatus::NullPointer);
        assert_eq!(bj_matrix_new(0, 2, data.as_ptr(), &mut m), BjStatus::InvalidInput);
        let mut out = 0.0;
        assert_eq!(bj_operator_norm(ptr::null(), BjNorm::Two, &mut out), BjStatus::NullPointer);
    }
}

#[test]
fn diagonal_example() {
    let t = matrix(2, 2, &[1.0, 0.0, 0.0, 0.5]);
    let a = matrix(2, 2, &[0.0, 0.0, 0.0, 1.0]);
    unsafe {
        let mut norm = 0.0;
        assert_eq!(bj_operator_norm(t, BjNorm::Two, &mut norm), BjStatus::Ok);
        assert_eq!(norm, 1.0);
        let mut orth = false;
        let mut w = [0.0; 2];
        assert_eq!(bj_orthogonal_spectral(t, a, 1e-9, &mut orth, w.as_mut_ptr()), BjStatus::Ok);
        assert!(orth);
        assert_eq!((w[0].abs(), w[1]), (1.0, 0.0));
        let (mut l, mut nm) = (f64::NAN, f64::NAN);
        assert_eq!(bj_orthogonal_oracle(t, a, BjNorm::Two, 1e-9, &mut orth, &mut l, &mut nm), BjStatus::Ok);
        assert!(orth);
        assert_eq!((l, nm), (0.0, 1.0));
        let mut smooth = false;
        assert_eq!(bj_operator_smooth(t, 1e-9, &mut smooth, ptr::null_mut(), ptr::null_mut()), BjStatus::Ok);
        assert!(smooth);
        let (mut a1, mut a2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bj_nonsmooth_witness(t, 1e-9, &mut a1, &mut a2), BjStatus::InvalidInput);
        assert!(a1.is_null() && a2.is_null());
        assert!(last_error().contains("simple"));
        bj_matrix_free(t);
        bj_matrix_free(a);
    }
}

#[test]
fn witness_split_sums_to_t() {
    let t = matrix(2, 2, &[0.0, 2.0, -2.0, 0.0]);
    unsafe {
        let (mut a1, mut a2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bj_nonsmooth_witness(t, 1e-9, &mut a1, &mut a2), BjStatus::Ok);
        let (mut b1, mut b2) = ([0.0; 4], [0.0; 4]);
        bj_matrix_data(a1, b1.as_mut_ptr(), 4);
        bj_matrix_data(a2, b2.as_mut_ptr(), 4);
        for i in 0..4 {
            assert_eq!(b1[i] + b2[i], [0.0, 2.0, -2.0, 0.0][i]);
        }
        for part in [a1, a2] {
            let mut orth = false;
            bj_orthogonal_oracle(t, part, BjNorm::Two, 1e-9, &mut orth, ptr::null_mut(), ptr::null_mut());
            assert!(orth);
            bj_matrix_free(part);
        }
        bj_matrix_free(t);
    }
}

#[test]
fn vectors_and_example() {
    unsafe {
        let x = [1.0, 1.0];
        let y = [1.0, -1.0];
        let mut orth = false;
        assert_eq!(bj_vector_orthogonal(x.as_ptr(), y.as_ptr(), 2, f64::INFINITY, 1e-9, &mut orth), BjStatus::Ok);
        assert!(orth);
        assert_eq!(bj_vector_orthogonal(x.as_ptr(), y.as_ptr(), 2, 0.5, 1e-9, &mut orth), BjStatus::InvalidInput);
        let (mut gap, mut lambda) = (0.0, 0.0);
        assert_eq!(bj_truncated_example(5, 1e-9, &mut gap, &mut lambda), BjStatus::Ok);
        assert!((gap - 0.1).abs() < 1e-9 && (lambda - 0.1).abs() < 1e-6);
        assert_eq!(bj_truncated_example(1, 1e-9, &mut gap, &mut lambda), BjStatus::InvalidInput);
        let v = std::ffi::CStr::from_ptr(bj_version());
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
