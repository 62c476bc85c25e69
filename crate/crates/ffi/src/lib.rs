//! C ABI over the etaq library.
//!
//! Conventions:
//! - Series live behind the opaque handle [`EtaqSeries`]; create with
//!   `etaq_series_ar` / `etaq_series_c`, destroy with `etaq_series_free`.
//! - Every fallible call returns an `EtaqStatus` code and writes results
//!   through out-pointers. `ETAQ_OK` (0) means the out-values are valid.
//! - Strings returned by the library are NUL-terminated, UTF-8, and must
//!   be released with `etaq_string_free`.
//! - Handles are not thread-safe for concurrent mutation, but the API is
//!   read-only after construction, so sharing a handle across threads for
//!   reads is sound.
//!
//! The committed header `include/etaq.h` mirrors these declarations.

use std::ffi::{c_char, CStr, CString};

use etaq::arith;
use etaq::modform;
use etaq::partitions::{a_r_series, c_series, PartitionSeriesRequest};
use etaq::verify::{self, CheckResult, ScanConfig};
use etaq::TruncatedSeries;

/// Status codes shared by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputeError = 3,
    OutOfRange = 4,
    BadJson = 5,
}

/// Opaque truncated-series handle.
pub struct EtaqSeries {
    inner: TruncatedSeries,
}

fn box_out(series: TruncatedSeries, out: *mut *mut EtaqSeries) -> EtaqStatus {
    unsafe { *out = Box::into_raw(Box::new(EtaqSeries { inner: series })) };
    EtaqStatus::Ok
}

/// Series of a_r(n) for 0 <= n <= trunc; modulus 0 means exact integers.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn etaq_series_ar(
    r: u32,
    trunc: usize,
    modulus: u64,
    out: *mut *mut EtaqSeries,
) -> EtaqStatus {
    if out.is_null() {
        return EtaqStatus::NullPointer;
    }
    match a_r_series(PartitionSeriesRequest { r, trunc, modulus }) {
        Ok(s) => box_out(s, out),
        Err(_) => EtaqStatus::InvalidArgument,
    }
}

/// Series of c(n) for 0 <= n <= trunc; modulus 0 means exact integers.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn etaq_series_c(
    trunc: usize,
    modulus: u64,
    out: *mut *mut EtaqSeries,
) -> EtaqStatus {
    if out.is_null() {
        return EtaqStatus::NullPointer;
    }
    match c_series(trunc, modulus) {
        Ok(s) => box_out(s.series().clone(), out),
        Err(_) => EtaqStatus::InvalidArgument,
    }
}

/// Highest valid coefficient index of a series handle.
///
/// # Safety
/// `handle` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_series_trunc(
    handle: *const EtaqSeries,
    out: *mut usize,
) -> EtaqStatus {
    if handle.is_null() || out.is_null() {
        return EtaqStatus::NullPointer;
    }
    *out = (*handle).inner.trunc();
    EtaqStatus::Ok
}

/// Residue of coefficient n for a modular series. Fails with
/// `InvalidArgument` on exact series; use `etaq_series_coeff_string`.
///
/// # Safety
/// `handle` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_series_coeff_u64(
    handle: *const EtaqSeries,
    n: usize,
    out: *mut u64,
) -> EtaqStatus {
    if handle.is_null() || out.is_null() {
        return EtaqStatus::NullPointer;
    }
    let s = &(*handle).inner;
    if n > s.trunc() {
        return EtaqStatus::OutOfRange;
    }
    match s.residues() {
        Some(r) => {
            *out = r[n];
            EtaqStatus::Ok
        }
        None => EtaqStatus::InvalidArgument,
    }
}

/// Coefficient n as a decimal string (exact or modular). The string must
/// be freed with `etaq_string_free`.
///
/// # Safety
/// `handle` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_series_coeff_string(
    handle: *const EtaqSeries,
    n: usize,
    out: *mut *mut c_char,
) -> EtaqStatus {
    if handle.is_null() || out.is_null() {
        return EtaqStatus::NullPointer;
    }
    let s = &(*handle).inner;
    if n > s.trunc() {
        return EtaqStatus::OutOfRange;
    }
    let text = match s.residues() {
        Some(r) => r[n].to_string(),
        None => s.coeff(n).to_string(),
    };
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            EtaqStatus::Ok
        }
        Err(_) => EtaqStatus::ComputeError,
    }
}

/// Release a series handle. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a live handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn etaq_series_free(handle: *mut EtaqSeries) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn etaq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Legendre symbol (n/p) for odd prime p; out is -1, 0, or 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_legendre(n: i64, p: u64, out: *mut i8) -> EtaqStatus {
    if out.is_null() {
        return EtaqStatus::NullPointer;
    }
    match arith::legendre(n, p) {
        Ok(v) => {
            *out = v;
            EtaqStatus::Ok
        }
        Err(_) => EtaqStatus::InvalidArgument,
    }
}

/// Kronecker symbol (a/n); out is -1, 0, or 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_kronecker(a: i64, n: i64, out: *mut i8) -> EtaqStatus {
    if out.is_null() {
        return EtaqStatus::NullPointer;
    }
    *out = arith::kronecker(a, n);
    EtaqStatus::Ok
}

/// Deterministic primality test for u64.
#[no_mangle]
pub extern "C" fn etaq_is_prime(n: u64) -> bool {
    arith::is_prime(n)
}

/// Sturm bound for weight-k (given as 2k to allow half-integers, here
/// always even) forms on Gamma_0(N). `weight2` is twice the weight.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_sturm_bound(weight2: u64, level: u64, out: *mut u64) -> EtaqStatus {
    if out.is_null() {
        return EtaqStatus::NullPointer;
    }
    if weight2 % 2 != 0 || level == 0 {
        return EtaqStatus::InvalidArgument;
    }
    *out = modform::sturm_bound(weight2 / 2, level);
    EtaqStatus::Ok
}

/// Scan a congruence family given as JSON
/// `{"r":3,"A":7,"B":2,"mod":7}` (optional `"filter":{"p":11,"residues":[...]}`)
/// for n <= n_max. Writes 0 for pass, 1 for fail, 2 for vacuous.
///
/// # Safety
/// `family_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn etaq_check_family_json(
    family_json: *const c_char,
    n_max: u64,
    out: *mut i32,
) -> EtaqStatus {
    if family_json.is_null() || out.is_null() {
        return EtaqStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(family_json).to_str() else {
        return EtaqStatus::BadJson;
    };
    let Ok(fam) = serde_json::from_str(text) else {
        return EtaqStatus::BadJson;
    };
    match verify::check_family(&fam, n_max, &ScanConfig::default()) {
        Ok(rep) => {
            *out = match rep.result {
                CheckResult::Pass => 0,
                CheckResult::Fail => 1,
                CheckResult::Vacuous => 2,
            };
            EtaqStatus::Ok
        }
        Err(verify::VerifyError::CeilingExceeded { .. }) => EtaqStatus::OutOfRange,
        Err(_) => EtaqStatus::ComputeError,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn series_roundtrip_modular() {
        unsafe {
            let mut h: *mut EtaqSeries = ptr::null_mut();
            assert_eq!(etaq_series_ar(3, 10, 7, &mut h), EtaqStatus::Ok);
            let mut t = 0usize;
            assert_eq!(etaq_series_trunc(h, &mut t), EtaqStatus::Ok);
            assert_eq!(t, 10);
            let mut v = 99u64;
            assert_eq!(etaq_series_coeff_u64(h, 2, &mut v), EtaqStatus::Ok);
            assert_eq!(v, 0); // a_3(2) = 7
            assert_eq!(etaq_series_coeff_u64(h, 11, &mut v), EtaqStatus::OutOfRange);
            etaq_series_free(h);
        }
    }

    #[test]
    fn exact_coefficient_as_string() {
        unsafe {
            let mut h: *mut EtaqSeries = ptr::null_mut();
            assert_eq!(etaq_series_ar(3, 5, 0, &mut h), EtaqStatus::Ok);
            let mut v = 0u64;
            assert_eq!(etaq_series_coeff_u64(h, 2, &mut v), EtaqStatus::InvalidArgument);
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(etaq_series_coeff_string(h, 2, &mut s), EtaqStatus::Ok);
            assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "7");
            etaq_string_free(s);
            etaq_series_free(h);
        }
    }

    #[test]
    fn c_series_handle() {
        unsafe {
            let mut h: *mut EtaqSeries = ptr::null_mut();
            assert_eq!(etaq_series_c(10, 0, &mut h), EtaqStatus::Ok);
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(etaq_series_coeff_string(h, 5, &mut s), EtaqStatus::Ok);
            assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "2");
            etaq_string_free(s);
            etaq_series_free(h);
        }
    }

    #[test]
    fn number_theory_entry_points() {
        unsafe {
            let mut v = 0i8;
            assert_eq!(etaq_legendre(3, 7, &mut v), EtaqStatus::Ok);
            assert_eq!(v, -1);
            assert_eq!(etaq_kronecker(-16, 9, &mut v), EtaqStatus::Ok);
            assert_eq!(v, 1);
            assert!(etaq_is_prime(11));
            assert!(!etaq_is_prime(6655));
            let mut b = 0u64;
            assert_eq!(etaq_sturm_bound(188, 4, &mut b), EtaqStatus::Ok);
            assert_eq!(b, 47);
        }
    }

    #[test]
    fn json_family_check() {
        unsafe {
            let good = CString::new(r#"{"r":3,"A":7,"B":2,"mod":7}"#).unwrap();
            let mut res = -1i32;
            assert_eq!(etaq_check_family_json(good.as_ptr(), 30, &mut res), EtaqStatus::Ok);
            assert_eq!(res, 0);
            let bad = CString::new(r#"{"r":3,"A":7,"B":3,"mod":7}"#).unwrap();
            assert_eq!(etaq_check_family_json(bad.as_ptr(), 30, &mut res), EtaqStatus::Ok);
            assert_eq!(res, 1);
            let junk = CString::new("not json").unwrap();
            assert_eq!(
                etaq_check_family_json(junk.as_ptr(), 30, &mut res),
                EtaqStatus::BadJson
            );
        }
    }
}
