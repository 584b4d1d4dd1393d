//! C ABI over `cyclo-core`.
//!
//! Every fallible function returns a [`CycloStatus`] and writes its result
//! through an out-pointer. Handles are opaque; free each with its matching
//! `*_free`. No function unwinds across the boundary.

#![allow(clippy::missing_safety_doc)]

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclo_core::arith::is_prime;
use cyclo_core::binary::{binary_coeff, BinaryContext};
use cyclo_core::kaplan::KaplanContext;
use cyclo_core::poly::{cyclotomic_poly_capped, inverse_cyclotomic_poly_capped, CoeffVector};
use cyclo_core::semigroup::build_table;
use cyclo_core::Error;

/// Status codes; the nonzero values match the `cyclo` exit codes where
/// both exist.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloStatus {
    Ok = 0,
    InvalidInput = 2,
    CapExceeded = 3,
    SearchExhausted = 4,
    Internal = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

impl From<&Error> for CycloStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::TooLarge { .. } => CycloStatus::CapExceeded,
            Error::SearchExhausted { .. } => CycloStatus::SearchExhausted,
            Error::InexactDivision | Error::Overflow => CycloStatus::Internal,
            _ => CycloStatus::InvalidInput,
        }
    }
}

/// Precomputed state for coefficients of Φ_pqr.
pub struct CycloKaplan(KaplanContext);

/// A dense integer polynomial.
pub struct CycloPoly(CoeffVector);

fn guard(f: impl FnOnce() -> CycloStatus) -> CycloStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CycloStatus::Panic)
}

fn status_of<T>(r: Result<T, Error>, out: impl FnOnce(T)) -> CycloStatus {
    match r {
        Ok(v) => {
            out(v);
            CycloStatus::Ok
        }
        Err(e) => CycloStatus::from(&e),
    }
}

/// Static, NUL-terminated description of a status value. Takes a plain
/// integer so that any value coming from C is safe to pass.
#[no_mangle]
pub extern "C" fn cyclo_status_message(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        2 => b"invalid input\0",
        3 => b"degree cap exceeded\0",
        4 => b"search exhausted\0",
        5 => b"internal consistency failure\0",
        6 => b"null pointer argument\0",
        7 => b"buffer too small\0",
        8 => b"panic in library code\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Deterministic primality for any 64-bit integer.
#[no_mangle]
pub extern "C" fn cyclo_is_prime(n: u64) -> bool {
    is_prime(n)
}

/// Coefficient of xᵐ in Φ_pq for odd primes p < q and 0 ≤ m < pq.
#[no_mangle]
pub unsafe extern "C" fn cyclo_binary_coeff(p: u64, q: u64, m: u64, out: *mut i8) -> CycloStatus {
    if out.is_null() {
        return CycloStatus::NullPointer;
    }
    guard(|| {
        let r = BinaryContext::new(p, q).and_then(|ctx| binary_coeff(m, &ctx));
        status_of(r, |v| *out = v)
    })
}

/// Frobenius number of the semigroup generated by `gens[0..len]`.
/// `CYCLO_STATUS_INVALID_INPUT` when the generators have a common factor.
#[no_mangle]
pub unsafe extern "C" fn cyclo_semigroup_frobenius(gens: *const u64, len: usize, out: *mut i64) -> CycloStatus {
    if gens.is_null() || out.is_null() {
        return CycloStatus::NullPointer;
    }
    guard(|| {
        let gens = std::slice::from_raw_parts(gens, len);
        let r = build_table(gens).and_then(|t| t.frobenius().ok_or(Error::NotNumerical(gens.to_vec())));
        status_of(r, |v| *out = v)
    })
}

/// Builds a context for Φ_pqr, odd primes p < q < r.
#[no_mangle]
pub unsafe extern "C" fn cyclo_kaplan_new(p: u64, q: u64, r: u64, out: *mut *mut CycloKaplan) -> CycloStatus {
    if out.is_null() {
        return CycloStatus::NullPointer;
    }
    *out = ptr::null_mut();
    guard(|| {
        status_of(KaplanContext::from_primes(p, q, r), |ctx| {
            *out = Box::into_raw(Box::new(CycloKaplan(ctx)))
        })
    })
}

#[no_mangle]
pub unsafe extern "C" fn cyclo_kaplan_free(handle: *mut CycloKaplan) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Degree φ(pqr) of the context's polynomial.
#[no_mangle]
pub unsafe extern "C" fn cyclo_kaplan_degree(handle: *const CycloKaplan, out: *mut u64) -> CycloStatus {
    if handle.is_null() || out.is_null() {
        return CycloStatus::NullPointer;
    }
    *out = (*handle).0.triple().degree();
    CycloStatus::Ok
}

/// a_pqr(k); zero for k past the degree.
#[no_mangle]
pub unsafe extern "C" fn cyclo_kaplan_coeff(handle: *const CycloKaplan, k: u64, out: *mut i64) -> CycloStatus {
    if handle.is_null() || out.is_null() {
        return CycloStatus::NullPointer;
    }
    guard(|| {
        *out = (*handle).0.coeff(k);
        CycloStatus::Ok
    })
}

/// a_pqr(lo), …, a_pqr(hi) into `buf`, which must hold hi − lo + 1 values.
#[no_mangle]
pub unsafe extern "C" fn cyclo_kaplan_range(
    handle: *const CycloKaplan,
    lo: u64,
    hi: u64,
    buf: *mut i64,
    len: usize,
) -> CycloStatus {
    if handle.is_null() || buf.is_null() {
        return CycloStatus::NullPointer;
    }
    if lo > hi {
        return CycloStatus::InvalidInput;
    }
    if hi - lo >= len as u64 {
        return CycloStatus::BufferTooSmall;
    }
    guard(|| {
        let out = std::slice::from_raw_parts_mut(buf, (hi - lo + 1) as usize);
        for (slot, k) in out.iter_mut().zip(lo..=hi) {
            *slot = (*handle).0.coeff(k);
        }
        CycloStatus::Ok
    })
}

unsafe fn new_poly(r: Result<CoeffVector, Error>, out: *mut *mut CycloPoly) -> CycloStatus {
    if out.is_null() {
        return CycloStatus::NullPointer;
    }
    *out = ptr::null_mut();
    status_of(r, |f| *out = Box::into_raw(Box::new(CycloPoly(f))))
}

/// Φₙ, refusing degrees above `cap`.
#[no_mangle]
pub unsafe extern "C" fn cyclo_poly_cyclotomic(n: u64, cap: u64, out: *mut *mut CycloPoly) -> CycloStatus {
    guard(|| new_poly(cyclotomic_poly_capped(n, cap), out))
}

/// Ψₙ = (xⁿ − 1)/Φₙ, refusing degrees above `cap`.
#[no_mangle]
pub unsafe extern "C" fn cyclo_poly_inverse(n: u64, cap: u64, out: *mut *mut CycloPoly) -> CycloStatus {
    guard(|| new_poly(inverse_cyclotomic_poly_capped(n, cap), out))
}

#[no_mangle]
pub unsafe extern "C" fn cyclo_poly_free(handle: *mut CycloPoly) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of stored coefficients (degree + 1).
#[no_mangle]
pub unsafe extern "C" fn cyclo_poly_len(handle: *const CycloPoly, out: *mut usize) -> CycloStatus {
    if handle.is_null() || out.is_null() {
        return CycloStatus::NullPointer;
    }
    *out = (*handle).0.coeffs().len();
    CycloStatus::Ok
}

/// Copies all coefficients, constant term first.
#[no_mangle]
pub unsafe extern "C" fn cyclo_poly_coeffs(handle: *const CycloPoly, buf: *mut i64, len: usize) -> CycloStatus {
    if handle.is_null() || buf.is_null() {
        return CycloStatus::NullPointer;
    }
    let c = (*handle).0.coeffs();
    if len < c.len() {
        return CycloStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len());
    CycloStatus::Ok
}
