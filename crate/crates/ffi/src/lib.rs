//! C ABI over `weighted-catalan`.
//!
//! Weights live behind the opaque [`WcWeight`] handle. Every entry point
//! returns a [`WcStatus`]; on failure a message is available from
//! [`wc_last_error_message`] on the same thread. Big integers cross the
//! boundary as NUL-terminated decimal strings owned by the library and
//! released with [`wc_string_free`].
//!
//! The header `include/weighted_catalan.h` is generated by the build script.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weighted_catalan::{
    catalan, check_membership, shape_census, verify_weighted, weighted_catalan_bruteforce,
    weighted_catalan_dp, weighted_catalan_series, xi, zero_blocks, BigInt, CheckWindow, Error,
    MembershipVerdict, WeightSequence,
};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    NotInClass = 5,
    Inexact = 6,
    BoundExceeded = 7,
    OutOfWindow = 8,
    Mismatch = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcMethod {
    Dp = 0,
    Series = 1,
    BruteForce = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcVerdictKind {
    ProvenMember = 0,
    ProvenNonMember = 1,
    WindowVerified = 2,
}

/// Membership verdict. `witness_value` is owned by the caller after a
/// successful call and must be released with [`wc_verdict_clear`].
#[repr(C)]
#[derive(Debug)]
pub struct WcVerdict {
    pub kind: WcVerdictKind,
    /// Difference order of the witness; 0 means `b(0)` is even.
    pub witness_n: u32,
    pub witness_x: u64,
    /// Decimal value of the offending difference, or NULL.
    pub witness_value: *mut c_char,
    /// Window actually checked, for `WindowVerified`.
    pub n_max: u32,
    pub x_max: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WcCensusSummary {
    pub n: u32,
    pub orbits: u64,
    pub min_exponent: u32,
    pub predicted_min_exponent: u32,
    pub minimal_count: u64,
    pub orbit_sizes_ok: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WcZeroBlock {
    pub p: u64,
    pub k: u64,
    pub start: u64,
    pub observed: u64,
    pub predicted: u64,
    pub complete: bool,
    pub matches: bool,
}

/// Opaque weight sequence.
pub struct WcWeight {
    inner: WeightSequence,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(WcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::OutOfWindow { .. } => WcStatus::OutOfWindow,
            Error::Domain(_) | Error::ZeroValuation | Error::Io(_) => WcStatus::Domain,
            Error::Parse { .. } => WcStatus::Parse,
            Error::InexactBracket { .. } | Error::InexactOrbit { .. } => WcStatus::Inexact,
            Error::BoundExceeded { .. } => WcStatus::BoundExceeded,
            Error::NotInClass(_) => WcStatus::NotInClass,
            Error::EvenReducedWeight { .. } | Error::DecompositionMismatch { .. } => {
                WcStatus::Mismatch
            }
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WcStatus::NullPointer, format!("{what} is NULL"))
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            WcStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(WcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn weight<'a>(w: *const WcWeight) -> Result<&'a WeightSequence, Failure> {
    w.as_ref().map(|w| &w.inner).ok_or_else(|| null("weight"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn give_weight(out: *mut *mut WcWeight, inner: WeightSequence) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(WcWeight { inner })));
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    // decimal strings and weight specs never contain NUL
    CString::new(s).expect("no interior NUL").into_raw()
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(to_c(s));
    Ok(())
}

unsafe fn write_bigint(out: *mut *mut c_char, v: &BigInt) -> Result<(), Failure> {
    write_string(out, v.to_string())
}

/// Message describing the last failed call on this thread, or NULL. The
/// pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn wc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn wc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a weight spec such as `oddsq`, `geom:5`, `poly:1,4` or `table:1,3,5`.
#[no_mangle]
pub unsafe extern "C" fn wc_weight_parse(spec: *const c_char, out: *mut *mut WcWeight) -> WcStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let inner: WeightSequence = spec.parse()?;
        give_weight(out, inner)
    })
}

/// Builds a table weight from `len` values.
#[no_mangle]
pub unsafe extern "C" fn wc_weight_from_table(
    values: *const i64,
    len: usize,
    out: *mut *mut WcWeight,
) -> WcStatus {
    guard(|| {
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(values, len)
        };
        let inner = WeightSequence::table(slice.iter().copied());
        give_weight(out, inner)
    })
}

/// Releases a weight handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn wc_weight_free(w: *mut WcWeight) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Canonical spec string of a weight.
#[no_mangle]
pub unsafe extern "C" fn wc_weight_to_string(
    w: *const WcWeight,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        let s = weight(w)?.to_string();
        write_string(out, s)
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_weight_evaluate(
    w: *const WcWeight,
    x: u64,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| write_bigint(out, &weight(w)?.evaluate(x)?))
}

/// Classical Catalan number `C_n`.
#[no_mangle]
pub unsafe extern "C" fn wc_catalan(n: u32, out: *mut *mut c_char) -> WcStatus {
    guard(|| write_bigint(out, &catalan(n)))
}

/// Weighted Catalan number `C_n^b`. `brute_bound` caps `n` for
/// `BruteForce` and is ignored otherwise.
#[no_mangle]
pub unsafe extern "C" fn wc_weighted_catalan(
    w: *const WcWeight,
    n: u32,
    method: WcMethod,
    brute_bound: u32,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        let b = weight(w)?;
        let v = match method {
            WcMethod::Dp => weighted_catalan_dp(n, b)?.value,
            WcMethod::Series => weighted_catalan_series(n, b)?.swap_remove(n as usize),
            WcMethod::BruteForce => weighted_catalan_bruteforce(n, b, brute_bound)?.count.value,
        };
        write_bigint(out, &v)
    })
}

/// Decides or window-checks membership in the class F.
#[no_mangle]
pub unsafe extern "C" fn wc_check_membership(
    w: *const WcWeight,
    n_max: u32,
    x_max: u64,
    out: *mut WcVerdict,
) -> WcStatus {
    guard(|| {
        let b = weight(w)?;
        let verdict = check_membership(b, CheckWindow { n_max, x_max })?;
        let mut v = WcVerdict {
            kind: WcVerdictKind::ProvenMember,
            witness_n: 0,
            witness_x: 0,
            witness_value: ptr::null_mut(),
            n_max: 0,
            x_max: 0,
        };
        match verdict {
            MembershipVerdict::ProvenMember => {}
            MembershipVerdict::ProvenNonMember { witness } => {
                v.kind = WcVerdictKind::ProvenNonMember;
                v.witness_n = witness.n;
                v.witness_x = witness.x;
                v.witness_value = to_c(witness.value.to_string());
            }
            MembershipVerdict::WindowVerified { n_max, x_max } => {
                v.kind = WcVerdictKind::WindowVerified;
                v.n_max = n_max;
                v.x_max = x_max;
            }
        }
        if out.is_null() {
            wc_string_free(v.witness_value);
            return Err(null("out"));
        }
        out.write(v);
        Ok(())
    })
}

/// Frees the witness string of a verdict and resets it to NULL.
#[no_mangle]
pub unsafe extern "C" fn wc_verdict_clear(v: *mut WcVerdict) {
    if let Some(v) = v.as_mut() {
        wc_string_free(v.witness_value);
        v.witness_value = ptr::null_mut();
    }
}

/// Exponent of the largest power of `base` dividing the decimal integer
/// `value`.
#[no_mangle]
pub unsafe extern "C" fn wc_xi(value: *const c_char, base: u64, out: *mut u64) -> WcStatus {
    guard(|| {
        let s = read_str(value, "value")?;
        let m: BigInt = s
            .trim()
            .parse()
            .map_err(|e| Failure(WcStatus::Parse, format!("`{s}`: {e}")))?;
        write(out, xi(&m, base)?, "out")
    })
}

/// Checks `xi(C_n^b) = s(n+1) - 1` for `n <= n_max`. Returns `NotInClass`
/// for rejected weights; otherwise `*all_match` reports the sweep.
#[no_mangle]
pub unsafe extern "C" fn wc_verify_weighted(
    w: *const WcWeight,
    n_max: u32,
    window_n: u32,
    window_x: u64,
    all_match: *mut bool,
) -> WcStatus {
    guard(|| {
        let b = weight(w)?;
        let window = CheckWindow {
            n_max: window_n,
            x_max: window_x,
        };
        let (_, reports) = verify_weighted(n_max, b, window)?;
        write(all_match, reports.iter().all(|r| r.matches), "all_match")
    })
}

/// Summary of the orbit census of binary trees with `n` vertices.
#[no_mangle]
pub unsafe extern "C" fn wc_orbit_census(
    n: u32,
    bound: u32,
    out: *mut WcCensusSummary,
) -> WcStatus {
    guard(|| {
        let c = shape_census(n, bound)?;
        let summary = WcCensusSummary {
            n,
            orbits: c.records.len() as u64,
            min_exponent: c.min_exponent(),
            predicted_min_exponent: c.predicted_min_exponent(),
            minimal_count: c.minimal_count(),
            orbit_sizes_ok: c.orbit_sizes_ok(),
        };
        write(out, summary, "out")
    })
}

/// Zero blocks of `C_n mod p` for `n <= n_max`. Writes at most `cap`
/// blocks to `out` and the total found to `*count`; pass `cap = 0` to query
/// the count.
#[no_mangle]
pub unsafe extern "C" fn wc_zero_blocks(
    p: u64,
    n_max: u64,
    k_max: u64,
    out: *mut WcZeroBlock,
    cap: usize,
    count: *mut usize,
) -> WcStatus {
    guard(|| {
        if count.is_null() {
            return Err(null("count"));
        }
        if out.is_null() && cap > 0 {
            return Err(null("out"));
        }
        let reports = zero_blocks(p, n_max, k_max)?;
        for (i, r) in reports.iter().take(cap).enumerate() {
            out.add(i).write(WcZeroBlock {
                p: r.p,
                k: r.k,
                start: r.start,
                observed: r.observed,
                predicted: r.predicted,
                complete: r.complete,
                matches: r.matches,
            });
        }
        count.write(reports.len());
        Ok(())
    })
}
