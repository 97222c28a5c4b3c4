use std::ffi::{c_char, CStr, CString};
use std::ptr;

use weighted_catalan_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wc_string_free(s) };
    out
}

fn last_error() -> String {
    let p = wc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(spec: &str) -> *mut WcWeight {
    let c = CString::new(spec).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { wc_weight_parse(c.as_ptr(), &mut w) },
        WcStatus::Ok,
        "{spec}"
    );
    w
}

#[test]
fn weighted_values_through_every_method() {
    let w = parse("oddsq");
    for method in [WcMethod::Dp, WcMethod::Series, WcMethod::BruteForce] {
        let mut s = ptr::null_mut();
        let st = unsafe { wc_weighted_catalan(w, 3, method, 14, &mut s) };
        assert_eq!(st, WcStatus::Ok);
        assert_eq!(take(s), "325");
    }
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wc_weight_to_string(w, &mut s) }, WcStatus::Ok);
    assert_eq!(take(s), "oddsq");
    assert_eq!(unsafe { wc_weight_evaluate(w, 4, &mut s) }, WcStatus::Ok);
    assert_eq!(take(s), "81");
    unsafe { wc_weight_free(w) };
}

#[test]
fn classical_catalan_and_valuation() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wc_catalan(10, &mut s) }, WcStatus::Ok);
    assert_eq!(take(s), "16796");
    let mut v = 0u64;
    let m = CString::new("16796").unwrap();
    assert_eq!(unsafe { wc_xi(m.as_ptr(), 2, &mut v) }, WcStatus::Ok);
    assert_eq!(v, 2);
    let zero = CString::new("0").unwrap();
    assert_eq!(unsafe { wc_xi(zero.as_ptr(), 2, &mut v) }, WcStatus::Domain);
    let junk = CString::new("12x").unwrap();
    assert_eq!(unsafe { wc_xi(junk.as_ptr(), 2, &mut v) }, WcStatus::Parse);
}

#[test]
fn membership_verdicts() {
    let mut v = WcVerdict {
        kind: WcVerdictKind::ProvenMember,
        witness_n: 0,
        witness_x: 0,
        witness_value: ptr::null_mut(),
        n_max: 0,
        x_max: 0,
    };
    let w = parse("poly:1,2");
    assert_eq!(
        unsafe { wc_check_membership(w, 8, 64, &mut v) },
        WcStatus::Ok
    );
    assert_eq!(v.kind, WcVerdictKind::ProvenNonMember);
    assert_eq!((v.witness_n, v.witness_x), (1, 0));
    assert_eq!(
        unsafe { CStr::from_ptr(v.witness_value) }.to_str().unwrap(),
        "2"
    );
    unsafe { wc_verdict_clear(&mut v) };
    assert!(v.witness_value.is_null());
    let mut all = true;
    assert_eq!(
        unsafe { wc_verify_weighted(w, 4, 8, 64, &mut all) },
        WcStatus::NotInClass
    );
    assert!(last_error().contains("not in the class"));
    unsafe { wc_weight_free(w) };

    let w = parse("geom:5");
    assert_eq!(
        unsafe { wc_check_membership(w, 8, 64, &mut v) },
        WcStatus::Ok
    );
    assert_eq!(v.kind, WcVerdictKind::ProvenMember);
    assert_eq!(
        unsafe { wc_verify_weighted(w, 80, 8, 64, &mut all) },
        WcStatus::Ok
    );
    assert!(all);
    unsafe { wc_weight_free(w) };

    let vals: Vec<i64> = (0..20).map(|x| 8 * x * x + 1).collect();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { wc_weight_from_table(vals.as_ptr(), vals.len(), &mut w) },
        WcStatus::Ok
    );
    assert_eq!(
        unsafe { wc_check_membership(w, 3, 8, &mut v) },
        WcStatus::Ok
    );
    assert_eq!(
        (v.kind, v.n_max, v.x_max),
        (WcVerdictKind::WindowVerified, 3, 8)
    );
    assert_eq!(
        unsafe { wc_check_membership(w, 8, 64, &mut v) },
        WcStatus::OutOfWindow
    );
    unsafe { wc_weight_free(w) };
}

#[test]
fn census_and_blocks() {
    let mut c = WcCensusSummary::default();
    assert_eq!(unsafe { wc_orbit_census(7, 18, &mut c) }, WcStatus::Ok);
    assert_eq!((c.min_exponent, c.minimal_count), (0, 1));
    assert!(c.orbit_sizes_ok);
    assert_eq!(
        unsafe { wc_orbit_census(30, 18, &mut c) },
        WcStatus::BoundExceeded
    );

    let mut count = 0usize;
    let st = unsafe { wc_zero_blocks(2, 10_000, 10, ptr::null_mut(), 0, &mut count) };
    assert_eq!((st, count), (WcStatus::Ok, 10));
    let mut blocks = vec![WcZeroBlock::default(); count];
    let st =
        unsafe { wc_zero_blocks(2, 10_000, 10, blocks.as_mut_ptr(), blocks.len(), &mut count) };
    assert_eq!(st, WcStatus::Ok);
    for b in &blocks {
        assert!(b.complete);
        assert_eq!(b.observed, (1 << b.k) - 1);
    }
    assert_eq!(
        unsafe { wc_zero_blocks(4, 100, 3, ptr::null_mut(), 0, &mut count) },
        WcStatus::Domain
    );
}

#[test]
fn bad_input_is_reported_not_fatal() {
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { wc_weight_parse(ptr::null(), &mut w) },
        WcStatus::NullPointer
    );
    let bad = CString::new("geom:x").unwrap();
    assert_eq!(
        unsafe { wc_weight_parse(bad.as_ptr(), &mut w) },
        WcStatus::Parse
    );
    assert!(!last_error().is_empty());
    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(
        unsafe { wc_weight_parse(invalid.as_ptr(), &mut w) },
        WcStatus::InvalidUtf8
    );
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { wc_weighted_catalan(ptr::null(), 1, WcMethod::Dp, 0, &mut s) },
        WcStatus::NullPointer
    );
    let ok = parse("const:1");
    assert_eq!(
        unsafe { wc_weighted_catalan(ok, 40, WcMethod::BruteForce, 14, &mut s) },
        WcStatus::BoundExceeded
    );
    assert_eq!(unsafe { wc_catalan(3, &mut s) }, WcStatus::Ok);
    assert!(wc_last_error_message().is_null());
    take(s);
    unsafe {
        wc_weight_free(ok);
        wc_weight_free(ptr::null_mut());
        wc_string_free(ptr::null_mut());
    }
}
