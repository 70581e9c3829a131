use std::ffi::{c_char, CStr, CString};
use std::ptr;

use frobpow_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    fp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(fp_last_error()).to_string_lossy().into_owned()
}

unsafe fn ring(spec: &str) -> *mut FpRing {
    let mut r = ptr::null_mut();
    assert_eq!(fp_ring_parse(c(spec).as_ptr(), &mut r), FpStatus::FpOk);
    r
}

unsafe fn ideal(r: *const FpRing, gens: &str) -> *mut FpIdeal {
    let mut i = ptr::null_mut();
    assert_eq!(fp_ideal_parse(r, c(gens).as_ptr(), &mut i), FpStatus::FpOk, "{}", last_error());
    i
}

#[test]
fn groebner_membership_and_length() {
    unsafe {
        let r = ring("GF(5)[x,y]");
        assert_eq!(fp_ring_characteristic(r), 5);
        let i = ideal(r, "(x^2 - y, x*y)");
        let mut s = ptr::null_mut();
        assert_eq!(fp_ideal_groebner(i, &mut s), FpStatus::FpOk);
        assert_eq!(take(s), "{x^2 + 4*y, x*y, y^2}");
        let mut member = false;
        assert_eq!(fp_ideal_contains(i, c("y^2").as_ptr(), &mut member), FpStatus::FpOk);
        assert!(member);
        assert_eq!(fp_ideal_normal_form(i, c("x^2 + 1").as_ptr(), &mut s), FpStatus::FpOk);
        assert_eq!(take(s), "y + 1");
        let mut len = 0;
        assert_eq!(fp_ideal_length(i, &mut len), FpStatus::FpOk);
        assert_eq!(len, 3);
        fp_ideal_free(i);
        fp_ring_free(r);
    }
}

#[test]
fn frobenius_power_and_hilbert_kunz() {
    unsafe {
        let r = ring("GF(3)[x,y]");
        let m = ideal(r, "m");
        let mut b = ptr::null_mut();
        assert_eq!(fp_ideal_frobenius_power(m, 9, &mut b), FpStatus::FpOk);
        let mut len = 0;
        assert_eq!(fp_ideal_length(b, &mut len), FpStatus::FpOk);
        assert_eq!(len, 81);
        assert_eq!(fp_ideal_frobenius_power(m, 4, &mut b), FpStatus::FpInvalidArgument);
        assert!(last_error().contains("not a power of the characteristic"));
        let mut s = ptr::null_mut();
        assert_eq!(fp_hilbert_kunz(m, 2, &mut s), FpStatus::FpOk);
        let rows: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(rows[2]["length"], 81);
        assert_eq!(rows[2]["ratio_num"], "1");
        fp_ideal_free(b);
        fp_ideal_free(m);
        fp_ring_free(r);
    }
}

#[test]
fn closure_verdicts_on_the_fermat_cubic() {
    unsafe {
        let r = ring("fermat2");
        let i = ideal(r, "(x, y)");
        let mut s = ptr::null_mut();
        assert_eq!(fp_frobenius_closure(i, c("z^2").as_ptr(), 2, &mut s), FpStatus::FpOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["status"], "in-frobenius-closure");
        assert_eq!(v["q"], 2);
        fp_ideal_free(i);
        fp_ring_free(r);

        let r = ring("fermat7");
        let i = ideal(r, "(x, y)");
        assert_eq!(fp_tight_closure(i, c("z^2").as_ptr(), c("z").as_ptr(), 1, 2, &mut s), FpStatus::FpOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["status"], "evidence-in");
        assert_eq!(v["unconditional"], false);
        fp_ideal_free(i);
        fp_ring_free(r);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(fp_ring_parse(c("GF(4)[x]").as_ptr(), &mut r), FpStatus::FpParse);
        assert!(last_error().contains("not a prime"));
        assert!(r.is_null());
        assert_eq!(fp_ring_parse(ptr::null(), &mut r), FpStatus::FpNullArgument);
        let r = ring("GF(2)[x,y]");
        let mut i = ptr::null_mut();
        assert_eq!(fp_ideal_parse(r, c("(x +)").as_ptr(), &mut i), FpStatus::FpParse);
        let i = ideal(r, "(x)");
        let mut len = 0;
        assert_eq!(fp_ideal_length(i, &mut len), FpStatus::FpUnsupported);
        assert_eq!(fp_ideal_length(i, ptr::null_mut()), FpStatus::FpNullArgument);
        fp_ideal_free(i);
        fp_ring_free(r);
        fp_ring_free(ptr::null_mut());
        fp_string_free(ptr::null_mut());
    }
}

#[test]
fn session_run_returns_envelope_and_exit_code() {
    unsafe {
        let src = c(r#"{ "tasks": [
            { "id": "a", "command": "member", "ring": "plane3", "ideal": "(x, y)", "elem": "x*y" },
            { "id": "b", "command": "verify", "verb": "f-injective", "ring": "fermat2", "z": "(x, y)" }
        ] }"#);
        let (mut report, mut exit) = (ptr::null_mut(), -1);
        assert_eq!(fp_session_run(src.as_ptr(), ptr::null(), false, &mut report, &mut exit), FpStatus::FpOk);
        assert_eq!(exit, 2);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["tasks"].as_array().unwrap().len(), 2);
        assert_eq!(fp_session_run(src.as_ptr(), c("a").as_ptr(), true, &mut report, &mut exit), FpStatus::FpOk);
        assert_eq!(exit, 0);
        fp_string_free(report);
        let bad = c(r#"{ "tasks": [{ "id": "t", "command": "gb", "ring": "nowhere", "ideal": "m" }] }"#);
        assert_eq!(fp_session_run(bad.as_ptr(), ptr::null(), false, &mut report, &mut exit), FpStatus::FpSession);
        assert!(last_error().starts_with("error[E003]"));
    }
}

#[test]
fn errors_are_thread_local() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(fp_ring_parse(c("GF(9)[x]").as_ptr(), &mut r), FpStatus::FpParse);
        let other = std::thread::spawn(|| fp_last_error().is_null()).join().unwrap();
        assert!(other);
        assert!(last_error().contains('9'));
    }
}
