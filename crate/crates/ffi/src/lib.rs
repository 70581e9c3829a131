//! C ABI over the `frobpow` library.
//!
//! Rings and ideals cross the boundary as opaque handles. Every fallible call
//! returns an [`FpStatus`]; on failure the message is kept in a thread-local
//! slot readable with [`fp_last_error`]. Strings handed out by the library are
//! owned by the caller and must be released with [`fp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use frobpow::frobenius::{
    frobenius_closure_test, frobenius_power, hilbert_kunz, tight_closure_test, FrobeniusExponent, TestElementStrategy,
};
use frobpow::groebner::{krull_dim, length};
use frobpow::session::{builtin_ring, Session};
use frobpow::{Error, Ideal, Ring};

/// Result codes. `FP_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpStatus {
    FpOk = 0,
    FpNullArgument = 1,
    FpInvalidUtf8 = 2,
    FpParse = 3,
    FpResource = 4,
    FpUnsupported = 5,
    FpInvalidArgument = 6,
    FpSession = 7,
    FpPanic = 8,
}

/// Opaque ring handle.
pub struct FpRing(Ring);

/// Opaque ideal handle. Owns its ring and caches its Groebner basis.
pub struct FpIdeal(Ideal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::DuplicateVariable(_) | Error::NotPrime(_) => {
                FpStatus::FpParse
            }
            Error::Resource(_) | Error::ExponentOverflow(_) => FpStatus::FpResource,
            Error::NotZeroDimensional | Error::NotMPrimary | Error::NotHomogeneous(_) | Error::Hypothesis(_) => {
                FpStatus::FpUnsupported
            }
            _ => FpStatus::FpInvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FpStatus::FpOk,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FpStatus::FpPanic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FpStatus::FpNullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(FpStatus::FpInvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(FpStatus::FpNullArgument, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(FpStatus::FpNullArgument, "output pointer is null".into()))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure(FpStatus::FpInvalidArgument, e.to_string()))
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn fp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn fp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `GF(p)[vars]/(relations)` or a builtin ring name.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out_ring` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_ring_parse(spec: *const c_char, out_ring: *mut *mut FpRing) -> FpStatus {
    guard(|| {
        let spec = text(spec, "ring")?;
        let slot = out(out_ring)?;
        let resolved = builtin_ring(spec).unwrap_or_else(|| spec.to_string());
        *slot = Box::into_raw(Box::new(FpRing(Ring::parse(&resolved)?)));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`fp_ring_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_ring_free(ring: *mut FpRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Characteristic of the ring, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fp_ring_characteristic(ring: *const FpRing) -> u64 {
    ring.as_ref().map_or(0, |r| r.0.characteristic())
}

/// # Safety
/// `ring` must be a live handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fp_ring_describe(ring: *const FpRing, out_text: *mut *mut c_char) -> FpStatus {
    guard(|| {
        let r = handle(ring, "ring")?;
        *out(out_text)? = owned(r.0.describe());
        Ok(())
    })
}

/// Parses a generator list such as `(x, y^2)`, or `m` for the maximal ideal.
///
/// # Safety
/// `ring` must be a live handle, `gens` NUL-terminated, `out_ideal` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_parse(ring: *const FpRing, gens: *const c_char, out_ideal: *mut *mut FpIdeal) -> FpStatus {
    guard(|| {
        let r = handle(ring, "ring")?;
        let gens = text(gens, "generators")?;
        let slot = out(out_ideal)?;
        let ideal = if gens.trim() == "m" { Ideal::maximal(&r.0) } else { Ideal::parse(&r.0, gens)? };
        *slot = Box::into_raw(Box::new(FpIdeal(ideal)));
        Ok(())
    })
}

/// # Safety
/// `ideal` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_free(ideal: *mut FpIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Reduced Groebner basis of `(gens) + J` in the ambient ring, as `{g1, g2, ...}`.
///
/// # Safety
/// `ideal` must be a live handle and `out_text` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_groebner(ideal: *const FpIdeal, out_text: *mut *mut c_char) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_text)?;
        let gb = i.0.groebner_text()?;
        *slot = owned(format!("{{{}}}", gb.join(", ")));
        Ok(())
    })
}

/// # Safety
/// `ideal` must be a live handle, `poly` NUL-terminated, `out_text` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_normal_form(ideal: *const FpIdeal, poly: *const c_char, out_text: *mut *mut c_char) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_text)?;
        let ring = i.0.ring();
        let f = ring.parse_poly(text(poly, "polynomial")?)?;
        let nf = i.0.normal_form(&f)?;
        *slot = owned(ring.display(&nf));
        Ok(())
    })
}

/// # Safety
/// `ideal` must be a live handle, `poly` NUL-terminated, `out_member` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_contains(ideal: *const FpIdeal, poly: *const c_char, out_member: *mut bool) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_member)?;
        let f = i.0.ring().parse_poly(text(poly, "polynomial")?)?;
        *slot = i.0.contains(&f)?;
        Ok(())
    })
}

/// Length of `A/I`. Fails with `FP_UNSUPPORTED` when `I` is not zero-dimensional.
///
/// # Safety
/// `ideal` must be a live handle and `out_length` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_length(ideal: *const FpIdeal, out_length: *mut u64) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_length)?;
        *slot = length(&i.0)?;
        Ok(())
    })
}

/// Krull dimension of `A/I`; `-1` for the unit ideal.
///
/// # Safety
/// `ideal` must be a live handle and `out_dim` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_krull_dim(ideal: *const FpIdeal, out_dim: *mut i64) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_dim)?;
        *slot = krull_dim(&i.0)?;
        Ok(())
    })
}

/// `I^[q]` as a new handle. `q` must be a power of the characteristic.
///
/// # Safety
/// `ideal` must be a live handle and `out_ideal` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_ideal_frobenius_power(ideal: *const FpIdeal, q: u64, out_ideal: *mut *mut FpIdeal) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_ideal)?;
        let fe = FrobeniusExponent::from_q(i.0.ring().characteristic(), q)?;
        *slot = Box::into_raw(Box::new(FpIdeal(frobenius_power(&i.0, fe)?)));
        Ok(())
    })
}

/// Hilbert-Kunz rows for `e = 0..=emax` as a JSON array of
/// `{e, q, length, ratio_num, ratio_den}`.
///
/// # Safety
/// `ideal` must be a live handle and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_hilbert_kunz(ideal: *const FpIdeal, emax: u32, out_json: *mut *mut c_char) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_json)?;
        let table = hilbert_kunz(&i.0, emax)?;
        *slot = owned(json(&table.rows_text())?);
        Ok(())
    })
}

/// Frobenius closure verdict for `u` as JSON.
///
/// # Safety
/// `ideal` must be a live handle, `u` NUL-terminated, `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_frobenius_closure(
    ideal: *const FpIdeal,
    u: *const c_char,
    emax: u32,
    out_json: *mut *mut c_char,
) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_json)?;
        let u = i.0.ring().parse_poly(text(u, "element")?)?;
        *slot = owned(json(&frobenius_closure_test(&u, &i.0, emax)?)?);
        Ok(())
    })
}

/// Tight closure verdict for `u` as JSON. `test_element` null selects the
/// Jacobian strategy; otherwise `c` is used with exponent `test_power`.
///
/// # Safety
/// `ideal` must be a live handle, `u` NUL-terminated, `test_element` null or
/// NUL-terminated, `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_tight_closure(
    ideal: *const FpIdeal,
    u: *const c_char,
    test_element: *const c_char,
    test_power: u32,
    emax: u32,
    out_json: *mut *mut c_char,
) -> FpStatus {
    guard(|| {
        let i = handle(ideal, "ideal")?;
        let slot = out(out_json)?;
        let ring = i.0.ring();
        let u = ring.parse_poly(text(u, "element")?)?;
        let strategy = if test_element.is_null() {
            TestElementStrategy::default()
        } else {
            TestElementStrategy::explicit(ring.parse_poly(text(test_element, "test element")?)?, test_power)
        };
        *slot = owned(json(&tight_closure_test(&u, &i.0, &strategy, None, emax)?)?);
        Ok(())
    })
}

/// Runs a session given as JSON text and returns the report envelope.
/// `filter` may be null. `out_exit` receives 0 (all passed), 2 (a check
/// failed) or 1 (a task errored). Session-level problems return
/// `FP_SESSION` with a diagnostic such as `error[E003] ...`.
///
/// # Safety
/// `session_json` must be NUL-terminated, `filter` null or NUL-terminated,
/// `out_report` and `out_exit` valid.
#[no_mangle]
pub unsafe extern "C" fn fp_session_run(
    session_json: *const c_char,
    filter: *const c_char,
    parallel: bool,
    out_report: *mut *mut c_char,
    out_exit: *mut i32,
) -> FpStatus {
    guard(|| {
        let src = text(session_json, "session")?;
        let filter = if filter.is_null() { None } else { Some(text(filter, "filter")?) };
        let report = out(out_report)?;
        let exit = out(out_exit)?;
        let session_err = |d: frobpow::session::Diagnostic| Failure(FpStatus::FpSession, d.to_string());
        let session = Session::from_json(src, &[]).map_err(session_err)?;
        let run = session.run(filter, parallel).map_err(session_err)?;
        *report = owned(run.envelope.to_json());
        *exit = run.exit_code;
        Ok(())
    })
}
