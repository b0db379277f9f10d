//! C ABI for stretchforge.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call
//! returns an [`SfStatus`]; on failure [`sf_last_error`] describes what went
//! wrong on the calling thread. Strings returned by the library are
//! released with [`sf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stretchforge::commands;
use stretchforge::lie;
use stretchforge::models;
use stretchforge::poset::{self, StretchClass};
use stretchforge::stretch::{self, CollarField, StretchGerm};
use stretchforge::{Error, TruncatedSeries};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidArgument = 4,
    VarMismatch = 5,
    NotTangent = 6,
    NotAGerm = 7,
    NotInvertible = 8,
    Precondition = 9,
    NotClosed = 10,
    Internal = 11,
}

/// A truncated multivariate power series.
pub struct SfSeries {
    inner: TruncatedSeries,
}

/// A stretching germ.
pub struct SfGerm {
    inner: StretchGerm,
}

/// A vector field in collar coordinates.
pub struct SfCollarField {
    inner: CollarField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SfStatus {
    match e {
        Error::Json(_) | Error::Parse(_) => SfStatus::InvalidJson,
        Error::VarMismatch { .. } | Error::VarIndex { .. } | Error::DimensionMismatch(_) => {
            SfStatus::VarMismatch
        }
        Error::NotTangent(_) | Error::NotSphereTangent(_) | Error::NotDivisible => SfStatus::NotTangent,
        Error::NotAGerm(_) => SfStatus::NotAGerm,
        Error::NotInvertible | Error::NoSquareRoot(_) => SfStatus::NotInvertible,
        Error::Precondition(_) => SfStatus::Precondition,
        Error::NotClosed(_) | Error::LinearDependence => SfStatus::NotClosed,
        Error::InvalidSubstitution(_) | Error::SampleOutOfRange(_) | Error::Invalid(_) => {
            SfStatus::InvalidArgument
        }
        Error::InternalInconsistency(_) | Error::Io(_) => SfStatus::Internal,
    }
}

/// Runs `f`, recording errors and panics for [`sf_last_error`].
fn guard<F>(f: F) -> SfStatus
where
    F: FnOnce() -> Result<(), (SfStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SfStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside stretchforge".into());
            SfStatus::Internal
        }
    }
}

fn lib<T>(r: stretchforge::Result<T>) -> Result<T, (SfStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (SfStatus, String) {
    (SfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (SfStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (SfStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (SfStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (SfStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SfStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|e| (SfStatus::Internal, e.to_string()))?
        .into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, (SfStatus, String)> {
    serde_json::to_string(v).map_err(|e| (SfStatus::Internal, e.to_string()))
}

fn parse<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, (SfStatus, String)> {
    serde_json::from_str(s).map_err(|e| (SfStatus::InvalidJson, e.to_string()))
}

/// Message describing the last failure on this thread, or null. The string
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a series from its JSON form
/// `{"vars": n, "order": d, "terms": [{"exp": [...], "num": "a", "den": "b"}]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_series_from_json(json: *const c_char, out: *mut *mut SfSeries) -> SfStatus {
    guard(|| {
        let inner: TruncatedSeries = parse(read_str(json, "json")?)?;
        write_out(out, SfSeries { inner })
    })
}

/// # Safety
/// `s` must be a live series handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_series_to_json(s: *const SfSeries, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let s = deref(s, "series")?;
        write_string(out, json(&s.inner)?)
    })
}

/// # Safety
/// `a`, `b` must be live series handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_series_add(a: *const SfSeries, b: *const SfSeries, out: *mut *mut SfSeries) -> SfStatus {
    guard(|| {
        let inner = lib(deref(a, "a")?.inner.add(&deref(b, "b")?.inner))?;
        write_out(out, SfSeries { inner })
    })
}

/// # Safety
/// `a`, `b` must be live series handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_series_mul(a: *const SfSeries, b: *const SfSeries, out: *mut *mut SfSeries) -> SfStatus {
    guard(|| {
        let inner = lib(deref(a, "a")?.inner.mul(&deref(b, "b")?.inner))?;
        write_out(out, SfSeries { inner })
    })
}

/// # Safety
/// `s` must be null or a series handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_series_free(s: *mut SfSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Builds a germ from a univariate series with positive valuation and
/// positive leading coefficient.
///
/// # Safety
/// `s` must be a live series handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_germ_from_series(s: *const SfSeries, out: *mut *mut SfGerm) -> SfStatus {
    guard(|| {
        let inner = lib(StretchGerm::new(deref(s, "series")?.inner.clone()))?;
        write_out(out, SfGerm { inner })
    })
}

/// The germ `y^p` truncated at `order`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_germ_power(p: u32, order: u32, out: *mut *mut SfGerm) -> SfStatus {
    guard(|| {
        let inner = lib(StretchGerm::power(p, order))?;
        write_out(out, SfGerm { inner })
    })
}

/// # Safety
/// `g` must be a live germ handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_germ_valuation(g: *const SfGerm, out: *mut u32) -> SfStatus {
    guard(|| {
        let v = deref(g, "germ")?.inner.valuation();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = v;
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a germ handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_germ_free(g: *mut SfGerm) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The germ relating the Klein and Poincaré collar coordinates.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_klein_poincare_germ(order: u32, out: *mut *mut SfGerm) -> SfStatus {
    guard(|| {
        let inner = lib(models::klein_to_poincare_germ(order))?;
        write_out(out, SfGerm { inner })
    })
}

/// Parses a collar field from JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_collar_from_json(json: *const c_char, out: *mut *mut SfCollarField) -> SfStatus {
    guard(|| {
        let inner: CollarField = parse(read_str(json, "json")?)?;
        write_out(out, SfCollarField { inner })
    })
}

/// # Safety
/// `vf` must be a live field handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_collar_to_json(vf: *const SfCollarField, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let vf = deref(vf, "field")?;
        write_string(out, json(&vf.inner)?)
    })
}

/// # Safety
/// `vf` must be null or a field handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_collar_free(vf: *mut SfCollarField) {
    if !vf.is_null() {
        drop(Box::from_raw(vf));
    }
}

/// Pullback by `(x, y) -> (x, y^p)`.
///
/// # Safety
/// `vf` must be a live field handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_pullback_analytic(vf: *const SfCollarField, p: u32, out: *mut *mut SfCollarField) -> SfStatus {
    guard(|| {
        let inner = lib(stretch::pullback_analytic(&deref(vf, "field")?.inner, p))?;
        write_out(out, SfCollarField { inner })
    })
}

/// Pullback by `(x, y) -> (x, f(y))`.
///
/// # Safety
/// `vf`, `f` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_pullback_smooth(
    vf: *const SfCollarField,
    f: *const SfGerm,
    out: *mut *mut SfCollarField,
) -> SfStatus {
    guard(|| {
        let inner = lib(stretch::pullback_smooth(&deref(vf, "field")?.inner, &deref(f, "germ")?.inner))?;
        write_out(out, SfCollarField { inner })
    })
}

/// Eigenvalue multiplicities of the geodesic symmetry around a complex
/// line of complex hyperbolic `m`-space.
///
/// # Safety
/// `plus` and `minus` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sf_complex_symmetry_multiplicities(m: u32, plus: *mut u32, minus: *mut u32) -> SfStatus {
    guard(|| {
        if plus.is_null() || minus.is_null() {
            return Err(null("output pointer"));
        }
        let (a, b) = lib(models::complex_symmetry_multiplicities(m as usize))?;
        *plus = a as u32;
        *minus = b as u32;
        Ok(())
    })
}

/// Condition (A) proxy for a built-in algebra (or JSON file) and an
/// optional subalgebra name; `subalgebra` may be null for the stabilizer.
///
/// # Safety
/// `algebra` must be a nul-terminated string, `subalgebra` null or one, and
/// `holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_condition_a(algebra: *const c_char, subalgebra: *const c_char, holds: *mut bool) -> SfStatus {
    guard(|| {
        let algebra = read_str(algebra, "algebra")?;
        let sub = if subalgebra.is_null() {
            None
        } else {
            Some(read_str(subalgebra, "subalgebra")?)
        };
        if holds.is_null() {
            return Err(null("output pointer"));
        }
        let pair = lib(commands::resolve_algebra_pair(algebra, sub))?;
        *holds = lib(lie::condition_a_proxy(&pair.algebra, &pair.subalgebra))?.holds;
        Ok(())
    })
}

/// Whether the stretch class `a` is tighter than `b`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_is_tighter(a: u32, b: u32, out: *mut bool) -> SfStatus {
    guard(|| {
        let (a, b) = (lib(StretchClass::new(a))?, lib(StretchClass::new(b))?);
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = poset::is_tighter(a, b);
        Ok(())
    })
}

/// Conjugacy certificate for the classes `a` and `b`, as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_certificate_json(a: u32, b: u32, condition_a: bool, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let (a, b) = (lib(StretchClass::new(a))?, lib(StretchClass::new(b))?);
        write_string(out, json(&poset::nonconjugacy_certificate(a, b, condition_a))?)
    })
}
