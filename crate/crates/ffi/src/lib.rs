//! C interface to `nnreal`.
//!
//! Spectra and certificates are opaque handles. Every function returns an
//! [`NnrStatus`]; on failure [`nnr_last_error`] holds a message for the
//! calling thread. Strings returned through out-parameters are owned by the
//! caller and released with [`nnr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nnreal::json::{self, JsonError};
use nnreal::realize::{realize, RealizationCertificate, RealizeError};
use nnreal::spectrum::{jcf_enumerate, ls_realizable, JordanForm, Spectrum};

#[repr(C)]
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum NnrStatus {
    Ok = 0,
    /// Null pointer, invalid UTF-8 or an index out of range.
    InvalidArgument = 1,
    ParseError = 2,
    SchemaError = 3,
    NotRealizable = 4,
    NotFound = 5,
    /// Any other construction failure.
    DomainError = 6,
    VerificationFailed = 7,
    Panic = 8,
}

pub struct NnrSpectrum {
    inner: Spectrum,
}

pub struct NnrCertificate {
    inner: RealizationCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(NnrStatus, String);

impl From<JsonError> for Fail {
    fn from(e: JsonError) -> Self {
        let status = match e {
            JsonError::Parse(_) => NnrStatus::ParseError,
            JsonError::Schema(_) => NnrStatus::SchemaError,
        };
        Fail(status, e.to_string())
    }
}

impl From<RealizeError> for Fail {
    fn from(e: RealizeError) -> Self {
        let status = match e {
            RealizeError::NotRealizable(_) => NnrStatus::NotRealizable,
            RealizeError::NotFound { .. } => NnrStatus::NotFound,
            RealizeError::InvalidJordanForm(_) => NnrStatus::InvalidArgument,
            RealizeError::VerificationFailed(_) => NnrStatus::VerificationFailed,
            _ => NnrStatus::DomainError,
        };
        Fail(status, e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(NnrStatus::InvalidArgument, format!("InvalidArgument: {msg}"))
}

/// Runs `f`, records any failure and turns panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NnrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            NnrStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("Panic: internal error");
            NnrStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| invalid(&format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| invalid("output contains a NUL byte"))?;
    put(out, c.into_raw(), "out")
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn nnr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn nnr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nnr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a spectrum from JSON (an entries array or `{"perron", "entries"}`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_spectrum_from_json(text: *const c_char, out: *mut *mut NnrSpectrum) -> NnrStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let inner = json::spectrum_from_json(&json::parse(text)?)?;
        put(out, Box::into_raw(Box::new(NnrSpectrum { inner })), "out")
    })
}

/// # Safety
/// `s` must be null or a handle from [`nnr_spectrum_from_json`].
#[no_mangle]
pub unsafe extern "C" fn nnr_spectrum_free(s: *mut NnrSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical JSON for the spectrum.
///
/// # Safety
/// `s` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_spectrum_to_json(s: *const NnrSpectrum, out: *mut *mut c_char) -> NnrStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        put_string(out, json::to_pretty(&json::spectrum_to_json(&s.inner)))
    })
}

/// Number of eigenvalues counted with multiplicity.
///
/// # Safety
/// `s` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_spectrum_size(s: *const NnrSpectrum, out: *mut usize) -> NnrStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        put(out, s.inner.list().len(), "out")
    })
}

/// Number of Jordan forms the multiplicities allow.
///
/// # Safety
/// `s` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_spectrum_jcf_count(s: *const NnrSpectrum, out: *mut usize) -> NnrStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        put(out, jcf_enumerate(s.inner.list()).len(), "out")
    })
}

/// Runs the realizability test. `realizable` receives 1 or 0 and `reason`,
/// when not null, the verdict text.
///
/// # Safety
/// `s` must be a valid handle, `realizable` a valid pointer and `reason`
/// null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_spectrum_check(
    s: *const NnrSpectrum,
    realizable: *mut i32,
    reason: *mut *mut c_char,
) -> NnrStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        let verdict = ls_realizable(&s.inner);
        put(realizable, i32::from(verdict.is_realizable()), "realizable")?;
        if !reason.is_null() {
            put_string(reason, verdict.to_string())?;
        }
        Ok(())
    })
}

fn realize_into(spec: &Spectrum, j: &JordanForm, out: *mut *mut NnrCertificate) -> Result<(), Fail> {
    let inner = realize(spec, j)?;
    unsafe { put(out, Box::into_raw(Box::new(NnrCertificate { inner })), "out") }
}

/// Realizes the spectrum with the Jordan form at `jcf_index` in the
/// enumeration order.
///
/// # Safety
/// `s` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_realize(s: *const NnrSpectrum, jcf_index: usize, out: *mut *mut NnrCertificate) -> NnrStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        let forms = jcf_enumerate(s.inner.list());
        let j = forms
            .get(jcf_index)
            .ok_or_else(|| invalid(&format!("jcf index {jcf_index} out of range ({} forms)", forms.len())))?;
        realize_into(&s.inner, j, out)
    })
}

/// Realizes the spectrum with a Jordan form given as JSON.
///
/// # Safety
/// `s` must be a valid handle, `jcf` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_realize_jcf_json(
    s: *const NnrSpectrum,
    jcf: *const c_char,
    out: *mut *mut NnrCertificate,
) -> NnrStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        let j = json::jcf_from_json(&json::parse(read_str(jcf, "jcf")?)?)?;
        realize_into(&s.inner, &j, out)
    })
}

/// # Safety
/// `c` must be null or a handle from one of the realize functions.
#[no_mangle]
pub unsafe extern "C" fn nnr_certificate_free(c: *mut NnrCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_certificate_to_json(c: *const NnrCertificate, out: *mut *mut c_char) -> NnrStatus {
    guard(|| {
        let c = deref(c, "certificate")?;
        put_string(out, json::to_pretty(&json::certificate_to_json(&c.inner)))
    })
}

/// Order of the certified matrix.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_certificate_size(c: *const NnrCertificate, out: *mut usize) -> NnrStatus {
    guard(|| {
        let c = deref(c, "certificate")?;
        put(out, c.inner.matrix.rows(), "out")
    })
}

/// Entry `(row, col)` (0-based) as a rational string such as `"-3/4"`.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_certificate_entry(
    c: *const NnrCertificate,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> NnrStatus {
    guard(|| {
        let c = deref(c, "certificate")?;
        let n = c.inner.matrix.rows();
        if row >= n || col >= n {
            return Err(invalid(&format!("entry ({row}, {col}) outside a {n}x{n} matrix")));
        }
        put_string(out, nnreal::exact::format_rational(c.inner.matrix.get(row, col)))
    })
}

/// Recomputes every verdict of the certificate from its matrix.
///
/// # Safety
/// `c` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn nnr_certificate_reverify(c: *const NnrCertificate) -> NnrStatus {
    guard(|| {
        let c = deref(c, "certificate")?;
        if c.inner.reverify() {
            Ok(())
        } else {
            Err(Fail(NnrStatus::VerificationFailed, "VerificationFailed: certificate does not re-verify".into()))
        }
    })
}

/// Checks a certificate document (matrix plus claims). Returns `Ok` when
/// every claim holds and `VerificationFailed` otherwise; `report`, when not
/// null, receives the check as JSON in both cases.
///
/// # Safety
/// `text` must be a NUL-terminated string and `report` null or a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn nnr_verify_json(text: *const c_char, report: *mut *mut c_char) -> NnrStatus {
    guard(|| {
        let (m, claims) = json::certificate_claims(&json::parse(read_str(text, "text")?)?)?;
        let check = json::check_claims(&m, &claims);
        if !report.is_null() {
            put_string(report, json::to_pretty(&check.to_json()))?;
        }
        if check.ok() {
            Ok(())
        } else {
            Err(Fail(
                NnrStatus::VerificationFailed,
                format!("VerificationFailed: {} not confirmed", check.failed().join(", ")),
            ))
        }
    })
}
