//! C ABI for carkwork.
//!
//! Forms and group elements cross the boundary as opaque handles created by
//! `cw_*_new` / `cw_*_parse` and released with the matching `cw_*_free`.
//! Every fallible function returns a [`CwStatus`] and writes results through
//! out-pointers. On failure the message and the machine-readable code of the
//! last error on the calling thread are available from
//! [`cw_last_error_message`] and [`cw_last_error_code`].
//!
//! Integers that may exceed 64 bits are exchanged as decimal strings. Strings
//! returned through out-pointers are owned by the caller and must be released
//! with [`cw_string_free`].
//!
//! [`cw_request`] exposes every CLI and HTTP operation with the same JSON
//! bodies.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use carkwork::error::Error;
use carkwork::interface::{self, ApiError, ErrorKind, Params};
use carkwork::modular_group::{ElementKind, GroupElement};
use carkwork::quadratic_forms::{form_of_element, FormKind, QuadForm};
use carkwork::reduction::{cark_reduce_path, gauss_reduce};
use carkwork::representation::{automorph, solve_form};
use num_bigint::BigInt;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A string argument could not be parsed, or a request was malformed.
    InvalidArgument = 3,
    /// The input lies outside the operation's domain, e.g. a definite form
    /// passed to an operation on indefinite forms.
    Domain = 4,
    /// An internal consistency check failed.
    Internal = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwFormKind {
    Degenerate = 0,
    PositiveDefinite = 1,
    NegativeDefinite = 2,
    Indefinite = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwElementKind {
    Elliptic = 0,
    Parabolic = 1,
    Hyperbolic = 2,
}

/// Opaque binary quadratic form.
pub struct CwForm(QuadForm);

/// Opaque element of the modular group.
pub struct CwElement(GroupElement);

struct Failure {
    status: CwStatus,
    code: String,
    message: String,
}

impl Failure {
    fn new(status: CwStatus, code: &str, message: impl Into<String>) -> Self {
        Failure {
            status,
            code: code.into(),
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Failure::new(
            CwStatus::NullPointer,
            "null_pointer",
            format!("{what} is null"),
        )
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Internal(_) => CwStatus::Internal,
            _ => CwStatus::Domain,
        };
        Failure::new(status, e.code(), e.to_string())
    }
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        let status = match e.kind {
            ErrorKind::Usage => CwStatus::InvalidArgument,
            ErrorKind::Domain if e.code == "internal" => CwStatus::Internal,
            ErrorKind::Domain => CwStatus::Domain,
        };
        Failure::new(status, &e.code, e.message)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<(CString, CString)>> = const { RefCell::new(None) };
}

fn to_cstring(s: &str) -> CString {
    CString::new(s.replace('\0', " ")).expect("interior nul bytes removed")
}

fn record(f: Option<&Failure>) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = f.map(|f| (to_cstring(&f.code), to_cstring(&f.message)));
    });
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            record(None);
            CwStatus::Ok
        }
        Ok(Err(f)) => {
            record(Some(&f));
            f.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            let f = Failure::new(CwStatus::Panic, "panic", msg);
            record(Some(&f));
            f.status
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::new(
            CwStatus::InvalidUtf8,
            "invalid_utf8",
            format!("{what} is not UTF-8"),
        )
    })
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: &str) -> Result<(), Failure> {
    put(out, to_cstring(s).into_raw(), "out")
}

unsafe fn put_form(out: *mut *mut CwForm, f: QuadForm) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    out.write(Box::into_raw(Box::new(CwForm(f))));
    Ok(())
}

unsafe fn put_element(out: *mut *mut CwElement, m: GroupElement) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    out.write(Box::into_raw(Box::new(CwElement(m))));
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL after a success.
/// The pointer stays valid until the next call into the library on this
/// thread.
#[no_mangle]
pub extern "C" fn cw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |(_, msg)| msg.as_ptr())
    })
}

/// Stable code of the last failure on this thread (for example
/// `not_indefinite`), or NULL after a success. Same lifetime as
/// [`cw_last_error_message`].
#[no_mangle]
pub extern "C" fn cw_last_error_code() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |(code, _)| code.as_ptr())
    })
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cw_form_new(a: i64, b: i64, c: i64, out: *mut *mut CwForm) -> CwStatus {
    guard(|| put_form(out, QuadForm::from_i64(a, b, c)))
}

/// Parses `a,b,c` with arbitrary-size decimal coefficients.
#[no_mangle]
pub unsafe extern "C" fn cw_form_parse(text: *const c_char, out: *mut *mut CwForm) -> CwStatus {
    guard(|| {
        let f = interface::parse_form(read_str(text, "text")?)?;
        put_form(out, f)
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_form_free(f: *mut CwForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes `(a,b,c)`.
#[no_mangle]
pub unsafe extern "C" fn cw_form_to_string(f: *const CwForm, out: *mut *mut c_char) -> CwStatus {
    guard(|| put_string(out, &borrow(f, "form")?.0.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn cw_form_discriminant(f: *const CwForm, out: *mut *mut c_char) -> CwStatus {
    guard(|| put_string(out, &borrow(f, "form")?.0.discriminant().to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn cw_form_kind(f: *const CwForm, out: *mut CwFormKind) -> CwStatus {
    guard(|| {
        let kind = match borrow(f, "form")?.0.classify() {
            FormKind::Degenerate => CwFormKind::Degenerate,
            FormKind::PositiveDefinite => CwFormKind::PositiveDefinite,
            FormKind::NegativeDefinite => CwFormKind::NegativeDefinite,
            FormKind::Indefinite => CwFormKind::Indefinite,
        };
        put(out, kind, "out")
    })
}

/// `f(x, y)` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn cw_form_evaluate(
    f: *const CwForm,
    x: i64,
    y: i64,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let v = borrow(f, "form")?
            .0
            .evaluate(&BigInt::from(x), &BigInt::from(y));
        put_string(out, &v.to_string())
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_form_is_on_spine(f: *const CwForm, out: *mut bool) -> CwStatus {
    guard(|| {
        let on = borrow(f, "form")?.0.is_on_spine()?;
        put(out, on, "out")
    })
}

/// The form `f . m`, i.e. `f(m (x, y))`.
#[no_mangle]
pub unsafe extern "C" fn cw_form_act(
    f: *const CwForm,
    m: *const CwElement,
    out: *mut *mut CwForm,
) -> CwStatus {
    guard(|| {
        let g = borrow(f, "form")?.0.act(&borrow(m, "element")?.0);
        put_form(out, g)
    })
}

/// Gauss reduced form equivalent to an indefinite form.
#[no_mangle]
pub unsafe extern "C" fn cw_form_gauss_reduce(f: *const CwForm, out: *mut *mut CwForm) -> CwStatus {
    guard(|| put_form(out, gauss_reduce(&borrow(f, "form")?.0)?.end))
}

/// First spine form reached from an indefinite form.
#[no_mangle]
pub unsafe extern "C" fn cw_form_spine_entry(f: *const CwForm, out: *mut *mut CwForm) -> CwStatus {
    guard(|| put_form(out, cark_reduce_path(&borrow(f, "form")?.0)?.end))
}

/// A generator of the stabilizer of an indefinite form.
#[no_mangle]
pub unsafe extern "C" fn cw_form_automorph(f: *const CwForm, out: *mut *mut CwElement) -> CwStatus {
    guard(|| put_element(out, automorph(&borrow(f, "form")?.0)?))
}

/// Solves `f(x, y) = n` for an indefinite form, `n` given in decimal.
/// `found` is set to false when there is no solution, in which case `x_out`
/// and `y_out` are set to NULL.
#[no_mangle]
pub unsafe extern "C" fn cw_form_solve(
    f: *const CwForm,
    n: *const c_char,
    found: *mut bool,
    x_out: *mut *mut c_char,
    y_out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let form = &borrow(f, "form")?.0;
        let text = read_str(n, "n")?;
        let n: BigInt = text.trim().parse().map_err(|_| {
            Failure::new(
                CwStatus::InvalidArgument,
                "usage",
                format!("bad integer {text:?}"),
            )
        })?;
        if found.is_null() || x_out.is_null() || y_out.is_null() {
            return Err(Failure::null("out"));
        }
        match solve_form(form, &n)? {
            Some(s) => {
                put(found, true, "found")?;
                put_string(x_out, &s.x.to_string())?;
                put_string(y_out, &s.y.to_string())
            }
            None => {
                put(found, false, "found")?;
                put(x_out, ptr::null_mut(), "x_out")?;
                put(y_out, ptr::null_mut(), "y_out")
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_element_new(
    p: i64,
    q: i64,
    r: i64,
    s: i64,
    out: *mut *mut CwElement,
) -> CwStatus {
    guard(|| put_element(out, GroupElement::from_i64(p, q, r, s)?))
}

/// Parses `p,q,r,s` or a word over `S`, `L` such as `LSLLS`.
#[no_mangle]
pub unsafe extern "C" fn cw_element_parse(
    text: *const c_char,
    out: *mut *mut CwElement,
) -> CwStatus {
    guard(|| {
        let m = interface::parse_element(read_str(text, "text")?)?;
        put_element(out, m)
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_element_free(m: *mut CwElement) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Writes `(p q; r s)` in sign-normalised form.
#[no_mangle]
pub unsafe extern "C" fn cw_element_to_string(
    m: *const CwElement,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| put_string(out, &borrow(m, "element")?.0.to_string()))
}

/// Normal-form word, `LL` standing for `L^2`. The identity is the empty
/// string.
#[no_mangle]
pub unsafe extern "C" fn cw_element_to_word(
    m: *const CwElement,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| put_string(out, &borrow(m, "element")?.0.to_word().to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn cw_element_kind(m: *const CwElement, out: *mut CwElementKind) -> CwStatus {
    guard(|| {
        let kind = match borrow(m, "element")?.0.classify() {
            ElementKind::Elliptic => CwElementKind::Elliptic,
            ElementKind::Parabolic => CwElementKind::Parabolic,
            ElementKind::Hyperbolic => CwElementKind::Hyperbolic,
        };
        put(out, kind, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_element_multiply(
    a: *const CwElement,
    b: *const CwElement,
    out: *mut *mut CwElement,
) -> CwStatus {
    guard(|| {
        let m = borrow(a, "a")?.0.multiply(&borrow(b, "b")?.0);
        put_element(out, m)
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_element_inverse(
    m: *const CwElement,
    out: *mut *mut CwElement,
) -> CwStatus {
    guard(|| put_element(out, borrow(m, "element")?.0.inverse()))
}

/// Primitive form whose stabilizer contains the element.
#[no_mangle]
pub unsafe extern "C" fn cw_element_form(m: *const CwElement, out: *mut *mut CwForm) -> CwStatus {
    guard(|| put_form(out, form_of_element(&borrow(m, "element")?.0)?))
}

/// Runs a named operation (`reduce`, `spine`, `solve`, `sunburst`, ...) with
/// parameters given as a JSON object, e.g. `{"form":"1,1,-1"}`. Values may
/// be strings or numbers. `params_json` may be NULL for no parameters.
///
/// On `CW_STATUS_OK`, `DOMAIN` and `INVALID_ARGUMENT` the response body is
/// written to `out`: the result, or `{"code":...,"message":...}`. The bytes
/// match what the CLI prints for the same request.
#[no_mangle]
pub unsafe extern "C" fn cw_request(
    op: *const c_char,
    params_json: *const c_char,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let op = read_str(op, "op")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let params = if params_json.is_null() {
            Params::new()
        } else {
            parse_params(read_str(params_json, "params_json")?)?
        };
        let (outcome, body) = interface::respond(op, &params);
        put_string(out, &body)?;
        outcome.map_err(Failure::from)
    })
}

fn parse_params(text: &str) -> Result<Params, Failure> {
    let bad = |m: String| Failure::new(CwStatus::InvalidArgument, "usage", m);
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| bad(format!("params are not JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| bad("params must be a JSON object".into()))?;
    obj.iter()
        .map(|(k, v)| {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(bad(format!("parameter {k} has unsupported value {other}"))),
            };
            Ok((k.clone(), s))
        })
        .collect()
}
