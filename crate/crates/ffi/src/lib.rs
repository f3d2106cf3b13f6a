//! C ABI over `hyperseq`.
//!
//! Objects are opaque heap handles released with the matching `*_free`
//! function. Strings returned to the caller are owned by the caller and must
//! be released with [`hs_string_free`]. Every fallible call returns an
//! [`HsStatus`]; the message of the last failure on the calling thread is
//! available from [`hs_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperseq::cli::exit_code;
use hyperseq::error::Error;
use hyperseq::fps::{build_representation_with, verify, FpsOptions, SeriesRepresentation};
use hyperseq::guess::{guess_rational, GuessOptions};
use hyperseq::input::{parse_expression, parse_list};
use hyperseq::ratfun::RatFun;
use hyperseq::render::{from_json, render, Format, RenderOptions};

/// Status codes; the nonzero values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    Failure = 1,
    NoGuess = 2,
    NoBasis = 3,
    Parse = 4,
    CapExceeded = 5,
    NullArgument = 6,
}

/// Opaque rational function.
pub struct HsRatFun(RatFun);

/// Opaque series representation.
pub struct HsRepresentation(SeriesRepresentation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HsStatus {
    match exit_code(e) {
        2 => HsStatus::NoGuess,
        3 => HsStatus::NoBasis,
        4 => HsStatus::Parse,
        5 => HsStatus::CapExceeded,
        _ => HsStatus::Failure,
    }
}

/// Run `body`, recording errors and converting panics into `Failure`.
fn guarded(body: impl FnOnce() -> Result<(), (HsStatus, String)>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            HsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            HsStatus::Failure
        }
    }
}

fn lib_err(e: Error) -> (HsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_arg(name: &str) -> (HsStatus, String) {
    (HsStatus::NullArgument, format!("{name} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (HsStatus, String)> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (HsStatus::Parse, format!("{name} is not valid UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Parse a rational function expression such as `1/(1-x)`.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_ratfun_parse(expr: *const c_char, out: *mut *mut HsRatFun) -> HsStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let f = parse_expression(str_arg(expr, "expr")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsRatFun(f)));
        Ok(())
    })
}

/// Guess a rational generating function from a term list such as
/// `"1, 1, 2, 3, 5"`, with the default degree budget and `guard` held-back
/// terms.
///
/// # Safety
/// `terms` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_guess(
    terms: *const c_char,
    guard: usize,
    out: *mut *mut HsRatFun,
) -> HsStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let prefix = parse_list(str_arg(terms, "terms")?).map_err(lib_err)?;
        let opts = GuessOptions {
            guard_terms: guard,
            ..GuessOptions::for_length(prefix.len())
        };
        let f = guess_rational(&prefix, &opts).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsRatFun(f)));
        Ok(())
    })
}

/// Expression text of `f` in the variable `x`, or null on failure.
///
/// # Safety
/// `f` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn hs_ratfun_to_string(f: *const HsRatFun) -> *mut c_char {
    match f.as_ref() {
        Some(f) => to_c_string(f.0.to_expression("x")),
        None => {
            set_error("f is null");
            ptr::null_mut()
        }
    }
}

/// First `count` series coefficients, comma separated, or null on failure.
///
/// # Safety
/// `f` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn hs_ratfun_series(f: *const HsRatFun, count: usize) -> *mut c_char {
    let mut text = None;
    let status = guarded(|| {
        let f = f.as_ref().ok_or_else(|| null_arg("f"))?;
        let coeffs = f.0.series_coeffs(count).map_err(lib_err)?;
        let parts: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        text = Some(parts.join(","));
        Ok(())
    });
    match (status, text) {
        (HsStatus::Ok, Some(t)) => to_c_string(t),
        _ => ptr::null_mut(),
    }
}

/// # Safety
/// `f` must be a handle from this library or null; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_ratfun_free(f: *mut HsRatFun) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Build the representation of `f`. `m_max == 0` picks the default bound;
/// `depth` is the number of coefficients the fit must reproduce.
///
/// # Safety
/// `f` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_fps_build(
    f: *const HsRatFun,
    m_max: usize,
    depth: usize,
    out: *mut *mut HsRepresentation,
) -> HsStatus {
    guarded(|| {
        let f = f.as_ref().ok_or_else(|| null_arg("f"))?;
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let opts = FpsOptions {
            m_max: (m_max > 0).then_some(m_max),
            depth,
            ..FpsOptions::default()
        };
        let rep = build_representation_with(&f.0, &opts).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsRepresentation(rep)));
        Ok(())
    })
}

/// Render as `text`, `latex`, `json` or `formula` with variables `x` and
/// `n`. Null on failure.
///
/// # Safety
/// `rep` must be a handle from this library and `format` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hs_representation_render(
    rep: *const HsRepresentation,
    format: *const c_char,
) -> *mut c_char {
    let mut text = None;
    let status = guarded(|| {
        let rep = rep.as_ref().ok_or_else(|| null_arg("rep"))?;
        let format: Format = str_arg(format, "format")?.parse().map_err(lib_err)?;
        let opts = RenderOptions::new(format, "x", "n").map_err(lib_err)?;
        text = Some(render(&rep.0, &opts));
        Ok(())
    });
    match (status, text) {
        (HsStatus::Ok, Some(t)) => to_c_string(t),
        _ => ptr::null_mut(),
    }
}

/// Parse a JSON representation.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_representation_from_json(
    json: *const c_char,
    out: *mut *mut HsRepresentation,
) -> HsStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_arg("out"));
        }
        let rep = from_json(str_arg(json, "json")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsRepresentation(rep)));
        Ok(())
    })
}

/// Compare `count` coefficients. `all_match` receives 1 or 0; on a mismatch
/// `first_mismatch` receives its index.
///
/// # Safety
/// Handles must come from this library; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_verify(
    rep: *const HsRepresentation,
    f: *const HsRatFun,
    count: usize,
    all_match: *mut i32,
    first_mismatch: *mut usize,
) -> HsStatus {
    guarded(|| {
        let rep = rep.as_ref().ok_or_else(|| null_arg("rep"))?;
        let f = f.as_ref().ok_or_else(|| null_arg("f"))?;
        if all_match.is_null() || first_mismatch.is_null() {
            return Err(null_arg("output pointer"));
        }
        let report = verify(&rep.0, &f.0, count).map_err(lib_err)?;
        *all_match = i32::from(report.all_match);
        *first_mismatch = report.first_mismatch.unwrap_or(0);
        Ok(())
    })
}

/// # Safety
/// `rep` must be a handle from this library or null; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_representation_free(rep: *mut HsRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `s` must be a string returned by this library or null.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
