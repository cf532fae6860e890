//! C bindings. Objects cross the boundary as opaque handles that the caller
//! frees with the matching `*_free` function; strings returned to C are
//! owned by the caller and released with `qk_string_free`. Every fallible
//! call returns a [`QkStatus`] and leaves a message retrievable with
//! `qk_last_error_message` on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quiver_koszul::algebra::{quadratic_dual, QuadraticPresentation};
use quiver_koszul::analysis::{classify, ClassificationReport, ClassifyOptions, Verdict, VerdictStatus};
use quiver_koszul::cli::{self, CliError, Command, Format, InputDocument, Overrides};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    AnalysisError = 5,
    UnknownCommand = 6,
    Panic = 7,
}

/// A verdict as seen from C.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QkVerdict {
    Yes = 0,
    No = 1,
    Undetermined = 2,
}

/// A parsed quadratic presentation.
pub struct QkPresentation(QuadraticPresentation);

/// The result of a classification run.
pub struct QkClassification(ClassificationReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: QkStatus, msg: impl AsRef<str>) -> QkStatus {
    set_error(msg.as_ref());
    status
}

fn status_of(e: &CliError) -> QkStatus {
    match e {
        CliError::Parse { .. } => QkStatus::ParseError,
        CliError::Invalid { .. } | CliError::Io { .. } => QkStatus::InvalidInput,
        CliError::Usage(_) => QkStatus::UnknownCommand,
        CliError::Analysis(_) => QkStatus::AnalysisError,
    }
}

/// Runs `f`, turning panics into [`QkStatus::Panic`] and clearing the error
/// message on success.
fn guard(f: impl FnOnce() -> Result<(), (QkStatus, String)>) -> QkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QkStatus::Ok
        }
        Ok(Err((s, m))) => fail(s, m),
        Err(_) => fail(QkStatus::Panic, "internal panic"),
    }
}

unsafe fn input_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QkStatus, String)> {
    if p.is_null() {
        return Err((QkStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn cli_err(e: CliError) -> (QkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_out(what: &str) -> (QkStatus, String) {
    (QkStatus::NullArgument, format!("{what} is null"))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON input document into a presentation handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_from_json(json: *const c_char, out: *mut *mut QkPresentation) -> QkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let text = input_str(json, "json")?;
        let p = InputDocument::parse(text)
            .and_then(|d| d.presentation())
            .map_err(cli_err)?;
        *out = Box::into_raw(Box::new(QkPresentation(p)));
        Ok(())
    })
}

/// Frees a presentation handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_free(p: *mut QkPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_vertex_count(p: *const QkPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.quiver().vertex_count())
}

/// Number of arrows, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_arrow_count(p: *const QkPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.quiver().arrows().len())
}

/// Number of (independent, corner-split) relations, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_relation_count(p: *const QkPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.relations().len())
}

/// The quadratic dual as a new handle.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_dual(p: *const QkPresentation, out: *mut *mut QkPresentation) -> QkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let p = p.as_ref().ok_or_else(|| null_out("presentation"))?;
        *out = Box::into_raw(Box::new(QkPresentation(quadratic_dual(&p.0))));
        Ok(())
    })
}

/// The presentation as a JSON input document; free with `qk_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_presentation_to_json(p: *const QkPresentation, out: *mut *mut c_char) -> QkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let p = p.as_ref().ok_or_else(|| null_out("presentation"))?;
        *out = to_c_string(InputDocument::of(&p.0).to_json());
        Ok(())
    })
}

/// Classifies a presentation. `max_degree` and `max_syzygy` of 0 select
/// the defaults; no oracle cross-check is run.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_classify(
    p: *const QkPresentation,
    max_degree: usize,
    max_syzygy: usize,
    out: *mut *mut QkClassification,
) -> QkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let p = p.as_ref().ok_or_else(|| null_out("presentation"))?;
        let defaults = ClassifyOptions::default();
        let opts = ClassifyOptions {
            max_degree: if max_degree == 0 { cli::DEFAULT_MAX_DEGREE } else { max_degree },
            max_syzygy: if max_syzygy == 0 { defaults.max_syzygy } else { max_syzygy },
            oracle: None,
            ..defaults
        };
        let rep = classify(&p.0, &opts).map_err(|e| (QkStatus::AnalysisError, e.to_string()))?;
        *out = Box::into_raw(Box::new(QkClassification(rep)));
        Ok(())
    })
}

/// Frees a classification handle. Null is ignored.
///
/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_classification_free(r: *mut QkClassification) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

fn verdict(v: &Verdict) -> QkVerdict {
    match v.status {
        VerdictStatus::YesUpToBound => QkVerdict::Yes,
        VerdictStatus::NoWithWitness => QkVerdict::No,
        VerdictStatus::Undetermined => QkVerdict::Undetermined,
    }
}

/// Piecewise-domain verdict; `Undetermined` for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_classification_piecewise_domain(r: *const QkClassification) -> QkVerdict {
    r.as_ref().map_or(QkVerdict::Undetermined, |r| verdict(&r.0.piecewise_domain))
}

/// Primeness verdict; `Undetermined` for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_classification_prime(r: *const QkClassification) -> QkVerdict {
    r.as_ref().map_or(QkVerdict::Undetermined, |r| verdict(&r.0.prime))
}

/// Domain verdict; `Undetermined` for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_classification_domain(r: *const QkClassification) -> QkVerdict {
    r.as_ref().map_or(QkVerdict::Undetermined, |r| verdict(&r.0.domain))
}

/// The full report as JSON; free with `qk_string_free`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_classification_to_json(r: *const QkClassification, out: *mut *mut c_char) -> QkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        let r = r.as_ref().ok_or_else(|| null_out("classification"))?;
        let json = serde_json::to_string_pretty(&r.0).map_err(|e| (QkStatus::AnalysisError, e.to_string()))?;
        *out = to_c_string(json);
        Ok(())
    })
}

/// Runs a command-line command (`"classify"`, `"dual"`, ...) on a JSON
/// input document with default options. On success `*out` holds the
/// rendered report (JSON when `json` is nonzero) and `*exit_code` the
/// command-line exit status.
///
/// # Safety
/// `command` and `input` must be nul-terminated strings; `out` and
/// `exit_code` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qk_run_command(
    command: *const c_char,
    input: *const c_char,
    json: c_int,
    out: *mut *mut c_char,
    exit_code: *mut c_int,
) -> QkStatus {
    guard(|| {
        if out.is_null() || exit_code.is_null() {
            return Err(null_out("out"));
        }
        *out = ptr::null_mut();
        *exit_code = cli::EXIT_ERROR;
        let cmd: Command = input_str(command, "command")?.parse().map_err(cli_err)?;
        let text = input_str(input, "input")?;
        let format = if json != 0 { Format::Json } else { Format::Text };
        let o = cli::run(cmd, text, format, &Overrides::default()).map_err(cli_err)?;
        *out = to_c_string(o.output);
        *exit_code = o.exit_code;
        Ok(())
    })
}
