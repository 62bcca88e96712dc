//! C ABI surface for the awarecon library.
//!
//! Conventions:
//! - Every function returns an [`AwStatus`]; results come back through out
//!   pointers.
//! - Scenario handles are opaque; free them with [`aw_scenario_free`].
//! - Strings returned through `char **` are NUL-terminated UTF-8 owned by the
//!   library; release them with [`aw_string_free`].
//! - On any non-OK status, [`aw_last_error_message`] describes the failure.
//!   The pointer stays valid until the next library call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

use awarecon::{
    awareness, knowledge_stock, parse_scenario, run, Command, Error, KnowledgeParams,
    OutputFormat, Scenario,
};

/// Status codes shared with C callers. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AwStatus {
    AwOk = 0,
    AwNullPointer = 1,
    AwInvalidArgument = 2,
    AwParseError = 3,
    AwSolverError = 4,
    AwUtf8Error = 5,
}

/// Opaque scenario handle.
pub struct AwScenario {
    inner: Scenario,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn status_of(err: &Error) -> AwStatus {
    match err.exit_code() {
        2 => AwStatus::AwSolverError,
        _ => AwStatus::AwInvalidArgument,
    }
}

fn fail(err: &Error) -> AwStatus {
    set_error(&err.to_string());
    status_of(err)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, AwStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(AwStatus::AwNullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        AwStatus::AwUtf8Error
    })
}

/// Message for the most recent failure on this thread. Never null.
#[no_mangle]
pub extern "C" fn aw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Awareness from information share `i` in [0, 1] and energy use `e >= 0`.
#[no_mangle]
pub extern "C" fn aw_awareness_info(i: f64, e: f64, out: *mut f64) -> AwStatus {
    if out.is_null() {
        set_error("null out pointer");
        return AwStatus::AwNullPointer;
    }
    match awareness::awareness_info(i, e) {
        Ok(v) => {
            unsafe { *out = v };
            AwStatus::AwOk
        }
        Err(e) => fail(&e),
    }
}

/// Information share past which more information lowers awareness at energy `e`.
#[no_mangle]
pub extern "C" fn aw_overload_threshold(e: f64, out: *mut f64) -> AwStatus {
    if out.is_null() {
        set_error("null out pointer");
        return AwStatus::AwNullPointer;
    }
    match awareness::overload_threshold(e) {
        Ok(v) => {
            unsafe { *out = v };
            AwStatus::AwOk
        }
        Err(e) => fail(&e),
    }
}

/// Knowledge produced from information share `i` and processing hours, with
/// diminishing-returns exponent `b` in (0, 1).
#[no_mangle]
pub extern "C" fn aw_knowledge_stock(
    i: f64,
    processing_hours: f64,
    b: f64,
    out: *mut f64,
) -> AwStatus {
    if out.is_null() {
        set_error("null out pointer");
        return AwStatus::AwNullPointer;
    }
    let params = KnowledgeParams { b };
    match knowledge_stock(i, processing_hours, &params) {
        Ok(v) => {
            unsafe { *out = v };
            AwStatus::AwOk
        }
        Err(e) => fail(&e),
    }
}

/// Parse scenario text into a handle. The caller owns the handle.
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_scenario_parse(
    text: *const c_char,
    out: *mut *mut AwScenario,
) -> AwStatus {
    if out.is_null() {
        set_error("null out pointer");
        return AwStatus::AwNullPointer;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_scenario(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(AwScenario { inner }));
            AwStatus::AwOk
        }
        Err(e) => {
            set_error(&e.to_string());
            AwStatus::AwParseError
        }
    }
}

/// Scenario with every parameter at its default.
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_scenario_default(out: *mut *mut AwScenario) -> AwStatus {
    if out.is_null() {
        set_error("null out pointer");
        return AwStatus::AwNullPointer;
    }
    *out = Box::into_raw(Box::new(AwScenario { inner: Scenario::default() }));
    AwStatus::AwOk
}

/// Release a scenario handle. Null is a no-op.
/// # Safety
/// `scenario` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn aw_scenario_free(scenario: *mut AwScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Run `command` ("solve", "nash", "efficient", "figure1", "sweep",
/// "extended", "trajectory") against the scenario and return the rendered
/// output ("csv" or "svg") through `out`.
/// # Safety
/// `scenario` must be a live handle; `command` and `format` must be valid
/// NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_run(
    scenario: *const AwScenario,
    command: *const c_char,
    format: *const c_char,
    out: *mut *mut c_char,
) -> AwStatus {
    if scenario.is_null() || out.is_null() {
        set_error("null scenario or out pointer");
        return AwStatus::AwNullPointer;
    }
    let command = match read_str(command) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let format = match read_str(format) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let command = match Command::from_str(command) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let format = match OutputFormat::from_str(format) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    match run(command, &(*scenario).inner, format) {
        Ok(text) => {
            let text = CString::new(text.replace('\0', " ")).unwrap();
            *out = text.into_raw();
            AwStatus::AwOk
        }
        Err(e) => fail(&e),
    }
}

/// Release a string returned by this library. Null is a no-op.
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn aw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
