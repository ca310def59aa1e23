//! C ABI for the exact centraliser-invariant engine: opaque handles,
//! integer status codes, and JSON strings for structured results.
//!
//! Conventions:
//! - every function returns a [`CentinvStatus`] code; results go through
//!   out-parameters;
//! - strings returned through `char**` are heap-allocated and must be
//!   released with [`centinv_string_free`];
//! - on any non-zero status, [`centinv_last_error_message`] gives a
//!   thread-local human-readable description.

use centinv::jobs::{run_basis, run_envelope, run_index, run_invariants, run_verify, JobConfig};
use centinv::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CentinvStatus {
    Ok = 0,
    /// The computation ran but at least one check failed.
    CheckFailed = 1,
    /// Bad partition, case, field or flag.
    InvalidInput = 2,
    /// A resource cap, degree cap or arithmetic failure.
    ComputeError = 3,
    NullPointer = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn error_status(e: &Error) -> CentinvStatus {
    match e {
        Error::InvalidPartition(_)
        | Error::InvalidCase(_)
        | Error::NoValidInvolution(_)
        | Error::CharacteristicTwo
        | Error::Usage(_) => CentinvStatus::InvalidInput,
        _ => CentinvStatus::ComputeError,
    }
}

/// Last error message for this thread; valid until the next failing call.
#[no_mangle]
pub extern "C" fn centinv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `centinv_*` function and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn centinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, CentinvStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} is null"));
        return Err(CentinvStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        CentinvStatus::InvalidInput
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> CentinvStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return CentinvStatus::NullPointer;
    }
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CentinvStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte");
            CentinvStatus::ComputeError
        }
    }
}

fn guarded<Fn_: FnOnce() -> CentinvStatus>(f: Fn_) -> CentinvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            CentinvStatus::Panic
        }
    }
}

/// Opaque handle to a fixed `(λ, case)` centraliser.
pub struct CentinvCentralizer {
    cfg: JobConfig,
}

/// Create a centraliser handle for a partition text like "3,2,1" and a
/// case label in {gl, sp, so}.
///
/// # Safety
/// `lambda` and `case_` must be valid NUL-terminated strings; `out` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn centinv_centralizer_new(
    lambda: *const c_char,
    case_: *const c_char,
    out: *mut *mut CentinvCentralizer,
) -> CentinvStatus {
    guarded(|| {
        let lambda = match read_str(lambda, "lambda") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let case_ = match read_str(case_, "case") {
            Ok(s) => s,
            Err(st) => return st,
        };
        if out.is_null() {
            set_error("output pointer is null");
            return CentinvStatus::NullPointer;
        }
        match JobConfig::new(lambda, case_, "q") {
            Ok(cfg) => {
                *out = Box::into_raw(Box::new(CentinvCentralizer { cfg }));
                CentinvStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                error_status(&e)
            }
        }
    })
}

/// Release a centraliser handle.
///
/// # Safety
/// `handle` must come from [`centinv_centralizer_new`] and not be freed
/// twice.
#[no_mangle]
pub unsafe extern "C" fn centinv_centralizer_free(handle: *mut CentinvCentralizer) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the centraliser.
///
/// # Safety
/// `handle` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn centinv_centralizer_dim(
    handle: *const CentinvCentralizer,
    out: *mut usize,
) -> CentinvStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("null pointer");
            return CentinvStatus::NullPointer;
        }
        let cfg = &(*handle).cfg;
        *out = centinv::centralizer::dim_centralizer(&cfg.lambda);
        CentinvStatus::Ok
    })
}

/// Index of the case's coadjoint action (the generic stabiliser dimension).
///
/// # Safety
/// `handle` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn centinv_centralizer_index(
    handle: *const CentinvCentralizer,
    out: *mut i64,
) -> CentinvStatus {
    guarded(|| {
        if handle.is_null() || out.is_null() {
            set_error("null pointer");
            return CentinvStatus::NullPointer;
        }
        let cfg = &(*handle).cfg;
        match run_index(cfg) {
            Ok(report) => {
                let v = report.payload.as_ref().unwrap()["index"].as_u64().unwrap();
                *out = v as i64;
                if report.pass {
                    CentinvStatus::Ok
                } else {
                    set_error("index check failed");
                    CentinvStatus::CheckFailed
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                error_status(&e)
            }
        }
    })
}

/// JSON listing of the basis (and the spanning sets for sp/so).
///
/// # Safety
/// `handle` must be a live handle; `out_json` must be valid and the result
/// freed with [`centinv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn centinv_centralizer_basis_json(
    handle: *const CentinvCentralizer,
    out_json: *mut *mut c_char,
) -> CentinvStatus {
    guarded(|| {
        if handle.is_null() {
            set_error("null handle");
            return CentinvStatus::NullPointer;
        }
        match run_basis(&(*handle).cfg) {
            Ok(report) => write_string(out_json, report.body_json()),
            Err(e) => {
                set_error(&e.to_string());
                error_status(&e)
            }
        }
    })
}

unsafe fn job_from_parts(
    lambda: *const c_char,
    case_: *const c_char,
    field: *const c_char,
) -> Result<JobConfig, CentinvStatus> {
    let lambda = read_str(lambda, "lambda")?;
    let case_ = read_str(case_, "case")?;
    let field = read_str(field, "field")?;
    JobConfig::new(lambda, case_, field).map_err(|e| {
        set_error(&e.to_string());
        error_status(&e)
    })
}

/// Elementary invariants (all of them, or one when `r > 0`) as JSON.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out_json` must
/// be valid and the result freed with [`centinv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn centinv_invariants_json(
    lambda: *const c_char,
    case_: *const c_char,
    field: *const c_char,
    r: i64,
    out_json: *mut *mut c_char,
) -> CentinvStatus {
    guarded(|| {
        let mut cfg = match job_from_parts(lambda, case_, field) {
            Ok(c) => c,
            Err(st) => return st,
        };
        if r > 0 {
            cfg.r = Some(r as usize);
            if let Err(e) = cfg.validate() {
                set_error(&e.to_string());
                return error_status(&e);
            }
        }
        match run_invariants(&cfg) {
            Ok(report) => write_string(out_json, report.body_json()),
            Err(e) => {
                set_error(&e.to_string());
                error_status(&e)
            }
        }
    })
}

/// Run a verification suite; the report JSON is written even when checks
/// fail (status `CheckFailed`).
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out_json` must
/// be valid and the result freed with [`centinv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn centinv_verify_json(
    lambda: *const c_char,
    case_: *const c_char,
    field: *const c_char,
    suite: *const c_char,
    degree_cap: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> CentinvStatus {
    guarded(|| {
        let mut cfg = match job_from_parts(lambda, case_, field) {
            Ok(c) => c,
            Err(st) => return st,
        };
        cfg.suite = match read_str(suite, "suite") {
            Ok(s) => Some(s.to_string()),
            Err(st) => return st,
        };
        if degree_cap > 0 {
            cfg.degree_cap = Some(degree_cap as usize);
        }
        cfg.seed = Some(seed);
        match run_verify(&cfg) {
            Ok(report) => {
                let pass = report.pass;
                let st = write_string(out_json, report.body_json());
                if !matches!(st, CentinvStatus::Ok) {
                    return st;
                }
                if pass {
                    CentinvStatus::Ok
                } else {
                    set_error("verification suite reported failures");
                    CentinvStatus::CheckFailed
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                error_status(&e)
            }
        }
    })
}

/// Enveloping-algebra checks (`milner`, `pcentre`, `grbeta`, `bound`).
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out_json` must
/// be valid and the result freed with [`centinv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn centinv_envelope_json(
    lambda: *const c_char,
    case_: *const c_char,
    field: *const c_char,
    check: *const c_char,
    degree_cap: u32,
    out_json: *mut *mut c_char,
) -> CentinvStatus {
    guarded(|| {
        let mut cfg = match job_from_parts(lambda, case_, field) {
            Ok(c) => c,
            Err(st) => return st,
        };
        cfg.suite = match read_str(check, "check") {
            Ok(s) => Some(s.to_string()),
            Err(st) => return st,
        };
        if degree_cap > 0 {
            cfg.degree_cap = Some(degree_cap as usize);
        }
        match run_envelope(&cfg) {
            Ok(report) => {
                let pass = report.pass;
                let st = write_string(out_json, report.body_json());
                if !matches!(st, CentinvStatus::Ok) {
                    return st;
                }
                if pass {
                    CentinvStatus::Ok
                } else {
                    set_error("envelope check reported failures");
                    CentinvStatus::CheckFailed
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                error_status(&e)
            }
        }
    })
}
