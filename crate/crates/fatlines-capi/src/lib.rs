//! C bindings over the core crate. Configurations travel as opaque handles,
//! scalar invariants come back through out-pointers, and structured results
//! arrive as heap JSON strings released with fl_string_free. Every entry
//! point returns an FlStatus; after a failure, fl_last_error holds a message
//! for the calling thread until its next call into this library.

// Pointer contracts live in the per-function docs, which cbindgen copies into
// the header; a separate Safety section would duplicate them there.
#![allow(clippy::missing_safety_doc)]

use fatlines::classify::{classify, default_tmax, AcmVerdict, Structure};
use fatlines::configgen::{generate, parse_config, serialize_config, Family, GenSpec};
use fatlines::exactalg::FieldSpec;
use fatlines::symbolic::{alpha, hilbert, type_of, Ambient, Configuration};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes, aligned with the CLI exit convention where the two overlap.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlStatus {
    /// Success.
    FlOk = 0,
    /// Rejected input: bad JSON, unknown family, invalid field token.
    FlInvalidInput = 2,
    /// A computation gave up (retry budget or search bound exhausted).
    FlComputation = 3,
    /// I/O failure.
    FlIo = 5,
    /// A required pointer argument was null.
    FlNullPointer = 6,
    /// An internal panic was caught at the boundary.
    FlPanic = 7,
}

/// Opaque configuration handle. Create with fl_config_parse or
/// fl_config_generate; release with fl_config_free.
pub struct FlConfig {
    inner: Configuration,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let text =
        CString::new(msg).unwrap_or_else(|_| CString::new("error text held a NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn fail(e: fatlines::Error) -> FlStatus {
    let status = match e.exit_code() {
        2 => FlStatus::FlInvalidInput,
        5 => FlStatus::FlIo,
        _ => FlStatus::FlComputation,
    };
    set_error(e.to_string());
    status
}

fn guarded(f: impl FnOnce() -> FlStatus) -> FlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "no message".into());
            set_error(format!("internal panic: {msg}"));
            FlStatus::FlPanic
        }
    }
}

fn null_arg(name: &str) -> FlStatus {
    set_error(format!("{name} must not be null"));
    FlStatus::FlNullPointer
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, FlStatus> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        FlStatus::FlInvalidInput
    })
}

unsafe fn config_ref<'a>(p: *const FlConfig) -> Result<&'a Configuration, FlStatus> {
    p.as_ref().map(|c| &c.inner).ok_or_else(|| null_arg("config"))
}

unsafe fn write_string(s: String, out: *mut *mut c_char) -> FlStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            FlStatus::FlOk
        }
        Err(_) => {
            set_error("result contained a NUL byte".into());
            FlStatus::FlComputation
        }
    }
}

/// Library version as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn fl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the calling thread's most recent failure, or null. The
/// pointer stays valid until this thread's next call into the library.
#[no_mangle]
pub extern "C" fn fl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Parses a configuration document (the same JSON schema the CLI reads and
/// writes) into a fresh handle.
#[no_mangle]
pub unsafe extern "C" fn fl_config_parse(
    json: *const c_char,
    out: *mut *mut FlConfig,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let text = match read_str(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_config(text) {
            Ok(cfg) => {
                *out = Box::into_raw(Box::new(FlConfig { inner: cfg }));
                FlStatus::FlOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Generates a seeded family configuration. `family` takes the CLI names
/// (star-points, pseudostar, cone, coplanar, skew, fig2, collinear, random);
/// `param` is the size where the family needs one and negative otherwise.
/// `field` is "Q" or "GFP:<p>", with null meaning "Q".
#[no_mangle]
pub unsafe extern "C" fn fl_config_generate(
    family: *const c_char,
    param: i64,
    seed: u64,
    field: *const c_char,
    out: *mut *mut FlConfig,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let name = match read_str(family, "family") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let field = if field.is_null() {
            FieldSpec::Q
        } else {
            match read_str(field, "field").map(FieldSpec::parse_token) {
                Ok(Ok(f)) => f,
                Ok(Err(e)) => return fail(e),
                Err(s) => return s,
            }
        };
        let size = if param < 0 { None } else { Some(param as usize) };
        let spec = match Family::named(name, size) {
            Ok(fam) => GenSpec {
                family: fam,
                seed,
                field,
            },
            Err(e) => return fail(e),
        };
        match generate(&spec) {
            Ok(cfg) => {
                *out = Box::into_raw(Box::new(FlConfig { inner: cfg }));
                FlStatus::FlOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Serializes the handle back to its canonical JSON document.
#[no_mangle]
pub unsafe extern "C" fn fl_config_to_json(
    config: *const FlConfig,
    out: *mut *mut c_char,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match config_ref(config) {
            Ok(cfg) => write_string(serialize_config(cfg), out),
            Err(s) => s,
        }
    })
}

/// Number of components (points or lines) in the configuration.
#[no_mangle]
pub unsafe extern "C" fn fl_config_component_count(
    config: *const FlConfig,
    out: *mut usize,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match config_ref(config) {
            Ok(cfg) => {
                *out = cfg.components().len();
                FlStatus::FlOk
            }
            Err(s) => s,
        }
    })
}

/// Least degree of a nonzero form in the m-th symbolic power (m >= 1).
#[no_mangle]
pub unsafe extern "C" fn fl_alpha(
    config: *const FlConfig,
    m: usize,
    out: *mut usize,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        if m < 1 {
            set_error("m must be at least 1".into());
            return FlStatus::FlInvalidInput;
        }
        match config_ref(config) {
            Ok(cfg) => match alpha(cfg, m) {
                Ok((a, _witness)) => {
                    *out = a;
                    FlStatus::FlOk
                }
                Err(e) => fail(e),
            },
            Err(s) => s,
        }
    })
}

/// Hilbert function of the m-th symbolic power's quotient at degree t.
#[no_mangle]
pub unsafe extern "C" fn fl_hilbert(
    config: *const FlConfig,
    m: usize,
    t: usize,
    out: *mut usize,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        if m < 1 {
            set_error("m must be at least 1".into());
            return FlStatus::FlInvalidInput;
        }
        match config_ref(config) {
            Ok(cfg) => {
                *out = hilbert(cfg, m, t);
                FlStatus::FlOk
            }
            Err(s) => s,
        }
    })
}

/// Alpha of the first and second symbolic powers.
#[no_mangle]
pub unsafe extern "C" fn fl_type(
    config: *const FlConfig,
    out_alpha1: *mut usize,
    out_alpha2: *mut usize,
) -> FlStatus {
    guarded(|| {
        if out_alpha1.is_null() || out_alpha2.is_null() {
            return null_arg("out_alpha1/out_alpha2");
        }
        match config_ref(config) {
            Ok(cfg) => match type_of(cfg) {
                Ok(report) => {
                    *out_alpha1 = report.alpha1;
                    *out_alpha2 = report.alpha2;
                    FlStatus::FlOk
                }
                Err(e) => fail(e),
            },
            Err(s) => s,
        }
    })
}

/// Classifies a P3 line configuration. tmax of 0 means the default bound
/// (component count plus 2). The result is a JSON summary with keys alpha1,
/// alpha2, t, structure, acm_verdict, theorem_consistent.
#[no_mangle]
pub unsafe extern "C" fn fl_classify_json(
    config: *const FlConfig,
    tmax: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> FlStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let cfg = match config_ref(config) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if cfg.ambient() != Ambient::P3 {
            set_error("classification needs a P3 line configuration".into());
            return FlStatus::FlInvalidInput;
        }
        let tmax = if tmax == 0 { default_tmax(cfg) } else { tmax };
        match classify(cfg, tmax, seed) {
            Ok(report) => {
                let structure = match report.structure {
                    Structure::Coplanar(_) => "Coplanar",
                    Structure::Pseudostar(_) => "Pseudostar",
                    Structure::Other => "Other",
                };
                let verdict = match report.acm.verdict {
                    AcmVerdict::ConsistentUpTo(t) => format!("ConsistentUpTo({t})"),
                    AcmVerdict::FailsAt(t) => format!("FailsAt({t})"),
                };
                let json = format!(
                    "{{\"alpha1\":{},\"alpha2\":{},\"t\":{},\"structure\":\"{structure}\",\"acm_verdict\":\"{verdict}\",\"theorem_consistent\":{}}}",
                    report.type_report.alpha1,
                    report.type_report.alpha2,
                    report.type_report.t,
                    report.theorem_consistent,
                );
                write_string(json, out)
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a configuration handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_config_free(config: *mut FlConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}
