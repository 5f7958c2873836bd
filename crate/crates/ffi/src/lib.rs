//! C ABI for the engine: opaque handle, status codes, UTF-8 JSON strings.
//!
//! Every entry point is panic-safe; failures set a per-engine error message
//! readable through [`dnd_last_error`]. Strings returned through `out`
//! parameters are owned by the caller and must be released with
//! [`dnd_string_free`].

use deltand::arquiver;
use deltand::cli::{parse_complex, parse_form, parse_walks, CliFailure};
use deltand::delta::{self, DeltaEngine, DeltaError, Indec};
use deltand::komplex::oracle::OraclePolicy;
use deltand::komplex::ProjComplex;
use deltand::{F32003, Rat, Scalar};
use libc::c_char;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Mutex;

/// Result codes of every FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DndStatus {
    DndOk = 0,
    DndErrNullPointer = 1,
    DndErrUtf8 = 2,
    DndErrParse = 3,
    DndErrInvalid = 4,
    /// Oracle cutoff failed to stabilize; any written report is partial.
    DndErrUnstable = 5,
    DndErrPanic = 6,
}

enum EngineInner {
    Prime(DeltaEngine<F32003>),
    Rational(DeltaEngine<Rat>),
}

/// Opaque engine handle; create with [`dnd_engine_new`], release with
/// [`dnd_engine_free`].
pub struct DndEngine {
    inner: EngineInner,
    last_error: Mutex<Option<CString>>,
}

impl DndEngine {
    fn set_error(&self, msg: &str) {
        let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
        *self.last_error.lock().unwrap() = Some(CString::new(cleaned).unwrap());
    }
}

fn classify(f: &CliFailure) -> DndStatus {
    if f.message.contains("parse") || f.message.contains("expected") {
        DndStatus::DndErrParse
    } else {
        DndStatus::DndErrInvalid
    }
}

unsafe fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, DndStatus> {
    if ptr.is_null() {
        return Err(DndStatus::DndErrNullPointer);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| DndStatus::DndErrUtf8)
}

fn write_string(out: *mut *mut c_char, value: String) -> DndStatus {
    if out.is_null() {
        return DndStatus::DndErrNullPointer;
    }
    let cleaned: String = value.chars().filter(|&c| c != '\0').collect();
    let cs = CString::new(cleaned).expect("no interior NUL after cleaning");
    unsafe {
        *out = cs.into_raw();
    }
    DndStatus::DndOk
}

/// Run a fallible body with panic shielding, recording errors on the engine.
fn guarded(
    engine: *mut DndEngine,
    body: impl FnOnce(&DndEngine) -> Result<DndStatus, (DndStatus, String)>,
) -> DndStatus {
    if engine.is_null() {
        return DndStatus::DndErrNullPointer;
    }
    let engine = unsafe { &*engine };
    match catch_unwind(AssertUnwindSafe(|| body(engine))) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            engine.set_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in engine call".to_string());
            engine.set_error(&msg);
            DndStatus::DndErrPanic
        }
    }
}

fn fail<T>(status: DndStatus, msg: impl Into<String>) -> Result<T, (DndStatus, String)> {
    Err((status, msg.into()))
}

/// Create an engine over the given coefficient field: `"32003"` for the
/// default prime field or `"q"` for exact rationals. Null on unknown field.
///
/// # Safety
/// `field` is either null (default field) or NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_engine_new(field: *const c_char) -> *mut DndEngine {
    let name = if field.is_null() {
        "32003".to_string()
    } else {
        match CStr::from_ptr(field).to_str() {
            Ok(s) => s.to_string(),
            Err(_) => return ptr::null_mut(),
        }
    };
    let inner = match name.as_str() {
        "" | "32003" => EngineInner::Prime(DeltaEngine::new(OraclePolicy::default())),
        "q" | "Q" => EngineInner::Rational(DeltaEngine::new(OraclePolicy::default())),
        _ => return ptr::null_mut(),
    };
    Box::into_raw(Box::new(DndEngine {
        inner,
        last_error: Mutex::new(None),
    }))
}

/// # Safety
/// `engine` must come from [`dnd_engine_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dnd_engine_free(engine: *mut DndEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Borrowed pointer to the last error message on this engine, or null.
/// Valid until the next failing call on the same engine.
///
/// # Safety
/// `engine` must be a live handle from [`dnd_engine_new`].
#[no_mangle]
pub unsafe extern "C" fn dnd_last_error(engine: *const DndEngine) -> *const c_char {
    if engine.is_null() {
        return ptr::null();
    }
    let guard = (*engine).last_error.lock().unwrap();
    match guard.as_ref() {
        Some(cs) => cs.as_ptr(),
        None => ptr::null(),
    }
}

/// Release a string returned through an `out` parameter.
///
/// # Safety
/// `s` must have been produced by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn dnd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Normalize strings (walk DSL or JSON payload) into normal-form JSON.
///
/// # Safety
/// Pointers must be valid; `input` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_normalize(
    engine: *mut DndEngine,
    input: *const c_char,
    node: u32,
    out_json: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |_| {
        let text = match cstr_arg(input) {
            Ok(t) => t,
            Err(s) => return fail(s, "input pointer invalid"),
        };
        let walks = match parse_walks(text) {
            Ok(w) => w,
            Err(e) => return fail(classify(&e), e.message),
        };
        let nf = match delta::normalize(node, &walks) {
            Ok(nf) => nf,
            Err(e) => return fail(DndStatus::DndErrInvalid, e.to_string()),
        };
        Ok(write_string(out_json, serde_json::to_string(&nf).unwrap()))
    })
}

/// Hom dimension between two atoms given by their identifiers.
///
/// # Safety
/// Pointers must be valid; atom strings NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_hom_dim(
    engine: *mut DndEngine,
    from_atom: *const c_char,
    to_atom: *const c_char,
    out_dim: *mut i32,
) -> DndStatus {
    guarded(engine, |eng| {
        let (from, to) = match (cstr_arg(from_atom), cstr_arg(to_atom)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return fail(DndStatus::DndErrNullPointer, "atom pointer invalid"),
        };
        let a = match Indec::parse(from) {
            Ok(a) => a,
            Err(e) => return fail(DndStatus::DndErrParse, e.to_string()),
        };
        let b = match Indec::parse(to) {
            Ok(b) => b,
            Err(e) => return fail(DndStatus::DndErrParse, e.to_string()),
        };
        let dim = match &eng.inner {
            EngineInner::Prime(e) => e.hom_dim(&a, &b),
            EngineInner::Rational(e) => e.hom_dim(&a, &b),
        };
        match dim {
            Ok(d) => {
                if out_dim.is_null() {
                    return fail(DndStatus::DndErrNullPointer, "out_dim is null");
                }
                *out_dim = d as i32;
                Ok(DndStatus::DndOk)
            }
            Err(DeltaError::CutoffNotStabilized { .. }) => {
                fail(DndStatus::DndErrUnstable, "oracle cutoff did not stabilize")
            }
            Err(e) => fail(DndStatus::DndErrInvalid, e.to_string()),
        }
    })
}

/// Class in the free group on the projective generators, as JSON.
///
/// # Safety
/// Pointers must be valid; `input` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_k0(
    engine: *mut DndEngine,
    input: *const c_char,
    node: u32,
    out_json: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |_| {
        let text = match cstr_arg(input) {
            Ok(t) => t,
            Err(s) => return fail(s, "input pointer invalid"),
        };
        let nf = match parse_form(text, node) {
            Ok(nf) => nf,
            Err(e) => return fail(classify(&e), e.message),
        };
        Ok(write_string(
            out_json,
            serde_json::to_string(&delta::k0(&nf)).unwrap(),
        ))
    })
}

/// Isomorphism test between two objects (normal-form JSON or walks).
///
/// # Safety
/// Pointers must be valid; payloads NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_is_iso(
    engine: *mut DndEngine,
    left: *const c_char,
    right: *const c_char,
    node: u32,
    out_iso: *mut bool,
) -> DndStatus {
    guarded(engine, |_| {
        let (l, r) = match (cstr_arg(left), cstr_arg(right)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return fail(DndStatus::DndErrNullPointer, "payload pointer invalid"),
        };
        let lf = match parse_form(l, node) {
            Ok(f) => f,
            Err(e) => return fail(classify(&e), e.message),
        };
        let rf = match parse_form(r, node) {
            Ok(f) => f,
            Err(e) => return fail(classify(&e), e.message),
        };
        if out_iso.is_null() {
            return fail(DndStatus::DndErrNullPointer, "out_iso is null");
        }
        *out_iso = lf.is_iso(&rf);
        Ok(DndStatus::DndOk)
    })
}

/// Auslander-Reiten translate of a minimal-string atom.
///
/// # Safety
/// Pointers must be valid; `atom` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_tau(
    engine: *mut DndEngine,
    atom: *const c_char,
    out_atom: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |_| {
        let text = match cstr_arg(atom) {
            Ok(t) => t,
            Err(s) => return fail(s, "atom pointer invalid"),
        };
        let a = match Indec::parse(text) {
            Ok(a) => a,
            Err(e) => return fail(DndStatus::DndErrParse, e.to_string()),
        };
        match arquiver::tau(&a) {
            Ok(t) => Ok(write_string(out_atom, t.id())),
            Err(e) => fail(DndStatus::DndErrInvalid, e.to_string()),
        }
    })
}

/// Auslander-Reiten mesh ending at a minimal-string atom, as JSON ids.
///
/// # Safety
/// Pointers must be valid; `end_atom` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_mesh(
    engine: *mut DndEngine,
    end_atom: *const c_char,
    out_json: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |_| {
        let text = match cstr_arg(end_atom) {
            Ok(t) => t,
            Err(s) => return fail(s, "atom pointer invalid"),
        };
        let a = match Indec::parse(text) {
            Ok(a) => a,
            Err(e) => return fail(DndStatus::DndErrParse, e.to_string()),
        };
        match arquiver::ar_mesh(&a) {
            Ok(mesh) => {
                let doc = serde_json::json!({
                    "start": mesh.start.id(),
                    "middle": mesh.middle.iter().map(|x| x.id()).collect::<Vec<_>>(),
                    "end": mesh.end.id(),
                });
                Ok(write_string(out_json, doc.to_string()))
            }
            Err(e) => fail(DndStatus::DndErrInvalid, e.to_string()),
        }
    })
}

/// Stabilization onto the stable Cohen-Macaulay category, as JSON counts.
///
/// # Safety
/// Pointers must be valid; `input` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_stabilize(
    engine: *mut DndEngine,
    input: *const c_char,
    node: u32,
    out_json: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |_| {
        let text = match cstr_arg(input) {
            Ok(t) => t,
            Err(s) => return fail(s, "input pointer invalid"),
        };
        let nf = match parse_form(text, node) {
            Ok(f) => f,
            Err(e) => return fail(classify(&e), e.message),
        };
        let mcm = delta::stabilize(&nf);
        let doc = serde_json::json!({
            "convention": delta::STABILIZE_CONVENTION,
            "branch_u": mcm.branch_u,
            "branch_v": mcm.branch_v,
        });
        Ok(write_string(out_json, doc.to_string()))
    })
}

/// DOT rendering of a component window around a seed atom.
///
/// # Safety
/// Pointers must be valid; `seed` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_window_dot(
    engine: *mut DndEngine,
    seed: *const c_char,
    rows: u32,
    cols: u32,
    out_dot: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |_| {
        let text = match cstr_arg(seed) {
            Ok(t) => t,
            Err(s) => return fail(s, "seed pointer invalid"),
        };
        let a = match Indec::parse(text) {
            Ok(a) => a,
            Err(e) => return fail(DndStatus::DndErrParse, e.to_string()),
        };
        match arquiver::component_window(&a, rows, cols) {
            Ok(w) => Ok(write_string(out_dot, arquiver::window_to_dot(&w))),
            Err(e) => fail(DndStatus::DndErrInvalid, e.to_string()),
        }
    })
}

fn oracle_hom_typed<S: Scalar>(
    eng: &DeltaEngine<S>,
    x: &str,
    y: &str,
    shift: i64,
    cutoff: u32,
) -> Result<(String, bool), (DndStatus, String)> {
    let xc: ProjComplex<S> = parse_complex(x).map_err(|e| (classify(&e), e.message))?;
    let yc: ProjComplex<S> = parse_complex(y).map_err(|e| (classify(&e), e.message))?;
    let cutoff = if cutoff == 0 {
        None
    } else {
        Some(cutoff as usize)
    };
    let report = eng
        .oracle_hom(&xc, &yc, shift, cutoff)
        .map_err(|e| (DndStatus::DndErrInvalid, e.to_string()))?;
    let stable = report.stable;
    Ok((serde_json::to_string(&report).unwrap(), stable))
}

/// Graded homotopy-category Hom report between two complexes (walk DSL,
/// walk JSON, or complex JSON payloads). Returns `DndErrUnstable` and still
/// writes the report when the cutoff did not stabilize; `cutoff` 0 means
/// the policy default.
///
/// # Safety
/// Pointers must be valid; payloads NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn dnd_oracle_hom(
    engine: *mut DndEngine,
    x: *const c_char,
    y: *const c_char,
    shift: i64,
    cutoff: u32,
    out_json: *mut *mut c_char,
) -> DndStatus {
    guarded(engine, |eng| {
        let (xs, ys) = match (cstr_arg(x), cstr_arg(y)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return fail(DndStatus::DndErrNullPointer, "payload pointer invalid"),
        };
        let (json, stable) = match &eng.inner {
            EngineInner::Prime(e) => oracle_hom_typed(e, xs, ys, shift, cutoff),
            EngineInner::Rational(e) => oracle_hom_typed(e, xs, ys, shift, cutoff),
        }?;
        let status = write_string(out_json, json);
        if status != DndStatus::DndOk {
            return Ok(status);
        }
        if stable {
            Ok(DndStatus::DndOk)
        } else {
            fail(DndStatus::DndErrUnstable, "oracle cutoff did not stabilize")
        }
    })
}
