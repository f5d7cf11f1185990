//! C bindings over the cherednik crate. Handles are opaque pointers,
//! structured results cross the boundary as JSON strings, and every entry
//! point returns one of the CHEREDNIK_ status codes. A failing call stores
//! a message retrievable through cherednik_last_error.

use cherednik::catalan::{enumerate_paths, qt_catalan, rational_catalan_number};
use cherednik::coinv;
use cherednik::filtration::{
    filtration_a, filtration_alg_prime, filtration_ind, gr_character, kazhdan, Filtration,
    FiltrationKind, GrComponent,
};
use cherednik::symgroup::Partition;
use cherednik::verify::{run_suites, Suite};
use cherednik::IrrepModel;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// The call succeeded.
pub const CHEREDNIK_OK: c_int = 0;
/// A required pointer argument was null.
pub const CHEREDNIK_NULL_POINTER: c_int = 1;
/// Parameters were rejected: not coprime, out of range, or an unknown name.
pub const CHEREDNIK_INVALID_PARAMETER: c_int = 2;
/// The computation failed internally.
pub const CHEREDNIK_COMPUTE_ERROR: c_int = 3;
/// The computation ran but at least one verification check failed.
pub const CHEREDNIK_CHECK_FAILED: c_int = 4;

/// Opaque handle to a built module L_{m/n}.
pub struct CherednikModel {
    inner: IrrepModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let cleaned = msg.into().replace('\0', " ");
    let c = CString::new(cleaned).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cherednik_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

fn guarded(f: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            CHEREDNIK_COMPUTE_ERROR
        }
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> c_int {
    let cleaned = s.replace('\0', " ");
    match CString::new(cleaned) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CHEREDNIK_OK
        }
        Err(_) => {
            set_error("output was not a valid C string");
            CHEREDNIK_COMPUTE_ERROR
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(CHEREDNIK_NULL_POINTER);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        CHEREDNIK_INVALID_PARAMETER
    })
}

/// Builds L_{m/n} for coprime m, n and stores the handle in out. Free it
/// with cherednik_model_free.
#[no_mangle]
pub unsafe extern "C" fn cherednik_model_build(
    m: u32,
    n: u32,
    out: *mut *mut CherednikModel,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    guarded(|| match IrrepModel::build_mn(m as usize, n as usize) {
        Ok(inner) => {
            let handle = Box::new(CherednikModel { inner });
            unsafe { *out = Box::into_raw(handle) };
            CHEREDNIK_OK
        }
        Err(e) => {
            set_error(e.to_string());
            CHEREDNIK_INVALID_PARAMETER
        }
    })
}

/// Releases a handle returned by cherednik_model_build. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cherednik_model_free(model: *mut CherednikModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Total dimension m^(n-1) of the module.
#[no_mangle]
pub unsafe extern "C" fn cherednik_model_dimension(
    model: *const CherednikModel,
    out: *mut u64,
) -> c_int {
    if model.is_null() || out.is_null() {
        set_error("null pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    unsafe { *out = (*model).inner.total_dim() as u64 };
    CHEREDNIK_OK
}

/// The top weight mu = (m-1)(n-1)/2.
#[no_mangle]
pub unsafe extern "C" fn cherednik_model_mu(
    model: *const CherednikModel,
    out: *mut u32,
) -> c_int {
    if model.is_null() || out.is_null() {
        set_error("null pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    unsafe { *out = (*model).inner.mu() as u32 };
    CHEREDNIK_OK
}

/// Serializes the module document as JSON. Free the string with
/// cherednik_string_free.
#[no_mangle]
pub unsafe extern "C" fn cherednik_model_json(
    model: *const CherednikModel,
    out: *mut *mut c_char,
) -> c_int {
    if model.is_null() || out.is_null() {
        set_error("null pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    guarded(|| {
        let doc = unsafe { &(*model).inner }.to_doc();
        match serde_json::to_string(&doc) {
            Ok(s) => write_string(out, s),
            Err(e) => {
                set_error(e.to_string());
                CHEREDNIK_COMPUTE_ERROR
            }
        }
    })
}

fn filtration_of_kind(model: &IrrepModel, kind: &str) -> Result<Filtration, (c_int, String)> {
    let kind = match kind {
        "a" => FiltrationKind::Power,
        "alg" => FiltrationKind::Algebraic,
        "alg-prime" => FiltrationKind::AlgebraicPrime,
        "ind" => FiltrationKind::Inductive,
        "ind-prime" => FiltrationKind::InductivePrime,
        other => {
            return Err((
                CHEREDNIK_INVALID_PARAMETER,
                format!("unsupported kind {other}"),
            ))
        }
    };
    let p = model.param();
    if matches!(kind, FiltrationKind::Inductive | FiltrationKind::InductivePrime) && p.m < p.n {
        return Err((
            CHEREDNIK_INVALID_PARAMETER,
            format!(
                "the inductive filtration is undefined on all of L_{}/{}: it needs m > n",
                p.m, p.n
            ),
        ));
    }
    let filt = match kind {
        FiltrationKind::Power => filtration_a(model),
        FiltrationKind::Algebraic => kazhdan(model, &filtration_a(model)),
        FiltrationKind::AlgebraicPrime => filtration_alg_prime(model),
        FiltrationKind::Inductive | FiltrationKind::InductivePrime => {
            let ind = filtration_ind(model)
                .map_err(|e| (CHEREDNIK_COMPUTE_ERROR, e.to_string()))?;
            if kind == FiltrationKind::InductivePrime {
                kazhdan(model, &ind)
            } else {
                ind
            }
        }
    };
    Ok(filt)
}

/// Level table of one filtration kind (a, alg, alg-prime, ind, ind-prime)
/// as JSON. Free the string with cherednik_string_free.
#[no_mangle]
pub unsafe extern "C" fn cherednik_filtration_json(
    model: *const CherednikModel,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if model.is_null() || out.is_null() {
        set_error("null pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    let kind = match unsafe { read_str(kind) } {
        Ok(s) => s,
        Err(code) => return code,
    };
    guarded(|| {
        let inner = unsafe { &(*model).inner };
        match filtration_of_kind(inner, kind) {
            Ok(filt) => match serde_json::to_string(&filt.to_doc(inner)) {
                Ok(s) => write_string(out, s),
                Err(e) => {
                    set_error(e.to_string());
                    CHEREDNIK_COMPUTE_ERROR
                }
            },
            Err((code, msg)) => {
                set_error(msg);
                code
            }
        }
    })
}

/// Bigraded characters of the associated graded module for one filtration
/// kind: the full character, the invariant component, and the super series.
#[no_mangle]
pub unsafe extern "C" fn cherednik_character_json(
    model: *const CherednikModel,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if model.is_null() || out.is_null() {
        set_error("null pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    let kind = match unsafe { read_str(kind) } {
        Ok(s) => s,
        Err(code) => return code,
    };
    guarded(|| {
        let inner = unsafe { &(*model).inner };
        let filt = match filtration_of_kind(inner, kind) {
            Ok(f) => f,
            Err((code, msg)) => {
                set_error(msg);
                return code;
            }
        };
        let n = inner.param().n;
        let doc = serde_json::json!({
            "schema_version": cherednik::irrep::SCHEMA_VERSION,
            "kind": kind,
            "all": gr_character(inner, &filt, &GrComponent::All),
            "invariant": gr_character(inner, &filt, &GrComponent::Irrep(Partition::new(vec![n]))),
            "super": gr_character(inner, &filt, &GrComponent::Super),
        });
        write_string(out, doc.to_string())
    })
}

/// Dyck path count and the rational q,t-Catalan polynomial as JSON.
#[no_mangle]
pub unsafe extern "C" fn cherednik_catalan_json(
    m: u32,
    n: u32,
    out: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    guarded(|| {
        let (m, n) = (m as usize, n as usize);
        let paths = match enumerate_paths(m, n) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return CHEREDNIK_INVALID_PARAMETER;
            }
        };
        let doc = serde_json::json!({
            "schema_version": cherednik::irrep::SCHEMA_VERSION,
            "m": m,
            "n": n,
            "count": paths.len(),
            "formula": rational_catalan_number(m, n).unwrap().to_string(),
            "polynomial": qt_catalan(m, n).unwrap(),
        });
        write_string(out, doc.to_string())
    })
}

/// Coinvariant lattice dimension certificates as JSON. Returns
/// CHEREDNIK_CHECK_FAILED when an identity fails, with the report still
/// written.
#[no_mangle]
pub unsafe extern "C" fn cherednik_lattice_json(
    m: u32,
    n: u32,
    out: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    guarded(|| {
        let report = match coinv::lattice_check(m as usize, n as usize) {
            Ok(r) => r,
            Err(e) => {
                set_error(e.to_string());
                return CHEREDNIK_INVALID_PARAMETER;
            }
        };
        let clean = report.counterexample.is_none();
        let code = match serde_json::to_string(&report) {
            Ok(s) => write_string(out, s),
            Err(e) => {
                set_error(e.to_string());
                return CHEREDNIK_COMPUTE_ERROR;
            }
        };
        if code == CHEREDNIK_OK && !clean {
            set_error("a lattice identity failed");
            return CHEREDNIK_CHECK_FAILED;
        }
        code
    })
}

/// Runs one verification suite (all, dunkl, irrep, filtration, coinvariant,
/// catalan) and writes the results as JSON. Returns CHEREDNIK_CHECK_FAILED
/// when any check fails, with the report still written.
#[no_mangle]
pub unsafe extern "C" fn cherednik_verify_json(
    suite: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        set_error("null output pointer");
        return CHEREDNIK_NULL_POINTER;
    }
    let suite = match unsafe { read_str(suite) } {
        Ok(s) => s,
        Err(code) => return code,
    };
    let suites = match Suite::parse(suite) {
        Some(s) => s,
        None => {
            set_error(format!("unknown suite {suite}"));
            return CHEREDNIK_INVALID_PARAMETER;
        }
    };
    guarded(|| {
        let results = run_suites(&suites);
        let failed = results.iter().filter(|r| !r.passed).count();
        let code = match serde_json::to_string(&results) {
            Ok(s) => write_string(out, s),
            Err(e) => {
                set_error(e.to_string());
                return CHEREDNIK_COMPUTE_ERROR;
            }
        };
        if code == CHEREDNIK_OK && failed > 0 {
            set_error(format!("{failed} checks failed"));
            return CHEREDNIK_CHECK_FAILED;
        }
        code
    })
}

/// Releases a string returned by any of the _json entry points. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn cherednik_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
