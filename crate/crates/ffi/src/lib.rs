//! C ABI for `enriques-lattice`.
//!
//! Every fallible function returns an [`EnqStatus`]. On failure a message is
//! available from [`enq_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with [`enq_string_free`]; handles are released with their
//! matching `_free` function. Structured results are returned as JSON using
//! the same schemas as the `enriques` command-line tool.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use enriques_lattice::coxeter::{build_diagram, enumerate_max_parabolics};
use enriques_lattice::group::{to_isometry, GroupElement};
use enriques_lattice::lattice::to_i64;
use enriques_lattice::model::EnriquesModel;
use enriques_lattice::orbits::OrbitContext;
use enriques_lattice::report::{run_verification, VerifyOptions};
use enriques_lattice::Error;

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnqStatus {
    Ok = 0,
    /// The computation ran but a verification check failed.
    VerificationFailed = 1,
    /// Malformed input text (vector, label, element or model JSON).
    ParseError = 2,
    /// Well-formed input that violates a precondition, such as a wrong norm.
    Precondition = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// The string is not valid UTF-8.
    InvalidUtf8 = 5,
    /// An unexpected internal failure.
    Internal = 6,
}

/// Opaque handle to a lattice model.
pub struct EnqModel {
    // dropped before `model`, which it borrows
    ctx: OnceLock<Result<OrbitContext<'static>, Error>>,
    model: Box<EnriquesModel>,
}

impl EnqModel {
    fn new(model: EnriquesModel) -> Self {
        Self { ctx: OnceLock::new(), model: Box::new(model) }
    }

    fn context(&self) -> Result<&OrbitContext<'static>, Error> {
        let model: &'static EnriquesModel = {
            let p: *const EnriquesModel = &*self.model;
            // SAFETY: the boxed model never moves and outlives `ctx`, which
            // is declared first and therefore dropped first.
            unsafe { &*p }
        };
        self.ctx.get_or_init(|| OrbitContext::new(model)).as_ref().map_err(Clone::clone)
    }
}

/// Opaque handle to an element of `S4 ⋉ (C2 * C2 * C2 * C2)`.
pub struct EnqGroupElement(GroupElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("no interior nul")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(EnqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_parse_error() { EnqStatus::ParseError } else { EnqStatus::Precondition };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(EnqStatus::NullPointer, format!("`{name}` is null"))
}

/// Runs `f`, records any failure and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<EnqStatus, Failure>) -> EnqStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            EnqStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(EnqStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn model_ref<'a>(m: *const EnqModel) -> Result<&'a EnqModel, Failure> {
    m.as_ref().ok_or_else(|| null("model"))
}

unsafe fn element_ref<'a>(g: *const EnqGroupElement) -> Result<&'a GroupElement, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("element"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(EnqStatus::Internal, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn enq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn enq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the built-in model.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_model_bundled(out: *mut *mut EnqModel) -> EnqStatus {
    guard(|| {
        write_handle(out, EnqModel::new(EnriquesModel::bundled()))?;
        Ok(EnqStatus::Ok)
    })
}

/// Loads a model from its JSON document. Only structural problems are
/// rejected; content is checked by [`enq_verify_json`].
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_model_from_json(json: *const c_char, out: *mut *mut EnqModel) -> EnqStatus {
    guard(|| {
        let model = EnriquesModel::from_json(read_str(json, "json")?)?;
        write_handle(out, EnqModel::new(model))?;
        Ok(EnqStatus::Ok)
    })
}

/// # Safety
/// `model` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn enq_model_free(model: *mut EnqModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Serializes the model document.
///
/// # Safety
/// `model` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_model_to_json(model: *const EnqModel, out: *mut *mut c_char) -> EnqStatus {
    guard(|| {
        write_string(out, model_ref(model)?.model.to_json())?;
        Ok(EnqStatus::Ok)
    })
}

/// Writes the 20×20 pairing table, row-major, into `out[400]`.
///
/// # Safety
/// `out` must point to 400 writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn enq_model_gram20(model: *const EnqModel, out: *mut i64) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        for (i, row) in m.model.gram20().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                *out.add(20 * i + j) = x;
            }
        }
        Ok(EnqStatus::Ok)
    })
}

/// Runs the full verification and writes its JSON report. Returns
/// `VerificationFailed` (with the report still written) if a section fails.
///
/// # Safety
/// `model` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_verify_json(
    model: *const EnqModel,
    max_degree: i64,
    max_word_len: usize,
    out: *mut *mut c_char,
) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        let report = run_verification(&m.model, &VerifyOptions { max_degree, max_word_len });
        write_string(out, report.to_json())?;
        if report.passed() {
            Ok(EnqStatus::Ok)
        } else {
            set_error(format!("{} verification section(s) failed", report.summary.failed));
            Ok(EnqStatus::VerificationFailed)
        }
    })
}

/// The maximal parabolic subdiagrams as a JSON array.
///
/// # Safety
/// `model` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_parabolics_json(model: *const EnqModel, out: *mut *mut c_char) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        let list = enumerate_max_parabolics(&build_diagram(&m.model)?)?;
        let entries: Vec<_> = list.iter().map(|p| p.census_entry()).collect();
        write_string(out, to_json(&entries))?;
        Ok(EnqStatus::Ok)
    })
}

/// Classifies a (-2)-vector. `vector` is either comma-separated coordinates
/// or a label combination such as `G4` or `2E1+E12`.
///
/// # Safety
/// `model` must be a valid handle, `vector` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn enq_classify_curve_json(
    model: *const EnqModel,
    vector: *const c_char,
    out: *mut *mut c_char,
) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        let x = m.model.parse_vector(read_str(vector, "vector")?)?;
        let report = m.context()?.classify_curve_class(&x)?;
        write_string(out, to_json(&report))?;
        Ok(EnqStatus::Ok)
    })
}

/// Classifies a primitive isotropic vector (or twice one) by pencil type.
///
/// # Safety
/// `model` must be a valid handle, `vector` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn enq_classify_pencil_json(
    model: *const EnqModel,
    vector: *const c_char,
    out: *mut *mut c_char,
) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        let x = m.model.parse_vector(read_str(vector, "vector")?)?;
        let report = m.context()?.classify_pencil(&x)?;
        write_string(out, to_json(&report))?;
        Ok(EnqStatus::Ok)
    })
}

/// Degree descent by the `σ_i`.
///
/// # Safety
/// `model` must be a valid handle, `vector` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn enq_reduce_json(
    model: *const EnqModel,
    vector: *const c_char,
    out: *mut *mut c_char,
) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        let x = m.model.parse_vector(read_str(vector, "vector")?)?;
        let report = m.context()?.sigma_reduce(&x)?;
        write_string(out, to_json(&report))?;
        Ok(EnqStatus::Ok)
    })
}

/// Parses an element such as `id`, `s1 s2` or `(1 2) s3 s1`.
///
/// # Safety
/// `text` must be nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_group_parse(text: *const c_char, out: *mut *mut EnqGroupElement) -> EnqStatus {
    guard(|| {
        let g: GroupElement = read_str(text, "text")?.parse()?;
        write_handle(out, EnqGroupElement(g))?;
        Ok(EnqStatus::Ok)
    })
}

/// The generator `σ_i`, `i` in 1..=4.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_group_sigma(i: u8, out: *mut *mut EnqGroupElement) -> EnqStatus {
    guard(|| {
        write_handle(out, EnqGroupElement(GroupElement::sigma(i)?))?;
        Ok(EnqStatus::Ok)
    })
}

/// # Safety
/// `a`, `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_group_multiply(
    a: *const EnqGroupElement,
    b: *const EnqGroupElement,
    out: *mut *mut EnqGroupElement,
) -> EnqStatus {
    guard(|| {
        let product = element_ref(a)?.multiply(element_ref(b)?);
        write_handle(out, EnqGroupElement(product))?;
        Ok(EnqStatus::Ok)
    })
}

/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_group_inverse(g: *const EnqGroupElement, out: *mut *mut EnqGroupElement) -> EnqStatus {
    guard(|| {
        write_handle(out, EnqGroupElement(element_ref(g)?.inverse()))?;
        Ok(EnqStatus::Ok)
    })
}

/// Normal form as text, e.g. `(1 2) s1 s3`.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enq_group_to_string(g: *const EnqGroupElement, out: *mut *mut c_char) -> EnqStatus {
    guard(|| {
        write_string(out, element_ref(g)?.to_string())?;
        Ok(EnqStatus::Ok)
    })
}

/// 1 if the elements are equal, 0 if not, -1 if either handle is null.
///
/// # Safety
/// `a`, `b` must be null or valid handles.
#[no_mangle]
pub unsafe extern "C" fn enq_group_equal(a: *const EnqGroupElement, b: *const EnqGroupElement) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => i32::from(a.0 == b.0),
        _ => -1,
    }
}

/// Writes the integral 10×10 isometry matrix of `g`, row-major, into
/// `out[100]`.
///
/// # Safety
/// `model`, `g` must be valid handles; `out` must point to 100 `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn enq_group_isometry(
    model: *const EnqModel,
    g: *const EnqGroupElement,
    out: *mut i64,
) -> EnqStatus {
    guard(|| {
        let m = model_ref(model)?;
        let g = element_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let matrix = to_isometry(g, &m.model);
        for (i, row) in matrix.rows().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                *out.add(10 * i + j) = to_i64(x)
                    .ok_or_else(|| Failure(EnqStatus::Precondition, format!("entry {x} does not fit in an int64_t")))?;
            }
        }
        Ok(EnqStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn enq_group_free(g: *mut EnqGroupElement) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}
