//! C interface to `uqsln`.
//!
//! Every function returns a [`UqStatus`]; on failure the message is
//! available from [`uq_last_error_message`] on the same thread. Modules are
//! opaque [`UqModule`] handles released with [`uq_module_free`], and strings
//! returned through `char **` are released with [`uq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use uqsln::centre::compute_p;
use uqsln::cli::RunConfig;
use uqsln::verify::{classify, relation_residuals, ClassifyOptions};
use uqsln::{build_module, predicted_dimension, DimensionQuery, Error, RepModule, SparseOperator};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidConfig = 3,
    InvalidArgument = 4,
    Inadmissible = 5,
    BudgetExceeded = 6,
    Divergence = 7,
    RelationViolation = 8,
    Precondition = 9,
    BufferTooSmall = 10,
    Panic = 11,
    Other = 12,
}

/// Which generator family to read from a module.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UqGenerator {
    K = 0,
    KInverse = 1,
    E = 2,
    F = 3,
}

/// A built representation.
pub struct UqModule {
    inner: RepModule,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> UqStatus {
    match err {
        Error::InvalidContext(_) | Error::InvalidSpec(_) | Error::Config(_) | Error::Io(_) => UqStatus::InvalidConfig,
        Error::InvalidParams(_) => UqStatus::InvalidArgument,
        Error::Inadmissible(_) => UqStatus::Inadmissible,
        Error::BudgetExceeded { .. } => UqStatus::BudgetExceeded,
        Error::Divergence(_) | Error::GenericityViolation(_) => UqStatus::Divergence,
        Error::RelationViolation(_) | Error::InconsistentStatus(_) => UqStatus::RelationViolation,
        Error::Precondition(_) | Error::CoincidentClasses(_) | Error::NoHighestWeight => UqStatus::Precondition,
    }
}

struct Failure(UqStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(UqStatus::NullPointer, format!("{what} is null"))
}

/// Run `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> UqStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            UqStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&message);
            UqStatus::Panic
        }
    }
}

unsafe fn module_ref<'a>(module: *const UqModule) -> Result<&'a RepModule, Failure> {
    module.as_ref().map(|m| &m.inner).ok_or_else(|| null("module"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let text = CString::new(text).map_err(|e| Failure(UqStatus::Other, e.to_string()))?;
    write(out, text.into_raw())
}

fn generator(module: &RepModule, which: UqGenerator, l: usize) -> Result<&SparseOperator, Failure> {
    if l == 0 || l >= module.n() {
        return Err(Failure(
            UqStatus::InvalidArgument,
            format!("generator index {l} outside 1..={}", module.n() - 1),
        ));
    }
    Ok(match which {
        UqGenerator::K => module.k_plus(l),
        UqGenerator::KInverse => module.k_minus(l),
        UqGenerator::E => module.e(l),
        UqGenerator::F => module.f(l),
    })
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn uq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a module from a JSON run configuration.
///
/// # Safety
/// `config_json` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_module_from_json(config_json: *const c_char, out: *mut *mut UqModule) -> UqStatus {
    guard(|| {
        if config_json.is_null() {
            return Err(null("config"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = CStr::from_ptr(config_json)
            .to_str()
            .map_err(|e| Failure(UqStatus::InvalidUtf8, e.to_string()))?;
        let spec = RunConfig::from_json(text)?.to_spec()?;
        let module = build_module(&spec)?;
        write(out, Box::into_raw(Box::new(UqModule { inner: module })))
    })
}

/// # Safety
/// `module` must come from [`uq_module_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn uq_module_free(module: *mut UqModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// # Safety
/// `module` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_module_dim(module: *const UqModule, out: *mut usize) -> UqStatus {
    guard(|| write(out, module_ref(module)?.dim()))
}

/// `N` of `U_q(sl(N))`.
///
/// # Safety
/// `module` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_module_n(module: *const UqModule, out: *mut usize) -> UqStatus {
    guard(|| write(out, module_ref(module)?.n()))
}

/// Number of stored entries of generator `which` with index `l` (1-based).
///
/// # Safety
/// `module` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_module_nnz(
    module: *const UqModule,
    which: UqGenerator,
    l: usize,
    out: *mut usize,
) -> UqStatus {
    guard(|| write(out, generator(module_ref(module)?, which, l)?.nnz()))
}

/// Copy the entries of a generator as 0-based `(row, col, re, im)` arrays of
/// length `capacity`; at least `nnz` slots are needed.
///
/// # Safety
/// `module` must be a live handle; the four arrays must hold `capacity`
/// elements each.
#[no_mangle]
pub unsafe extern "C" fn uq_module_triplets(
    module: *const UqModule,
    which: UqGenerator,
    l: usize,
    rows: *mut usize,
    cols: *mut usize,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
) -> UqStatus {
    guard(|| {
        let op = generator(module_ref(module)?, which, l)?;
        if rows.is_null() || cols.is_null() || re.is_null() || im.is_null() {
            return Err(null("output array"));
        }
        let entries = op.triplets();
        if entries.len() > capacity {
            return Err(Failure(
                UqStatus::BufferTooSmall,
                format!("need {} slots, got {capacity}", entries.len()),
            ));
        }
        for (k, (r, c, v)) in entries.into_iter().enumerate() {
            rows.add(k).write(r);
            cols.add(k).write(c);
            re.add(k).write(v.re);
            im.add(k).write(v.im);
        }
        Ok(())
    })
}

/// Largest residual over the defining relations.
///
/// # Safety
/// `module` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_module_relation_residual(module: *const UqModule, out: *mut f64) -> UqStatus {
    guard(|| write(out, relation_residuals(&module_ref(module)?.ops).max()))
}

/// Classification report as JSON; free with [`uq_string_free`].
///
/// # Safety
/// `module` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_module_classify_json(
    module: *const UqModule,
    irreducibility_bound: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> UqStatus {
    guard(|| {
        let options = ClassifyOptions {
            irreducibility_bound,
            seed,
        };
        let report = classify(module_ref(module)?, options)?;
        let text = serde_json::to_string(&report).map_err(|e| Failure(UqStatus::Other, e.to_string()))?;
        write_string(out, text)
    })
}

/// `P_{i,m}` for `U_q(sl(N))` as a polynomial string in `c1 .. c{N-1}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_sympoly(i: usize, m: u32, n: usize, out: *mut *mut c_char) -> UqStatus {
    guard(|| write_string(out, compute_p(i, m, n)?.to_string()))
}

/// Dimension of the truncated flat `U_q(sl(3))` module.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn uq_sl3_flat_dimension(m: u32, p13: u32, out: *mut u64) -> UqStatus {
    guard(|| write(out, predicted_dimension(DimensionQuery::TruncatedFlatSl3 { m, p13 })?))
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn uq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
