//! C ABI over the `qsg` toolkit.
//!
//! Conventions: every fallible function returns a [`QsgStatus`]; outputs
//! are written through pointer arguments only on success. Strings returned
//! to the caller are NUL-terminated UTF-8 owned by the caller and must be
//! released with [`qsg_string_free`]. The message of the most recent error
//! on the calling thread is available from [`qsg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qsg::ideals::product_radical_member;
use qsg::json::{qforms_from_json, Json};
use qsg::pencil::classify_pair;
use qsg::qform::QForm;
use qsg::{report, QsgError};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed input: bad JSON, bad UTF-8, out-of-range indices.
    InvalidInput = 2,
    /// The input is well formed but violates a precondition.
    Precondition = 3,
    /// A computation exceeded its budget.
    BudgetExceeded = 4,
    /// An unexpected internal failure (no panic crosses the boundary).
    Internal = 5,
}

/// Opaque quadratic form.
pub struct QsgQForm {
    inner: QForm,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &QsgError) -> QsgStatus {
    match e {
        QsgError::Parse(_) | QsgError::IndexOutOfRange { .. } | QsgError::DimensionMismatch { .. } | QsgError::Io(_) => {
            QsgStatus::InvalidInput
        }
        QsgError::BudgetExceeded(_) => QsgStatus::BudgetExceeded,
        _ => QsgStatus::Precondition,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (QsgStatus, String)>) -> QsgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QsgStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            QsgStatus::Internal
        }
    }
}

fn lib<T>(r: qsg::Result<T>) -> Result<T, (QsgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null<T>(p: *const T, what: &str) -> Result<(), (QsgStatus, String)> {
    if p.is_null() {
        Err((QsgStatus::NullPointer, format!("null pointer: {what}")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QsgStatus, String)> {
    null(s, what)?;
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (QsgStatus::InvalidInput, format!("{what} is not valid UTF-8")))
}

fn to_c(s: String) -> Result<*mut c_char, (QsgStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (QsgStatus::Internal, "interior NUL in output".into()))
}

/// Parses a quadratic form from its JSON encoding
/// (`{"n": k, "terms": [[i, j, c], …]}`).
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer
/// to writable storage. On success `*out` owns a handle to be released
/// with [`qsg_qform_free`].
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_from_json(json: *const c_char, out: *mut *mut QsgQForm) -> QsgStatus {
    guard(|| {
        null(out, "out")?;
        let s = read_str(json, "json")?;
        let q = lib(QForm::from_json_str(s))?;
        *out = Box::into_raw(Box::new(QsgQForm { inner: q }));
        Ok(())
    })
}

/// Releases a form handle. Null is ignored.
///
/// # Safety
/// `q` must be null or a handle from [`qsg_qform_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_free(q: *mut QsgQForm) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of variables of a form.
///
/// # Safety
/// `q` must be a live handle and `out` a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_n(q: *const QsgQForm, out: *mut usize) -> QsgStatus {
    guard(|| {
        null(q, "q")?;
        null(out, "out")?;
        *out = (*q).inner.n();
        Ok(())
    })
}

/// The rank (least number of products of linear forms summing to the
/// form).
///
/// # Safety
/// `q` must be a live handle and `out` a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_rank(q: *const QsgQForm, out: *mut usize) -> QsgStatus {
    guard(|| {
        null(q, "q")?;
        null(out, "out")?;
        *out = (*q).inner.rank_s();
        Ok(())
    })
}

/// Rank of the Gram matrix.
///
/// # Safety
/// `q` must be a live handle and `out` a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_gram_rank(q: *const QsgQForm, out: *mut usize) -> QsgStatus {
    guard(|| {
        null(q, "q")?;
        null(out, "out")?;
        *out = (*q).inner.gram_rank();
        Ok(())
    })
}

/// The form's JSON encoding.
///
/// # Safety
/// `q` must be a live handle and `out` a valid writable pointer; the
/// string written to `*out` must be released with [`qsg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_to_json(q: *const QsgQForm, out: *mut *mut c_char) -> QsgStatus {
    guard(|| {
        null(q, "q")?;
        null(out, "out")?;
        *out = to_c((*q).inner.to_json().to_string())?;
        Ok(())
    })
}

/// The minimal space as JSON (`{"n": k, "basis": [[…], …]}`).
///
/// # Safety
/// As for [`qsg_qform_to_json`].
#[no_mangle]
pub unsafe extern "C" fn qsg_qform_minimal_space_json(q: *const QsgQForm, out: *mut *mut c_char) -> QsgStatus {
    guard(|| {
        null(q, "q")?;
        null(out, "out")?;
        *out = to_c((*q).inner.minimal_space().to_json().to_string())?;
        Ok(())
    })
}

/// Whether the product of `factors[0..len]` lies in the radical of the
/// ideal generated by `a` and `b`.
///
/// # Safety
/// `a` and `b` must be live handles; `factors` must point to `len` live
/// handles (it may be null only when `len` is 0, which is rejected as a
/// precondition error); `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qsg_radical_product_member(
    a: *const QsgQForm,
    b: *const QsgQForm,
    factors: *const *const QsgQForm,
    len: usize,
    out: *mut bool,
) -> QsgStatus {
    guard(|| {
        null(a, "a")?;
        null(b, "b")?;
        null(out, "out")?;
        let mut fs = Vec::with_capacity(len);
        if len > 0 {
            null(factors, "factors")?;
            for k in 0..len {
                let f = *factors.add(k);
                null(f, "factor")?;
                fs.push((*f).inner.clone());
            }
        }
        *out = lib(product_radical_member(&fs, &(*a).inner, &(*b).inner))?;
        Ok(())
    })
}

/// Classifies a pair against a third set. Input JSON:
/// `{"A": form, "B": form, "third": [form, …]}`; the output JSON lists
/// every structure case that holds, with witnesses.
///
/// # Safety
/// `input` must be a valid NUL-terminated string and `out` a valid
/// writable pointer; the string written to `*out` must be released with
/// [`qsg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qsg_classify_pair_json(input: *const c_char, out: *mut *mut c_char) -> QsgStatus {
    guard(|| {
        null(out, "out")?;
        let s = read_str(input, "input")?;
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| (QsgStatus::InvalidInput, e.to_string()))?;
        let field = |k: &str| {
            v.get(k).ok_or_else(|| (QsgStatus::InvalidInput, format!("missing field `{k}`")))
        };
        let a = lib(QForm::from_json(field("A")?))?;
        let b = lib(QForm::from_json(field("B")?))?;
        let third = match v.get("third") {
            Some(t) => lib(qforms_from_json(t))?,
            None => Vec::new(),
        };
        let cs = lib(classify_pair(&a, &b, &third))?;
        *out = to_c(report::case_set(&cs).to_string())?;
        Ok(())
    })
}

/// Runs one acceptance criterion (1-8) with the given seed.
///
/// # Safety
/// `passed` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qsg_selftest_criterion(id: u8, seed: u64, passed: *mut bool) -> QsgStatus {
    guard(|| {
        null(passed, "passed")?;
        if !(1..=8).contains(&id) {
            return Err((QsgStatus::InvalidInput, format!("no criterion {id}")));
        }
        *passed = qsg::selftest::run_criterion(id, seed).passed;
        Ok(())
    })
}

/// The most recent error message on this thread, or null if none. The
/// returned string must be released with [`qsg_string_free`].
#[no_mangle]
pub extern "C" fn qsg_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(m) => CString::new(m.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut()),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qsg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
