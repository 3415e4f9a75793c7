//! C ABI for the hilbhodge engine.
//!
//! Datasets and polynomials are opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns a
//! [`HilbStatus`]; the message for the most recent failure on the calling
//! thread is available from [`hilb_last_error_message`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hilbhodge::engine::{
    self as engine, deformation_dims, nested_hodge, sym_power_twisted_hodge, EngineError,
    HodgePolynomial,
};
use hilbhodge::render::render_json;
use hilbhodge::surface::{parse_dataset, preset, DataError, SurfaceDataset};
use hilbhodge::verify::verify_dataset;
use std::ffi::c_char;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ValidationError = 4,
    UnknownPreset = 5,
    InsufficientPowers = 6,
    VerifyFailed = 7,
    Overflow = 8,
    InternalError = 9,
}

/// Opaque surface dataset.
pub struct HilbDataset {
    inner: SurfaceDataset,
}

/// Opaque bigraded Hodge numbers of one space.
pub struct HilbPolynomial {
    n: u32,
    inner: HodgePolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: HilbStatus, message: impl Into<String>) -> HilbStatus {
    set_error(message.into());
    status
}

fn data_status(e: &DataError) -> HilbStatus {
    match e {
        DataError::Parse(_) | DataError::Schema(_) | DataError::Io { .. } => HilbStatus::ParseError,
        DataError::Validation(_) => HilbStatus::ValidationError,
        DataError::UnknownPreset(_) => HilbStatus::UnknownPreset,
    }
}

fn engine_status(e: &EngineError) -> HilbStatus {
    match e {
        EngineError::InsufficientPowers { .. } => HilbStatus::InsufficientPowers,
        EngineError::Precondition(_) => HilbStatus::InvalidArgument,
        _ => HilbStatus::InternalError,
    }
}

fn guard<F: FnOnce() -> HilbStatus>(f: F) -> HilbStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(HilbStatus::InternalError, "panic inside hilbhodge"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HilbStatus> {
    if s.is_null() {
        return Err(fail(HilbStatus::NullPointer, "string argument is NULL"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HilbStatus::InvalidArgument, "string argument is not UTF-8"))
}

unsafe fn store_dataset(ds: Result<SurfaceDataset, DataError>, out: *mut *mut HilbDataset) -> HilbStatus {
    let ds = match ds.and_then(|ds| ds.validate().map(|_| ds)) {
        Ok(ds) => ds,
        Err(e) => return fail(data_status(&e), e.to_string()),
    };
    *out = Box::into_raw(Box::new(HilbDataset { inner: ds }));
    HilbStatus::Ok
}

unsafe fn store_polynomial(
    n: u32,
    poly: Result<HodgePolynomial, EngineError>,
    out: *mut *mut HilbPolynomial,
) -> HilbStatus {
    match poly {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(HilbPolynomial { n, inner }));
            HilbStatus::Ok
        }
        Err(e) => fail(engine_status(&e), e.to_string()),
    }
}

/// Message of the last failed call on this thread, or NULL. The string is
/// newly allocated; release it with [`hilb_string_free`].
#[no_mangle]
pub extern "C" fn hilb_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hilb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hilb_dataset_preset(name: *const c_char, out: *mut *mut HilbDataset) -> HilbStatus {
    guard(|| {
        if out.is_null() {
            return fail(HilbStatus::NullPointer, "out is NULL");
        }
        match read_str(name) {
            Ok(name) => store_dataset(preset(name), out),
            Err(status) => status,
        }
    })
}

/// Parse a dataset from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hilb_dataset_from_json(json: *const c_char, out: *mut *mut HilbDataset) -> HilbStatus {
    guard(|| {
        if out.is_null() {
            return fail(HilbStatus::NullPointer, "out is NULL");
        }
        match read_str(json) {
            Ok(text) => store_dataset(parse_dataset(text), out),
            Err(status) => status,
        }
    })
}

/// # Safety
/// `ds` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hilb_dataset_free(ds: *mut HilbDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Largest stored power `K` of the line bundle, or -1 for an empty table.
///
/// # Safety
/// `ds` must be a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn hilb_dataset_max_power(ds: *const HilbDataset) -> i64 {
    match ds.as_ref() {
        Some(ds) => ds.inner.table.max_power().map_or(-1, i64::from),
        None => -1,
    }
}

/// `h^{p,q}(Hilb^n S, L_n)`.
///
/// # Safety
/// `ds` must be a live dataset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hilb_hodge(ds: *const HilbDataset, n: u32, out: *mut *mut HilbPolynomial) -> HilbStatus {
    guard(|| match (ds.as_ref(), out.is_null()) {
        (Some(ds), false) => store_polynomial(n, engine::hilb_hodge(&ds.inner.table, n), out),
        _ => fail(HilbStatus::NullPointer, "dataset or out is NULL"),
    })
}

/// Hodge numbers of the nested Hilbert scheme `Hilb^{n,n+1} S`.
///
/// # Safety
/// `ds` must be a live dataset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hilb_nested(ds: *const HilbDataset, n: u32, out: *mut *mut HilbPolynomial) -> HilbStatus {
    guard(|| match (ds.as_ref(), out.is_null()) {
        (Some(ds), false) => {
            let d = &ds.inner;
            store_polynomial(n, nested_hodge(&d.table, d.nested_or_main(), n), out)
        }
        _ => fail(HilbStatus::NullPointer, "dataset or out is NULL"),
    })
}

/// Hodge numbers of `S^{(a)}` with coefficients in `(L^k)_{(a)}`.
///
/// # Safety
/// `ds` must be a live dataset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hilb_sym_power(
    ds: *const HilbDataset,
    a: u32,
    k: u32,
    out: *mut *mut HilbPolynomial,
) -> HilbStatus {
    guard(|| match (ds.as_ref(), out.is_null()) {
        (Some(ds), false) => {
            let table = &ds.inner.table;
            let poly = table
                .diamond(k)
                .map(|d| sym_power_twisted_hodge(d, a))
                .ok_or(EngineError::InsufficientPowers {
                    table: "diamonds",
                    required: k,
                    available: table.max_power(),
                });
            store_polynomial(a, poly, out)
        }
        _ => fail(HilbStatus::NullPointer, "dataset or out is NULL"),
    })
}

/// # Safety
/// `poly` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hilb_poly_free(poly: *mut HilbPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Complex dimension of the space the polynomial describes.
///
/// # Safety
/// `poly` must be a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn hilb_poly_space_dim(poly: *const HilbPolynomial) -> u32 {
    poly.as_ref().map_or(0, |p| p.inner.space_dim())
}

/// Writes `h^{p,q}` to `out`; `HILB_STATUS_OVERFLOW` if it does not fit 64 bits.
///
/// # Safety
/// `poly` must be a live polynomial handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hilb_poly_get(poly: *const HilbPolynomial, p: u32, q: u32, out: *mut u64) -> HilbStatus {
    guard(|| match (poly.as_ref(), out.is_null()) {
        (Some(poly), false) => match poly.inner.get(p, q).to_u64() {
            Some(v) => {
                *out = v;
                HilbStatus::Ok
            }
            None => fail(HilbStatus::Overflow, format!("h^{{{p},{q}}} exceeds 64 bits")),
        },
        _ => fail(HilbStatus::NullPointer, "polynomial or out is NULL"),
    })
}

/// JSON rendering `{"n", "space_dim", "terms": [{"p","q","h"}]}`; release
/// with [`hilb_string_free`]. NULL on a NULL handle.
///
/// # Safety
/// `poly` must be NULL or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn hilb_poly_to_json(poly: *const HilbPolynomial) -> *mut c_char {
    match poly.as_ref() {
        Some(p) => CString::new(render_json(p.n, &p.inner)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// `h^q(Hilb^n S, T)` for `q = 0..len-1`, written to `out[q]`.
///
/// # Safety
/// `ds` must be a live dataset handle; `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn hilb_deformation_dims(ds: *const HilbDataset, n: u32, out: *mut u64, len: usize) -> HilbStatus {
    guard(|| {
        let Some(ds) = ds.as_ref() else {
            return fail(HilbStatus::NullPointer, "dataset is NULL");
        };
        if len == 0 {
            return HilbStatus::Ok;
        }
        if out.is_null() {
            return fail(HilbStatus::NullPointer, "out is NULL");
        }
        let Some(din) = ds.inner.deformation else {
            return fail(HilbStatus::InvalidArgument, "dataset has no deformation data");
        };
        let Ok(qmax) = u32::try_from(len - 1) else {
            return fail(HilbStatus::InvalidArgument, "len too large");
        };
        let dims = deformation_dims(&din, n, qmax);
        let out = std::slice::from_raw_parts_mut(out, len);
        for (slot, v) in out.iter_mut().zip(dims.values()) {
            match v.to_u64() {
                Some(v) => *slot = v,
                None => return fail(HilbStatus::Overflow, "dimension exceeds 64 bits"),
            }
        }
        HilbStatus::Ok
    })
}

/// Runs every consistency check up to `t^N`. `HILB_STATUS_VERIFY_FAILED`
/// names the first failing check in the last error message.
///
/// # Safety
/// `ds` must be a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn hilb_verify(ds: *const HilbDataset, upto: u32) -> HilbStatus {
    guard(|| {
        let Some(ds) = ds.as_ref() else {
            return fail(HilbStatus::NullPointer, "dataset is NULL");
        };
        match verify_dataset(&ds.inner, upto) {
            Ok(report) => match report.first_failure() {
                None => HilbStatus::Ok,
                Some(c) => fail(HilbStatus::VerifyFailed, format!("{}: {}", c.name, c.detail)),
            },
            Err(e) => fail(engine_status(&e), e.to_string()),
        }
    })
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hilb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
