//! C ABI over the `polycoh` engine.
//!
//! Conventions:
//!
//! * Every fallible call returns a [`PcStatus`]; results go through out
//!   pointers that are written only on success.
//! * After a failure, [`pc_last_error`] returns a message for the calling
//!   thread. The pointer stays valid until the next failing call on that thread.
//! * Strings handed out by the library are NUL-terminated UTF-8 and must be
//!   released with [`pc_string_free`]; residue arrays with [`pc_residues_free`].
//! * Catalogs are opaque handles released with [`pc_catalog_free`].
//! * Panics never cross the boundary; they surface as `PC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polycoh::cli::parse_ring;
use polycoh::molien::verify_degrees_with_budget;
use polycoh::{corollary_output, realizable_at_prime, realizable_over, Catalog, DegreeMultiset, Error};

/// Opaque catalog handle.
pub struct PcCatalog {
    inner: Catalog,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// A degree list with an odd or zero entry.
    InvalidType = 3,
    NotAPrime = 4,
    /// Malformed ring text or catalog JSON.
    ParseError = 5,
    InvalidArgument = 6,
    SizeLimit = 7,
    Arithmetic = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: PcStatus, msg: &str) -> PcStatus {
    set_last_error(msg);
    status
}

fn status_of(err: &Error) -> PcStatus {
    match err {
        Error::InvalidType(_) => PcStatus::InvalidType,
        Error::NotAPrime(_) => PcStatus::NotAPrime,
        Error::RingParse { .. } | Error::DegreeParse { .. } | Error::CatalogParse { .. } => PcStatus::ParseError,
        Error::SizeLimit { .. } => PcStatus::SizeLimit,
        Error::Arithmetic(_) | Error::ModulusOverflow(_) => PcStatus::Arithmetic,
        Error::InvalidModulus(_) | Error::InvalidBound(_) | Error::InvalidParameters(_) => PcStatus::InvalidArgument,
    }
}

/// Runs `body`, mapping engine errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), (PcStatus, String)>) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PcStatus::Ok,
        Ok(Err((status, msg))) => fail(status, &msg),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(PcStatus::Panic, &format!("internal panic: {msg}"))
        }
    }
}

fn engine(err: Error) -> (PcStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (PcStatus, String) {
    (PcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn catalog_ref<'a>(cat: *const PcCatalog) -> Result<&'a Catalog, (PcStatus, String)> {
    cat.as_ref().map(|c| &c.inner).ok_or_else(|| null("catalog"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PcStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (PcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn degrees_arg(degrees: *const u32, len: usize) -> Result<DegreeMultiset, (PcStatus, String)> {
    let slice = if len == 0 {
        &[][..]
    } else if degrees.is_null() {
        return Err(null("degrees"));
    } else {
        std::slice::from_raw_parts(degrees, len)
    };
    DegreeMultiset::new(slice.iter().copied()).map_err(engine)
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("engine output has no NULs").into_raw()
}

/// Message for the last failure on this thread, or an empty string.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The builtin table. Never null.
#[no_mangle]
pub extern "C" fn pc_catalog_builtin() -> *mut PcCatalog {
    Box::into_raw(Box::new(PcCatalog { inner: Catalog::builtin() }))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_catalog_from_json(json: *const c_char, out: *mut *mut PcCatalog) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = str_arg(json, "json")?;
        let inner = Catalog::from_json(text).map_err(engine)?;
        *out = Box::into_raw(Box::new(PcCatalog { inner }));
        Ok(())
    })
}

/// # Safety
/// `cat` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_catalog_to_json(cat: *const PcCatalog, out: *mut *mut c_char) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c_string(catalog_ref(cat)?.to_json());
        Ok(())
    })
}

/// # Safety
/// `cat` must be null or come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_catalog_free(cat: *mut PcCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Realizability report as JSON for the ring described by `ring`
/// (`Z`, `Q`, `F_p`, `Z[1/a,...]`, `primes=...`).
///
/// # Safety
/// `degrees` must point to `len` values (or be null when `len` is 0), `ring`
/// must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_check(
    cat: *const PcCatalog,
    degrees: *const u32,
    len: usize,
    ring: *const c_char,
    out_json: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let cat = catalog_ref(cat)?;
        let target = degrees_arg(degrees, len)?;
        let spec = parse_ring(str_arg(ring, "ring")?).map_err(engine)?;
        let report = realizable_over(cat, &target, &spec).map_err(engine)?;
        *out_json = c_string(report.to_json());
        Ok(())
    })
}

/// Writes whether the type is realizable at `p`. When it is and
/// `out_witness` is non-null, the witness is written there as text such as
/// `SU(2) + C_3`; otherwise `*out_witness` is set to null.
///
/// # Safety
/// Pointer arguments as for [`pc_check`]; `out_realizable` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_realizable_at_prime(
    cat: *const PcCatalog,
    degrees: *const u32,
    len: usize,
    p: u64,
    out_realizable: *mut bool,
    out_witness: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        if out_realizable.is_null() {
            return Err(null("out_realizable"));
        }
        let cat = catalog_ref(cat)?;
        let target = degrees_arg(degrees, len)?;
        let witness = realizable_at_prime(cat, &target, p).map_err(engine)?;
        *out_realizable = witness.is_some();
        if !out_witness.is_null() {
            *out_witness = witness.map_or(ptr::null_mut(), |d| c_string(d.to_string()));
        }
        Ok(())
    })
}

/// The allowed prime set as a modulus and sorted residues. The residue array
/// is null when empty; release it with [`pc_residues_free`].
///
/// # Safety
/// Pointer arguments as for [`pc_check`]; all out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pc_prime_set(
    cat: *const PcCatalog,
    degrees: *const u32,
    len: usize,
    out_modulus: *mut u64,
    out_residues: *mut *mut u64,
    out_len: *mut usize,
) -> PcStatus {
    guard(|| {
        if out_modulus.is_null() || out_residues.is_null() || out_len.is_null() {
            return Err(null("an out pointer"));
        }
        let cat = catalog_ref(cat)?;
        let target = degrees_arg(degrees, len)?;
        let (n, residues) = corollary_output(cat, &target).map_err(engine)?;
        *out_modulus = n;
        *out_len = residues.len();
        *out_residues =
            if residues.is_empty() { ptr::null_mut() } else { Box::into_raw(residues.into_boxed_slice()).cast() };
        Ok(())
    })
}

/// # Safety
/// `residues` and `len` must come from one [`pc_prime_set`] call.
#[no_mangle]
pub unsafe extern "C" fn pc_residues_free(residues: *mut u64, len: usize) {
    if !residues.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(residues, len)));
    }
}

/// Molien-series check of the classical degrees of `G(m, r, n)`. A `budget`
/// of 0 selects the default element cap.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_verify_degrees(m: u32, r: u32, n: u32, budget: u64, out: *mut bool) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let budget = if budget == 0 { polycoh::molien::DEFAULT_BUDGET } else { budget };
        *out = verify_degrees_with_budget(m, r, n, budget).map_err(engine)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
