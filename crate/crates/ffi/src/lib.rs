//! C ABI over `clusterpos`.
//!
//! Polynomials cross the boundary as opaque `CpPoly` handles owned by the
//! caller and released with `cp_poly_free`. Strings returned by the library are
//! released with `cp_string_free`. Every fallible call returns a `CpStatus`;
//! on failure `cp_last_error` holds a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clusterpos::formulas::{greedy_rank2, mixed_expand, rank3_dyck, Rank3Params};
use clusterpos::laurent::vars;
use clusterpos::mutation::{oracle_expand, Budget, ExchangeMatrix};
use clusterpos::positivity::{check_positivity, verify_sequence};
use clusterpos::sequences::cheb;
use clusterpos::{Error, LaurentPolynomial};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    ContextMismatch = 5,
    ExponentOverflow = 6,
    NotDivisible = 7,
    AcyclicInput = 8,
    EnumerationCap = 9,
    ResourceLimit = 10,
    TheoremViolation = 11,
    InternalConsistency = 12,
    Panic = 13,
}

/// Opaque Laurent polynomial.
pub struct CpPoly(LaurentPolynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Fail {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn status_of(e: &Error) -> CpStatus {
    match e {
        Error::ContextMismatch(_) => CpStatus::ContextMismatch,
        Error::ExponentOverflow => CpStatus::ExponentOverflow,
        Error::NotDivisible(_) => CpStatus::NotDivisible,
        Error::InvalidArgument(_) => CpStatus::InvalidArgument,
        Error::AcyclicInput { .. } => CpStatus::AcyclicInput,
        Error::EnumerationCap { .. } => CpStatus::EnumerationCap,
        Error::ResourceLimit(_) => CpStatus::ResourceLimit,
        Error::TheoremViolation(_) => CpStatus::TheoremViolation,
        Error::InternalConsistency(_) => CpStatus::InternalConsistency,
        Error::Parse(_) => CpStatus::Parse,
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> CpStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CpStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            CpStatus::NullPointer
        }
        Ok(Err(Fail::Utf8(what))) => {
            set_error(format!("invalid UTF-8 in {what}"));
            CpStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CpStatus::Panic
        }
    }
}

unsafe fn poly_ref<'a>(p: *const CpPoly, what: &'static str) -> Result<&'a LaurentPolynomial, Fail> {
    p.as_ref().map(|h| &h.0).ok_or(Fail::Null(what))
}

unsafe fn put_poly(out: *mut *mut CpPoly, p: LaurentPolynomial) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(CpPoly(p)));
    Ok(())
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = v;
    Ok(())
}

unsafe fn str_arg<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8(what))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn matrix_arg(b: *const i64, rank: usize) -> Result<ExchangeMatrix, Fail> {
    let flat = slice_arg(b, rank * rank, "matrix")?;
    let rows = flat.chunks(rank.max(1)).map(|r| r.to_vec()).collect();
    Ok(ExchangeMatrix::new(rows)?)
}

fn budget_arg(max_terms: f64, max_bits: f64) -> Option<Budget> {
    if max_terms > 0.0 && max_bits > 0.0 {
        Some(Budget { max_terms, max_bits })
    } else {
        None
    }
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or NULL.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `c_n` of the Chebyshev-type sequence with parameter `r`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_cheb(r: i64, n: i64, out: *mut i64) -> CpStatus {
    guard(|| put(out, cheb(r, n)?))
}

/// Rank 2 cluster variable `x_n` for the matrix with `r` arrows.
///
/// # Safety
/// `out` must be valid for writes. The result is owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn cp_greedy_rank2(r: i64, n: i64, out: *mut *mut CpPoly) -> CpStatus {
    guard(|| put_poly(out, greedy_rank2(r, n)?))
}

/// Rank 3 cluster variable `x_n` of the cycle `(r,s,t)` in `x1, x2, x3`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_rank3_dyck(r: i64, s: i64, t: i64, n: i64, out: *mut *mut CpPoly) -> CpStatus {
    guard(|| put_poly(out, rank3_dyck(r, s, t, n)?))
}

/// Cluster monomial `x_{n+1}^p x_n^q` of the cycle `(r,s,t)` via the mixed formula.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_mixed_expand(
    r: i64,
    s: i64,
    t: i64,
    n: i64,
    p: i64,
    q: i64,
    out: *mut *mut CpPoly,
) -> CpStatus {
    guard(|| put_poly(out, mixed_expand(Rank3Params::new(r, s, t, n, p, q))?))
}

/// Cluster variable at vertex `var` (1-based) after mutating along `seq`.
/// `b` is a row-major `rank x rank` skew-symmetric matrix.
///
/// # Safety
/// `b` must point to `rank*rank` values and `seq` to `len` values.
#[no_mangle]
pub unsafe extern "C" fn cp_oracle_expand(
    b: *const i64,
    rank: usize,
    seq: *const usize,
    len: usize,
    var: usize,
    out: *mut *mut CpPoly,
) -> CpStatus {
    guard(|| {
        let m = matrix_arg(b, rank)?;
        let seq = slice_arg(seq, len, "seq")?;
        if var == 0 || var > rank {
            return Err(Error::InvalidArgument(format!("vertex {var} out of range 1..={rank}")).into());
        }
        let seed = oracle_expand(&m, seq)?;
        put_poly(out, seed.cluster[var - 1].clone())
    })
}

/// Parses `text` in the variables `names[0..nvars]`.
///
/// # Safety
/// `names` must point to `nvars` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_parse(
    names: *const *const c_char,
    nvars: usize,
    text: *const c_char,
    out: *mut *mut CpPoly,
) -> CpStatus {
    guard(|| {
        let raw = slice_arg(names, nvars, "names")?;
        let mut owned = Vec::with_capacity(nvars);
        for &n in raw {
            owned.push(str_arg(n, "names")?.to_string());
        }
        let p = LaurentPolynomial::parse(vars(&owned), str_arg(text, "text")?)?;
        put_poly(out, p)
    })
}

/// Reads the JSON form `{"vars": [...], "terms": [{"exp": [...], "coef": "..."}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_from_json(json: *const c_char, out: *mut *mut CpPoly) -> CpStatus {
    guard(|| put_poly(out, LaurentPolynomial::from_json_str(str_arg(json, "json")?)?))
}

/// JSON form of `p`; release with `cp_string_free`. NULL if `p` is NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_to_json(p: *const CpPoly) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |h| string_out(h.0.to_json_string()))
}

/// Human-readable form of `p`; release with `cp_string_free`.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_to_string(p: *const CpPoly) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |h| string_out(h.0.to_string()))
}

/// Number of nonzero terms; 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_num_terms(p: *const CpPoly) -> usize {
    p.as_ref().map_or(0, |h| h.0.len())
}

/// Smallest coefficient as a decimal string, NULL for the zero polynomial.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_min_coefficient(p: *const CpPoly) -> *mut c_char {
    p.as_ref()
        .and_then(|h| h.0.min_coefficient())
        .map_or(ptr::null_mut(), |c| string_out(c.to_string()))
}

/// Writes whether `a == b` (same variables, same terms).
///
/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_equal(a: *const CpPoly, b: *const CpPoly, out: *mut bool) -> CpStatus {
    guard(|| put(out, poly_ref(a, "a")? == poly_ref(b, "b")?))
}

/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_add(a: *const CpPoly, b: *const CpPoly, out: *mut *mut CpPoly) -> CpStatus {
    guard(|| put_poly(out, poly_ref(a, "a")?.add(poly_ref(b, "b")?)?))
}

/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_mul(a: *const CpPoly, b: *const CpPoly, out: *mut *mut CpPoly) -> CpStatus {
    guard(|| put_poly(out, poly_ref(a, "a")?.mul(poly_ref(b, "b")?)?))
}

/// Exact quotient `num / den`; `CP_STATUS_NOT_DIVISIBLE` if there is a remainder.
///
/// # Safety
/// Handles must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_div_exact(
    num: *const CpPoly,
    den: *const CpPoly,
    out: *mut *mut CpPoly,
) -> CpStatus {
    guard(|| put_poly(out, poly_ref(num, "num")?.div_exact(poly_ref(den, "den")?)?))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cp_poly_free(p: *mut CpPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Expands every cluster variable along `seq` for a rank 3 matrix and
/// writes whether all coefficients are nonnegative. Passing a non-positive
/// `max_terms` or `max_bits` disables the size guard.
///
/// # Safety
/// `b` must point to 9 values and `seq` to `len` values.
#[no_mangle]
pub unsafe extern "C" fn cp_check_positivity(
    b: *const i64,
    seq: *const usize,
    len: usize,
    max_terms: f64,
    max_bits: f64,
    out: *mut bool,
) -> CpStatus {
    guard(|| {
        let m = matrix_arg(b, 3)?;
        let seq = slice_arg(seq, len, "seq")?;
        let budget = budget_arg(max_terms, max_bits);
        put(out, check_positivity(&m, seq, budget.as_ref())?.positive)
    })
}

/// Runs the node-by-node structural check along `seq` for a non-acyclic
/// rank 3 matrix and writes whether every check passed.
///
/// # Safety
/// `b` must point to 9 values and `seq` to `len` values.
#[no_mangle]
pub unsafe extern "C" fn cp_verify_sequence(
    b: *const i64,
    seq: *const usize,
    len: usize,
    max_terms: f64,
    max_bits: f64,
    out: *mut bool,
) -> CpStatus {
    guard(|| {
        let m = matrix_arg(b, 3)?;
        let seq = slice_arg(seq, len, "seq")?;
        let budget = budget_arg(max_terms, max_bits);
        put(out, verify_sequence(&m, seq, budget.as_ref())?.passed)
    })
}
