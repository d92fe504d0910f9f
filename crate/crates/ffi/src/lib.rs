//! C ABI over `charq`.
//!
//! Objects cross the boundary as opaque heap handles released with the
//! matching `*_free` function. Every fallible call returns a
//! [`CharqStatus`]; on failure `charq_last_error` describes the problem.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and released with `charq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use charq::invariants::{free_algebra_character, hilbert_invariants, GroupSpec};
use charq::reconstruct::{fit_numerator, FitReport};
use charq::worked::{fhl_series, nagata_series};
use charq::{schur_expand, CharacterSeries, Error, IntSeries, LaurentPoly, NiceRational};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NonSymmetric = 4,
    NotExpandable = 5,
    NoFit = 6,
    InsufficientPrefix = 7,
    Unsupported = 8,
    Arithmetic = 9,
    OutOfRange = 10,
    Panic = 11,
}

impl From<&Error> for CharqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonSymmetric { .. } => CharqStatus::NonSymmetric,
            Error::FactorNotExpandable { .. }
            | Error::NegativeQPower { .. }
            | Error::ZeroFactor => CharqStatus::NotExpandable,
            Error::NoFit { .. } => CharqStatus::NoFit,
            Error::InsufficientPrefix { .. } => CharqStatus::InsufficientPrefix,
            Error::UnsupportedSize(_) => CharqStatus::Unsupported,
            Error::VarCountMismatch { .. }
            | Error::ExponentLength { .. }
            | Error::NotDivisible
            | Error::DivisionByZero => CharqStatus::Arithmetic,
            Error::BetaOutOfRange => CharqStatus::OutOfRange,
            Error::InvalidPartition { .. }
            | Error::PartCountMismatch { .. }
            | Error::NegativeParts { .. }
            | Error::InvalidIrrational(_)
            | Error::InvalidGroup(_)
            | Error::InvalidInput(_) => CharqStatus::InvalidInput,
        }
    }
}

/// A nice rational function `P(t, q) / prod (1 - t^alpha q^k)`.
pub struct CharqRational(NiceRational);
/// A subgroup of `GL_n` from one of the supported classes.
pub struct CharqGroup(GroupSpec);
/// A truncated series in `q` with Laurent polynomial coefficients.
pub struct CharqCharacter(CharacterSeries);
/// A truncated integer series in `q`.
pub struct CharqSeries(IntSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CharqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(CharqStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CharqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            CharqStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CharqStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CharqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CharqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn from_json<T: serde::de::DeserializeOwned>(p: *const c_char) -> Result<T, Failure> {
    serde_json::from_str(read_str(p, "json")?)
        .map_err(|e| Failure(CharqStatus::InvalidInput, e.to_string()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let text = serde_json::to_string(value).expect("serializable");
    *out = CString::new(text).expect("json has no nul").into_raw();
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the most recent failure on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn charq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn charq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn charq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_from_json(
    json: *const c_char,
    out: *mut *mut CharqRational,
) -> CharqStatus {
    guard(|| put(out, CharqRational(from_json(json)?)))
}

/// The two-variable multigraded series used as the running example.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_fhl(out: *mut *mut CharqRational) -> CharqStatus {
    guard(|| put(out, CharqRational(fhl_series())))
}

/// Substitutes `t_i -> t_i q`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_substitute(
    f: *const CharqRational,
    out: *mut *mut CharqRational,
) -> CharqStatus {
    guard(|| {
        let g = borrow(f, "rational")?.0.substitute_tq()?;
        put(out, CharqRational(g))
    })
}

/// Expands by `q`-degree through `q^order`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_series(
    f: *const CharqRational,
    order: usize,
    out: *mut *mut CharqCharacter,
) -> CharqStatus {
    guard(|| {
        let ch = borrow(f, "rational")?.0.series(order)?;
        put(out, CharqCharacter(ch))
    })
}

/// Symmetrized decomposition, written as JSON.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_decompose_json(
    f: *const CharqRational,
    out: *mut *mut c_char,
) -> CharqStatus {
    guard(|| {
        let d = borrow(f, "rational")?.0.decompose()?;
        put_json(out, &d)
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_to_json(
    f: *const CharqRational,
    out: *mut *mut c_char,
) -> CharqStatus {
    guard(|| put_json(out, &borrow(f, "rational")?.0))
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn charq_rational_free(f: *mut CharqRational) {
    release(f);
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_group_from_json(
    json: *const c_char,
    out: *mut *mut CharqGroup,
) -> CharqStatus {
    guard(|| put(out, CharqGroup(from_json(json)?)))
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn charq_group_free(g: *mut CharqGroup) {
    release(g);
}

/// Character of the tensor algebra on `n` generators through `q^order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_character_free_algebra(
    n: usize,
    order: usize,
    out: *mut *mut CharqCharacter,
) -> CharqStatus {
    guard(|| {
        if n == 0 {
            return Err(Failure(
                CharqStatus::InvalidInput,
                "n must be at least 1".into(),
            ));
        }
        put(out, CharqCharacter(free_algebra_character(n, order)))
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_character_from_json(
    json: *const c_char,
    out: *mut *mut CharqCharacter,
) -> CharqStatus {
    guard(|| put(out, CharqCharacter(from_json(json)?)))
}

/// # Safety
/// `ch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_character_to_json(
    ch: *const CharqCharacter,
    out: *mut *mut c_char,
) -> CharqStatus {
    guard(|| put_json(out, &borrow(ch, "character")?.0))
}

/// # Safety
/// `ch` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn charq_character_free(ch: *mut CharqCharacter) {
    release(ch);
}

/// Hilbert series of the `G`-invariants: `D` applied per `q`-degree.
///
/// # Safety
/// `g` and `ch` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_hilbert_invariants(
    g: *const CharqGroup,
    ch: *const CharqCharacter,
    out: *mut *mut CharqSeries,
) -> CharqStatus {
    guard(|| {
        let h = hilbert_invariants(&borrow(g, "group")?.0, &borrow(ch, "character")?.0)?;
        put(out, CharqSeries(h))
    })
}

/// Nagata invariant series through `q^order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_series_nagata(
    order: usize,
    out: *mut *mut CharqSeries,
) -> CharqStatus {
    guard(|| put(out, CharqSeries(nagata_series(order))))
}

/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_series_from_json(
    json: *const c_char,
    out: *mut *mut CharqSeries,
) -> CharqStatus {
    guard(|| put(out, CharqSeries(from_json(json)?)))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_series_to_json(
    s: *const CharqSeries,
    out: *mut *mut c_char,
) -> CharqStatus {
    guard(|| put_json(out, &borrow(s, "series")?.0))
}

/// Highest stored degree; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn charq_series_order(s: *const CharqSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient of `q^degree`; `OutOfRange` if absent or not representable.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_series_coeff(
    s: *const CharqSeries,
    degree: usize,
    out: *mut i64,
) -> CharqStatus {
    guard(|| {
        let s = &borrow(s, "series")?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = (degree <= s.order())
            .then(|| num_traits::ToPrimitive::to_i64(s.coeff(degree)))
            .flatten()
            .ok_or_else(|| {
                Failure(
                    CharqStatus::OutOfRange,
                    format!("no i64 coefficient at q^{degree}"),
                )
            })?;
        *out = v;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn charq_series_free(s: *mut CharqSeries) {
    release(s);
}

/// Fits `P(q) / prod (1 - q^degs[i])`. The JSON report is written on
/// success and on `NoFit`.
///
/// # Safety
/// `s` must be a live handle; `degs` must point to `ndegs` values (or be
/// null with `ndegs == 0`); `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_fit(
    s: *const CharqSeries,
    degs: *const u32,
    ndegs: usize,
    guard_terms: usize,
    report: *mut *mut c_char,
) -> CharqStatus {
    let mut no_fit: Option<String> = None;
    let status = guard(|| {
        let c = &borrow(s, "series")?.0;
        let degs: &[u32] = match (degs.is_null(), ndegs) {
            (_, 0) => &[],
            (true, _) => return Err(null("degs")),
            (false, n) => std::slice::from_raw_parts(degs, n),
        };
        match fit_numerator(c, degs, guard_terms) {
            Ok(form) => put_json(report, &form.report()),
            Err(e @ Error::NoFit { .. }) => {
                let mut sorted = degs.to_vec();
                sorted.sort_unstable();
                put_json(report, &FitReport::no_fit(sorted, c.order()))?;
                no_fit = Some(e.to_string());
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    });
    match no_fit {
        Some(msg) if status == CharqStatus::Ok => {
            set_last_error(&msg);
            CharqStatus::NoFit
        }
        _ => status,
    }
}

/// Schur expansion of a Laurent polynomial given as JSON.
///
/// # Safety
/// `poly_json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn charq_schur_expand_json(
    poly_json: *const c_char,
    out: *mut *mut c_char,
) -> CharqStatus {
    guard(|| {
        let p: LaurentPoly = from_json(poly_json)?;
        put_json(out, &schur_expand(&p)?)
    })
}
