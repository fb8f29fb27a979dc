//! C interface to `rpq-core`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Strings returned through out-parameters are
//! heap-allocated and released with [`rpq_string_free`]. Every call returns an
//! [`RpqStatus`]; on failure [`rpq_last_error`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rpq_core::arith::{parse_rational, PadicNumber, Q};
use rpq_core::deform::{DeformParams, Preset};
use rpq_core::error::Error;
use rpq_core::gammabeta::{gamma_rpq, DEFAULT_TRUNCATION};
use rpq_core::padicfun::{padic_gamma_rpq, TwistParams};
use rpq_core::spinzeta::zeta_spin_half;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Domain = 4,
    Pole = 5,
    NoConvergence = 6,
    NotExact = 7,
    Panic = 8,
}

impl From<&Error> for RpqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) => RpqStatus::Parse,
            Error::InvalidParameter(_) | Error::SingularDeformation(_) | Error::DivisionByZero(_) => {
                RpqStatus::InvalidArgument
            }
            Error::ConvergenceDomain(_) | Error::InvalidRegime(_) | Error::Singularity(_) => RpqStatus::Domain,
            Error::Pole(_) | Error::PoleAtOrigin(_) => RpqStatus::Pole,
            Error::NoConvergence(_) | Error::ConvergenceUnverified(_) => RpqStatus::NoConvergence,
            Error::NotExact(_) => RpqStatus::NotExact,
        }
    }
}

/// Deformation parameters: structure function, `p`, `q` and twist bases.
pub struct RpqParams(DeformParams<Q>);

/// A p-adic number with its prime and relative precision.
pub struct RpqPadic(PadicNumber);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RpqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RpqStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            RpqStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(&e.to_string());
            RpqStatus::from(&e)
        }
        Err(_) => {
            set_error("internal panic");
            RpqStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Core(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn rational(s: *const c_char, what: &'static str) -> Result<Q, Fail> {
    Ok(parse_rational(text(s, what)?)?)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    let c = CString::new(s).map_err(|_| Fail::Core(Error::InvalidParameter("interior NUL".into())))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn params_ref<'a>(h: *const RpqParams) -> Result<&'a DeformParams<Q>, Fail> {
    h.as_ref().map(|p| &p.0).ok_or(Fail::Null("params"))
}

unsafe fn padic_ref<'a>(h: *const RpqPadic) -> Result<&'a PadicNumber, Fail> {
    h.as_ref().map(|p| &p.0).ok_or(Fail::Null("padic"))
}

unsafe fn put_padic(out: *mut *mut RpqPadic, x: PadicNumber) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(RpqPadic(x)));
    Ok(())
}

/// Message for the most recent failed call on this thread, or null.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rpq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rpq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates parameters for a preset (`heine`, `quesne`, `bm`, `js`, `cj`, `hn`
/// or the full names) with rationals `p` and `q` written as `"a/b"`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_params_new(
    preset: *const c_char,
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut RpqParams,
) -> RpqStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let pr = Preset::parse(text(preset, "preset")?)?;
        let d = DeformParams::new(pr, rational(p, "p")?, rational(q, "q")?)?;
        *out = Box::into_raw(Box::new(RpqParams(d)));
        Ok(())
    })
}

/// Replaces the twist bases `ξ1, ξ2`.
///
/// # Safety
/// `params` must be a live handle; strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn rpq_params_set_twist(params: *mut RpqParams, xi1: *const c_char, xi2: *const c_char) -> RpqStatus {
    guard(|| {
        let h = params.as_mut().ok_or(Fail::Null("params"))?;
        let (a, b) = (rational(xi1, "xi1")?, rational(xi2, "xi2")?);
        h.0 = h.0.clone().with_twist(a, b);
        Ok(())
    })
}

/// # Safety
/// `params` must be null or a live handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rpq_params_free(params: *mut RpqParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// `[n]` as a reduced fraction string; negative `n` is allowed.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_number(params: *const RpqParams, n: i64, out: *mut *mut c_char) -> RpqStatus {
    guard(|| put_string(out, params_ref(params)?.number(n)?.to_string()))
}

/// `[n]!` for `n >= 0`.
///
/// # Safety
/// As for [`rpq_number`].
#[no_mangle]
pub unsafe extern "C" fn rpq_factorial(params: *const RpqParams, n: i64, out: *mut *mut c_char) -> RpqStatus {
    guard(|| put_string(out, params_ref(params)?.factorial(n)?.to_string()))
}

/// `[m]!/([n]![m-n]!)` for `0 <= n <= m`.
///
/// # Safety
/// As for [`rpq_number`].
#[no_mangle]
pub unsafe extern "C" fn rpq_binomial(params: *const RpqParams, m: i64, n: i64, out: *mut *mut c_char) -> RpqStatus {
    guard(|| put_string(out, params_ref(params)?.binomial(m, n)?.to_string()))
}

/// Gamma function at rational `z`; `exact` receives 1 when the value is
/// exact and 0 when it comes from the certified product.
///
/// # Safety
/// `params` must be a live handle; `z` NUL-terminated; `out` and `exact` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_gamma(
    params: *const RpqParams,
    z: *const c_char,
    out: *mut *mut c_char,
    exact: *mut i32,
) -> RpqStatus {
    guard(|| {
        if exact.is_null() {
            return Err(Fail::Null("exact"));
        }
        let g = gamma_rpq(&rational(z, "z")?, params_ref(params)?, DEFAULT_TRUNCATION)?;
        put_string(out, g.value.to_string())?;
        *exact = i32::from(g.exact);
        Ok(())
    })
}

/// Local spin zeta value at prime `p` and integer `s`, as a fraction string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_zeta_spin(p: u64, s: i64, out: *mut *mut c_char) -> RpqStatus {
    guard(|| put_string(out, zeta_spin_half(p, &Q::from_integer(s.into()))?.exact.to_string()))
}

/// Embeds a rational into `Q_p` with `precision` digits.
///
/// # Safety
/// `value` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_new(
    value: *const c_char,
    prime: u64,
    precision: u32,
    out: *mut *mut RpqPadic,
) -> RpqStatus {
    guard(|| put_padic(out, PadicNumber::from_rational(&rational(value, "value")?, prime, precision)?))
}

/// # Safety
/// `x` must be null or a live handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_free(x: *mut RpqPadic) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_add(a: *const RpqPadic, b: *const RpqPadic, out: *mut *mut RpqPadic) -> RpqStatus {
    guard(|| put_padic(out, padic_ref(a)?.add(padic_ref(b)?)?))
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_mul(a: *const RpqPadic, b: *const RpqPadic, out: *mut *mut RpqPadic) -> RpqStatus {
    guard(|| put_padic(out, padic_ref(a)?.mul(padic_ref(b)?)?))
}

/// Valuation of `x`; `is_zero` receives 1 (and `valuation` is untouched) for zero.
///
/// # Safety
/// `x` must be live; `valuation` and `is_zero` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_valuation(x: *const RpqPadic, valuation: *mut i64, is_zero: *mut i32) -> RpqStatus {
    guard(|| {
        if valuation.is_null() || is_zero.is_null() {
            return Err(Fail::Null("valuation"));
        }
        match padic_ref(x)?.valuation() {
            Some(v) => {
                *valuation = v;
                *is_zero = 0;
            }
            None => *is_zero = 1,
        }
        Ok(())
    })
}

/// Digit expansion `p^v * (d0 + d1*p + ...)`.
///
/// # Safety
/// `x` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_to_string(x: *const RpqPadic, out: *mut *mut c_char) -> RpqStatus {
    guard(|| put_string(out, padic_ref(x)?.to_string()))
}

/// The rational `p^v * u` with `0 <= u < p^precision`, as a fraction string.
///
/// # Safety
/// `x` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_to_rational(x: *const RpqPadic, out: *mut *mut c_char) -> RpqStatus {
    guard(|| put_string(out, padic_ref(x)?.to_rational().to_string()))
}

/// 1 when `a` and `b` agree to their joint precision.
///
/// # Safety
/// Handles must be live; `equal` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_eq(a: *const RpqPadic, b: *const RpqPadic, equal: *mut i32) -> RpqStatus {
    guard(|| {
        if equal.is_null() {
            return Err(Fail::Null("equal"));
        }
        *equal = i32::from(padic_ref(a)?.eq_to_precision(padic_ref(b)?)?);
        Ok(())
    })
}

/// p-adic gamma at integer `n`. Null `rho` and `q` select the classical
/// (Morita) function; otherwise both are rationals `"a/b"`.
///
/// # Safety
/// `rho` and `q` must be null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_padic_gamma(
    n: i64,
    prime: u64,
    precision: u32,
    rho: *const c_char,
    q: *const c_char,
    out: *mut *mut RpqPadic,
) -> RpqStatus {
    guard(|| {
        let tw = if rho.is_null() && q.is_null() {
            TwistParams::classical(prime, precision)?
        } else {
            TwistParams::new(prime, &rational(rho, "rho")?, &rational(q, "q")?, precision)?
        };
        put_padic(out, padic_gamma_rpq(n, &tw)?)
    })
}

/// Runs a check suite (`deform`, `series`, `quadrature`, `gammabeta`,
/// `padicfun`, `spinzeta`, or `all`). `passed` receives 1 when every asserted
/// identity holds; `report` (optional) receives the JSON report.
///
/// # Safety
/// `module` must be NUL-terminated; `passed` writable; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rpq_check(module: *const c_char, passed: *mut i32, report: *mut *mut c_char) -> RpqStatus {
    guard(|| {
        if passed.is_null() {
            return Err(Fail::Null("passed"));
        }
        let m = text(module, "module")?;
        let mut args: Vec<String> = vec!["rpq".into(), "check".into(), "--format".into(), "json".into()];
        if m == "all" {
            args.push("--all".into());
        } else {
            args.extend(["--module".into(), m.to_string()]);
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = rpq_core::cli::run_with(&args, &mut out, &mut err);
        if code != 0 && code != 1 {
            let msg = String::from_utf8_lossy(&err).trim().to_string();
            return Err(Fail::Core(Error::InvalidParameter(msg)));
        }
        *passed = i32::from(code == 0);
        if !report.is_null() {
            put_string(report, String::from_utf8_lossy(&out).into_owned())?;
        }
        Ok(())
    })
}
