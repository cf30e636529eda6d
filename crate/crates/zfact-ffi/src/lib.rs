//! C ABI over the zfact library.
//!
//! Conventions: every fallible call returns a [`ZfStatus`]; results come
//! back through out-pointers. Strings returned through `char **` are
//! heap-allocated and must be released with [`zf_string_free`]. Reports
//! are opaque handles released with [`zf_report_free`]. Arbitrary
//! precision values cross the boundary as decimal strings.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::str::FromStr;

use zfact::arith::Natural;
use zfact::{anomaly, legendre, theta, Error};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZfStatus {
    Ok = 0,
    InvalidBase = 1,
    NotPrime = 2,
    UndefinedLog = 3,
    OutsideUnitInterval = 4,
    NotSquarefree = 5,
    CapExceeded = 6,
    InvalidArgument = 7,
    Internal = 8,
    NullPointer = 9,
    ParseError = 10,
}

fn status_of(e: &Error) -> ZfStatus {
    match e {
        Error::InvalidBase(_) => ZfStatus::InvalidBase,
        Error::NotPrime(_) => ZfStatus::NotPrime,
        Error::UndefinedLog => ZfStatus::UndefinedLog,
        Error::OutsideUnitInterval(_) => ZfStatus::OutsideUnitInterval,
        Error::NotSquarefree(_) => ZfStatus::NotSquarefree,
        Error::CapExceeded { .. } => ZfStatus::CapExceeded,
        Error::InvalidArgument(_) => ZfStatus::InvalidArgument,
        Error::Inconsistency(_) => ZfStatus::Internal,
    }
}

fn guarded<F: FnOnce() -> ZfStatus + UnwindSafe>(f: F) -> ZfStatus {
    catch_unwind(f).unwrap_or(ZfStatus::Internal)
}

/// Writes `value` to `out` as a NUL-terminated decimal string.
fn write_string(out: *mut *mut c_char, text: String) -> ZfStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            ZfStatus::Ok
        }
        Err(_) => ZfStatus::Internal,
    }
}

/// Library version as a static string; never freed by the caller.
#[no_mangle]
pub extern "C" fn zf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through a `char **` out
/// parameter of this library, not yet freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn zf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Z_base(base^k) as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer to writable `char *` storage.
#[no_mangle]
pub unsafe extern "C" fn zf_zeros_power(base: u64, k: u64, out: *mut *mut c_char) -> ZfStatus {
    if out.is_null() {
        return ZfStatus::NullPointer;
    }
    guarded(|| match legendre::z_base_power(base, k) {
        Ok(z) => write_string(out, z.to_string()),
        Err(e) => status_of(&e),
    })
}

/// Z_base(n) for n given as a decimal string.
///
/// # Safety
/// `n_decimal` must be a valid NUL-terminated string and `out` a valid
/// pointer to writable `char *` storage.
#[no_mangle]
pub unsafe extern "C" fn zf_zeros_decimal(
    base: u64,
    n_decimal: *const c_char,
    out: *mut *mut c_char,
) -> ZfStatus {
    if n_decimal.is_null() || out.is_null() {
        return ZfStatus::NullPointer;
    }
    let text = match CStr::from_ptr(n_decimal).to_str() {
        Ok(t) => t,
        Err(_) => return ZfStatus::ParseError,
    };
    let n = match Natural::from_str(text.trim()) {
        Ok(n) => n,
        Err(_) => return ZfStatus::ParseError,
    };
    guarded(move || match legendre::z_base_n(base, &n) {
        Ok(z) => write_string(out, z.to_string()),
        Err(e) => status_of(&e),
    })
}

/// Brute-force factorial oracle (n capped at 2000); the count fits u64.
///
/// # Safety
/// `out` must be a valid pointer to writable u64 storage.
#[no_mangle]
pub unsafe extern "C" fn zf_oracle_zeros(n: u64, base: u64, out: *mut u64) -> ZfStatus {
    if out.is_null() {
        return ZfStatus::NullPointer;
    }
    guarded(|| match legendre::oracle_trailing_zeros(n, base) {
        Ok(z) => {
            // n <= 2000 keeps the count far below 2^64.
            *out = u64::try_from(&z).unwrap_or(u64::MAX);
            ZfStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// theta(base) = num/den together with the factor attaining it.
///
/// # Safety
/// All out parameters must be valid writable pointers.
#[no_mangle]
pub unsafe extern "C" fn zf_theta(
    base: u64,
    out_num: *mut u64,
    out_den: *mut u64,
    out_argmin_prime: *mut u64,
    out_argmin_exp: *mut u32,
) -> ZfStatus {
    if out_num.is_null() || out_den.is_null() || out_argmin_prime.is_null() || out_argmin_exp.is_null()
    {
        return ZfStatus::NullPointer;
    }
    guarded(|| match theta::theta(base) {
        Ok((th, (p, r))) => {
            // num is always 1; den = max r(p-1) fits u64 by construction.
            *out_num = u64::try_from(th.numer()).unwrap_or(u64::MAX);
            *out_den = u64::try_from(th.denom()).unwrap_or(u64::MAX);
            *out_argmin_prime = p;
            *out_argmin_exp = r;
            ZfStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// First `count` fractional digits of theta(base) in base `base`,
/// written into the caller-allocated buffer `out_digits`.
///
/// # Safety
/// `out_digits` must point to at least `count` writable u64 slots.
#[no_mangle]
pub unsafe extern "C" fn zf_theta_digits(
    base: u64,
    count: usize,
    out_digits: *mut u64,
) -> ZfStatus {
    if out_digits.is_null() {
        return ZfStatus::NullPointer;
    }
    guarded(|| match theta::theta_digit_stream(base, count as u64) {
        Ok(digits) => {
            let dst = std::slice::from_raw_parts_mut(out_digits, count);
            dst.copy_from_slice(&digits);
            ZfStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Opaque anomaly report handle.
pub struct ZfReport {
    inner: anomaly::AnomalyReport,
}

/// Builds the anomaly report for the cell (base, k).
///
/// # Safety
/// `out` must be a valid pointer to writable `ZfReport *` storage. The
/// returned handle must be released with [`zf_report_free`].
#[no_mangle]
pub unsafe extern "C" fn zf_report_new(base: u64, k: u64, out: *mut *mut ZfReport) -> ZfStatus {
    if out.is_null() {
        return ZfStatus::NullPointer;
    }
    guarded(|| match anomaly::report(base, k) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(ZfReport { inner }));
            ZfStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a report handle.
///
/// # Safety
/// `r` must come from [`zf_report_new`] and not be freed twice. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn zf_report_free(r: *mut ZfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

macro_rules! report_u64_getter {
    ($(#[$doc:meta])* $name:ident, $field:ident) => {
        $(#[$doc])*
        /// Returns 0 when the handle is NULL.
        ///
        /// # Safety
        /// `r` must be a live handle from `zf_report_new` or NULL.
        #[no_mangle]
        pub unsafe extern "C" fn $name(r: *const ZfReport) -> u64 {
            r.as_ref().map_or(0, |r| r.inner.$field)
        }
    };
}

report_u64_getter!(
    /// eta(b,k): base-b digit length of alpha (0 when alpha = 0).
    zf_report_eta,
    eta
);
report_u64_getter!(
    /// The proven bound floor(log_b k) + 2.
    zf_report_eta_bound,
    eta_bound
);
report_u64_getter!(
    /// Length of the final digit block differing from the theta stream.
    zf_report_unequal_digits,
    unequal_digits
);

/// alpha(b,k) as a decimal string.
///
/// # Safety
/// `r` must be a live handle; `out` valid writable `char *` storage.
#[no_mangle]
pub unsafe extern "C" fn zf_report_alpha(r: *const ZfReport, out: *mut *mut c_char) -> ZfStatus {
    report_string(r, out, |r| r.alpha.to_string())
}

/// Z_b(b^k) as a decimal string.
///
/// # Safety
/// `r` must be a live handle; `out` valid writable `char *` storage.
#[no_mangle]
pub unsafe extern "C" fn zf_report_z(r: *const ZfReport, out: *mut *mut c_char) -> ZfStatus {
    report_string(r, out, |r| r.z_value.to_string())
}

/// floor(theta(b) b^k) as a decimal string.
///
/// # Safety
/// `r` must be a live handle; `out` valid writable `char *` storage.
#[no_mangle]
pub unsafe extern "C" fn zf_report_theta_floor(
    r: *const ZfReport,
    out: *mut *mut c_char,
) -> ZfStatus {
    report_string(r, out, |r| r.theta_floor.to_string())
}

/// The whole report as one JSON object with fields b, k, z, theta_floor,
/// alpha, eta, eta_bound, unequal_digits.
///
/// # Safety
/// `r` must be a live handle; `out` valid writable `char *` storage.
#[no_mangle]
pub unsafe extern "C" fn zf_report_json(r: *const ZfReport, out: *mut *mut c_char) -> ZfStatus {
    report_string(r, out, |r| {
        serde_json::json!({
            "b": r.b,
            "k": r.k,
            "z": r.z_value.to_string(),
            "theta_floor": r.theta_floor.to_string(),
            "alpha": r.alpha.to_string(),
            "eta": r.eta,
            "eta_bound": r.eta_bound,
            "unequal_digits": r.unequal_digits,
        })
        .to_string()
    })
}

unsafe fn report_string(
    r: *const ZfReport,
    out: *mut *mut c_char,
    f: impl Fn(&anomaly::AnomalyReport) -> String,
) -> ZfStatus {
    if out.is_null() {
        return ZfStatus::NullPointer;
    }
    match r.as_ref() {
        Some(r) => write_string(out, f(&r.inner)),
        None => ZfStatus::NullPointer,
    }
}
