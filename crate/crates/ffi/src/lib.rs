//! C ABI for `selberg_periods`.
//!
//! Spectra are opaque handles created by `sp_spectrum_*` and released with
//! [`sp_spectrum_free`]. Every entry point returns an [`SpStatus`]; on failure the
//! message is available from [`sp_last_error_message`] on the same thread.

use selberg_periods::selberg_local::{residue_coeff_psi_l, residue_coeff_xi, ResidueQuery, Sign};
use selberg_periods::series::{eval_psi, eval_psi_l_direct, eval_psi_sum_p, eval_xi, SeriesValue};
use selberg_periods::spectra::{gen_pell, gen_synthetic, load_spectrum, LengthSpectrum, PrimitiveClass};
use selberg_periods::{Complex, Error, SeriesConfig};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Numeric = 4,
    Io = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpSeriesValue {
    pub value: SpComplex,
    pub truncation_bound: f64,
    pub terms_used: u64,
}

/// Opaque spectrum handle.
pub struct SpSpectrum {
    inner: LengthSpectrum,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SpStatus {
    match e.exit_code() {
        2 => SpStatus::InvalidArgument,
        3 => SpStatus::Domain,
        4 => SpStatus::Numeric,
        _ => SpStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SpStatus, String)>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            SpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SpStatus::Panic
        }
    }
}

fn lib<T>(r: selberg_periods::Result<T>) -> Result<T, (SpStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (SpStatus, String) {
    (SpStatus::NullPointer, format!("{what} is null"))
}

fn to_value(v: SeriesValue) -> SpSeriesValue {
    let (re, im) = v.value.to_f64();
    SpSeriesValue {
        value: SpComplex { re, im },
        truncation_bound: v.truncation_bound,
        terms_used: v.terms_used as u64,
    }
}

unsafe fn put_handle(out: *mut *mut SpSpectrum, spec: LengthSpectrum) -> Result<(), (SpStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(SpSpectrum { inner: spec }));
    Ok(())
}

/// Loads a JSON Lines spectrum file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum_load(path: *const c_char, out: *mut *mut SpSpectrum) -> SpStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let p = CStr::from_ptr(path)
            .to_str()
            .map_err(|e| (SpStatus::InvalidArgument, e.to_string()))?;
        let spec = lib(load_spectrum(p))?;
        put_handle(out, spec)
    })
}

/// Builds a spectrum from parallel arrays of norms and weights, multiplicity 1.
///
/// # Safety
/// The three arrays must hold `len` elements each; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum_from_norms(
    norms: *const f64,
    weights_re: *const f64,
    weights_im: *const f64,
    len: usize,
    out: *mut *mut SpSpectrum,
) -> SpStatus {
    guard(|| {
        if len > 0 && (norms.is_null() || weights_re.is_null() || weights_im.is_null()) {
            return Err(null("array"));
        }
        let mut classes = Vec::with_capacity(len);
        for i in 0..len {
            let w = [*weights_re.add(i), *weights_im.add(i)];
            classes.push(lib(PrimitiveClass::from_norm(*norms.add(i), w, 1, None))?);
        }
        put_handle(out, lib(LengthSpectrum::new(classes, None))?)
    })
}

/// Arithmetic spectrum for discriminants up to `d_max`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum_pell(d_max: i64, out: *mut *mut SpSpectrum) -> SpStatus {
    guard(|| put_handle(out, lib(gen_pell(d_max))?))
}

/// Seeded synthetic spectrum.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum_synthetic(
    seed: u64,
    count: usize,
    norm_min: f64,
    norm_max: f64,
    weight_scale: f64,
    out: *mut *mut SpSpectrum,
) -> SpStatus {
    guard(|| {
        put_handle(
            out,
            lib(gen_synthetic(seed, count, (norm_min, norm_max), weight_scale))?,
        )
    })
}

/// Number of classes; 0 for a null handle.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum_len(spec: *const SpSpectrum) -> usize {
    spec.as_ref().map_or(0, |s| s.inner.len())
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum_free(spec: *mut SpSpectrum) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

unsafe fn eval_with(
    spec: *const SpSpectrum,
    out: *mut SpSeriesValue,
    f: impl FnOnce(&LengthSpectrum) -> selberg_periods::Result<SeriesValue>,
) -> SpStatus {
    guard(|| {
        let s = spec.as_ref().ok_or_else(|| null("spectrum"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_value(lib(f(&s.inner))?);
        Ok(())
    })
}

fn cx(s: SpComplex) -> Complex {
    Complex::from_f64(s.re, s.im)
}

/// # Safety
/// `spec` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sp_eval_xi(
    spec: *const SpSpectrum,
    k: u32,
    s: SpComplex,
    eps: f64,
    out: *mut SpSeriesValue,
) -> SpStatus {
    eval_with(spec, out, |sp| {
        eval_xi(
            sp,
            cx(s),
            &SeriesConfig {
                k,
                eps,
                ..SeriesConfig::default()
            },
        )
    })
}

/// # Safety
/// `spec` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sp_eval_psi(
    spec: *const SpSpectrum,
    k: u32,
    s: SpComplex,
    eps: f64,
    out: *mut SpSeriesValue,
) -> SpStatus {
    eval_with(spec, out, |sp| {
        eval_psi(
            sp,
            cx(s),
            &SeriesConfig {
                k,
                eps,
                ..SeriesConfig::default()
            },
        )
    })
}

/// # Safety
/// `spec` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sp_eval_psi_l(
    spec: *const SpSpectrum,
    k: u32,
    l: u32,
    s: SpComplex,
    eps: f64,
    out: *mut SpSeriesValue,
) -> SpStatus {
    eval_with(spec, out, |sp| {
        eval_psi_l_direct(
            sp,
            l,
            cx(s),
            &SeriesConfig {
                k,
                eps,
                ..SeriesConfig::default()
            },
        )
    })
}

/// # Safety
/// `spec` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sp_eval_psi_sum_p(
    spec: *const SpSpectrum,
    k: u32,
    p: u32,
    s: SpComplex,
    eps: f64,
    out: *mut SpSeriesValue,
) -> SpStatus {
    eval_with(spec, out, |sp| {
        eval_psi_sum_p(
            sp,
            p,
            cx(s),
            &SeriesConfig {
                k,
                eps,
                ..SeriesConfig::default()
            },
        )
    })
}

fn sign_of(sign: i32) -> Result<Sign, (SpStatus, String)> {
    match sign {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => Err((SpStatus::InvalidArgument, format!("sign must be 1 or -1, got {sign}"))),
    }
}

/// Coefficient of the pole of `Xi` at `1/2 - j + sign i r`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_residue_coeff_xi(k: u32, j: u32, sign: i32, r: f64, out: *mut SpComplex) -> SpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if k < 1 {
            return Err((SpStatus::InvalidArgument, "k must be at least 1".into()));
        }
        let v = lib(residue_coeff_xi(&ResidueQuery::new(k, j, sign_of(sign)?, r)))?;
        let (re, im) = v.to_f64();
        *out = SpComplex { re, im };
        Ok(())
    })
}

/// Coefficient of the pole of `Psi^[l]` at `1/2 - j + sign i r`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_residue_coeff_psi_l(l: u32, j: u32, sign: i32, r: f64, out: *mut SpComplex) -> SpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = lib(residue_coeff_psi_l(
            &ResidueQuery::new(1, j, sign_of(sign)?, r).with_l(l),
        ))?;
        let (re, im) = v.to_f64();
        *out = SpComplex { re, im };
        Ok(())
    })
}

/// Copies the last error message of this thread into `buf`, NUL-terminated and
/// truncated to `len` bytes. Returns the full message length.
///
/// # Safety
/// `buf` must be null or hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sp_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
