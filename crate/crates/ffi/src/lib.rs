//! C interface to `sinegap`.
//!
//! Every fallible function returns an [`SgStatus`] and writes its results
//! through out-pointers. On failure a description is kept per thread and can
//! be read with [`sg_last_error_message`]. Numeric settings live in an
//! opaque [`SgContext`] created by [`sg_context_new`] and released with
//! [`sg_context_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sinegap::asymptotics::{eq2_ln_d, eq3_ln_d, eq5_ln_d, eq6_ln_d, BMode};
use sinegap::fredholm::{log_det, FredholmConfig, GapParams, Precision};
use sinegap::specialfn::widom_dyson_ln_c0;
use sinegap::thinning::{mc_gue_gap_estimate, thinned_gap_ln_d, McConfig};
use sinegap::{EvalReport, SineGapError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Regime = 3,
    PrecisionCeiling = 4,
    Convergence = 5,
    InvalidConfig = 6,
    BackendUnavailable = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgPrecision {
    Baseline = 0,
    Extended = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgBMode {
    Unit = 0,
    KappaUp = 1,
    Omit = 2,
}

/// A value of `ln D` with its error estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgResult {
    pub ln_d: f64,
    pub err_est: f64,
    /// Discretization order for numeric results, 0 otherwise.
    pub order: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgMcEstimate {
    pub p_hat: f64,
    pub std_err: f64,
    pub samples: usize,
}

/// Evaluation settings. Opaque to C.
pub struct SgContext {
    fredholm: FredholmConfig,
    b_mode: BMode,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &SineGapError) -> SgStatus {
    match e {
        SineGapError::Domain { .. } => SgStatus::Domain,
        SineGapError::Regime(_) => SgStatus::Regime,
        SineGapError::PrecisionCeiling { .. } => SgStatus::PrecisionCeiling,
        SineGapError::Convergence { .. } => SgStatus::Convergence,
        SineGapError::InvalidConfig(_) => SgStatus::InvalidConfig,
        SineGapError::BackendUnavailable(_) => SgStatus::BackendUnavailable,
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guarded(f: impl FnOnce() -> Result<(), SgFail>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(SgFail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SgStatus::NullPointer
        }
        Ok(Err(SgFail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SgStatus::Panic
        }
    }
}

enum SgFail {
    Null(&'static str),
    Lib(SineGapError),
}

impl From<SineGapError> for SgFail {
    fn from(e: SineGapError) -> Self {
        SgFail::Lib(e)
    }
}

unsafe fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, SgFail> {
    out.as_mut().ok_or(SgFail::Null("out"))
}

unsafe fn context<'a>(ctx: *const SgContext) -> Result<&'a SgContext, SgFail> {
    ctx.as_ref().ok_or(SgFail::Null("ctx"))
}

unsafe fn context_mut<'a>(ctx: *mut SgContext) -> Result<&'a mut SgContext, SgFail> {
    ctx.as_mut().ok_or(SgFail::Null("ctx"))
}

fn result_of(r: &EvalReport) -> SgResult {
    SgResult {
        ln_d: r.ln_d,
        err_est: r.err_est,
        order: r.order.unwrap_or(0),
    }
}

/// A context with default settings: baseline precision, tolerance 1e-10,
/// `B` omitted in the elliptic formula.
#[no_mangle]
pub extern "C" fn sg_context_new() -> *mut SgContext {
    Box::into_raw(Box::new(SgContext {
        fredholm: FredholmConfig::default(),
        b_mode: BMode::Omit,
    }))
}

/// # Safety
/// `ctx` must come from [`sg_context_new`] and not have been freed; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn sg_context_free(ctx: *mut SgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn sg_context_set_tolerance(ctx: *mut SgContext, tol: f64) -> SgStatus {
    guarded(|| {
        let c = context_mut(ctx)?;
        if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
            return Err(
                SineGapError::InvalidConfig(format!("tolerance {tol} must be positive")).into(),
            );
        }
        c.fredholm.target_tol = tol;
        Ok(())
    })
}

/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn sg_context_set_precision(
    ctx: *mut SgContext,
    precision: SgPrecision,
) -> SgStatus {
    guarded(|| {
        context_mut(ctx)?.fredholm.precision = match precision {
            SgPrecision::Baseline => Precision::Baseline,
            SgPrecision::Extended => Precision::Extended,
        };
        Ok(())
    })
}

/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn sg_context_set_unsafe_envelope(
    ctx: *mut SgContext,
    enabled: bool,
) -> SgStatus {
    guarded(|| {
        context_mut(ctx)?.fredholm.unsafe_envelope = enabled;
        Ok(())
    })
}

/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn sg_context_set_b_mode(ctx: *mut SgContext, mode: SgBMode) -> SgStatus {
    guarded(|| {
        context_mut(ctx)?.b_mode = match mode {
            SgBMode::Unit => BMode::Unit,
            SgBMode::KappaUp => BMode::KappaUp,
            SgBMode::Omit => BMode::Omit,
        };
        Ok(())
    })
}

/// Numerical `ln D(s, γ)`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_log_det(
    ctx: *const SgContext,
    s: f64,
    gamma: f64,
    out: *mut SgResult,
) -> SgStatus {
    guarded(|| {
        let (c, out) = (context(ctx)?, out_ref(out)?);
        *out = result_of(&log_det(&GapParams::from_gamma(s, gamma)?, &c.fredholm)?);
        Ok(())
    })
}

/// Numerical `ln D` with `γ = 1 − e^{−2v}`; accurate when `γ` is close to one.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_log_det_v(
    ctx: *const SgContext,
    s: f64,
    v: f64,
    out: *mut SgResult,
) -> SgStatus {
    guarded(|| {
        let (c, out) = (context(ctx)?, out_ref(out)?);
        *out = result_of(&log_det(&GapParams::from_v(s, v)?, &c.fredholm)?);
        Ok(())
    })
}

/// Gap probability of the thinned process at unit mean spacing, `ln D(s/γ, γ)`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_thinned_log_det(
    ctx: *const SgContext,
    s: f64,
    gamma: f64,
    out: *mut SgResult,
) -> SgStatus {
    guarded(|| {
        let (c, out) = (context(ctx)?, out_ref(out)?);
        *out = result_of(&thinned_gap_ln_d(s, gamma, &c.fredholm)?);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_asymptotic_gaussian(s: f64, out: *mut SgResult) -> SgStatus {
    guarded(|| {
        let out = out_ref(out)?;
        *out = result_of(&eq2_ln_d(s)?);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_asymptotic_fixed_v(s: f64, v: f64, out: *mut SgResult) -> SgStatus {
    guarded(|| {
        let out = out_ref(out)?;
        *out = result_of(&eq3_ln_d(s, v)?);
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_asymptotic_ladder(s: f64, v: f64, out: *mut SgResult) -> SgStatus {
    guarded(|| {
        let out = out_ref(out)?;
        *out = result_of(&eq5_ln_d(s, v)?);
        Ok(())
    })
}

/// Elliptic-regime formula, with `B` treated as set on the context.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_asymptotic_elliptic(
    ctx: *const SgContext,
    s: f64,
    v: f64,
    out: *mut SgResult,
) -> SgStatus {
    guarded(|| {
        let (c, out) = (context(ctx)?, out_ref(out)?);
        *out = result_of(&eq6_ln_d(s, v, c.b_mode)?);
        Ok(())
    })
}

/// Monte Carlo estimate of the thinned GUE bulk gap probability.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_mc_estimate(
    matrix_size: usize,
    sample_count: usize,
    seed: u64,
    s: f64,
    gamma: f64,
    out: *mut SgMcEstimate,
) -> SgStatus {
    guarded(|| {
        let out = out_ref(out)?;
        let est = mc_gue_gap_estimate(&McConfig {
            matrix_size,
            sample_count,
            seed,
            s,
            gamma,
        })?;
        *out = SgMcEstimate {
            p_hat: est.p_hat,
            std_err: est.stderr,
            samples: est.samples,
        };
        Ok(())
    })
}

/// `ln c₀ = (1/12) ln 2 + 3ζ′(−1)`.
#[no_mangle]
pub extern "C" fn sg_widom_dyson_ln_c0() -> f64 {
    widom_dyson_ln_c0()
}

/// Message for the last failure on this thread, or null if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn sg_status_name(status: SgStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        SgStatus::Ok => b"ok\0",
        SgStatus::NullPointer => b"null_pointer\0",
        SgStatus::Domain => b"domain\0",
        SgStatus::Regime => b"regime\0",
        SgStatus::PrecisionCeiling => b"precision_ceiling\0",
        SgStatus::Convergence => b"convergence\0",
        SgStatus::InvalidConfig => b"invalid_config\0",
        SgStatus::BackendUnavailable => b"backend_unavailable\0",
        SgStatus::Panic => b"panic\0",
    };
    s.as_ptr().cast()
}
