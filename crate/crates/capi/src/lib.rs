//! C ABI for the sjscc library.
//!
//! Conventions: every function returns an [`SjsccStatus`]; results come back
//! through out-pointers, which are written only on `SJSCC_STATUS_OK`.
//! A parameter set is an opaque handle created by [`sjscc_params_new`] and
//! released by [`sjscc_params_free`]. All rates are bits per channel use,
//! all powers and variances linear. The generated header lives in
//! `include/sjscc.h`.

use std::os::raw::c_char;

use sjscc::error::Error;
use sjscc::mismatch::{estimate_exponent, mismatch_distortion, MismatchScheme};
use sjscc::params::{MismatchParams, SystemParams};
use sjscc::schemes::{
    feasibility, optimal_distortion, scheme1_distortion, scheme1_optimal, scheme2_distortion,
    scheme3_distortion, scheme3_params, scheme3_rate_window, separation_distortion,
};
use sjscc::secrecy::{classify_regime, wiretap_rate, PowerRegime};
use sjscc::sim::{simulate_scheme, SimConfig, SimScheme};
use sjscc::SchemeIParams;

/// Status code of every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SjsccStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A power or variance that must be positive was not.
    NonPositiveParam = 2,
    /// The eavesdropper channel must be strictly noisier than the main one.
    DegradednessViolation = 3,
    /// A covariance system was numerically singular.
    SingularCovariance = 4,
    /// Interference power is zero; the regime machinery is degenerate.
    ZeroInterference = 5,
    /// A quantization rate exceeded its admissible maximum.
    RateTooHigh = 6,
    /// The closed-form optimum fell outside the feasible region.
    InfeasibleOptimum = 7,
    /// The admissible embedding-gain interval is empty.
    EmptyInterval = 8,
    /// Simulation of an infeasible point without the force flag.
    InfeasibleWithoutOverride = 9,
    /// Malformed configuration input.
    InvalidInput = 10,
}

fn status_of(err: &Error) -> SjsccStatus {
    match err {
        Error::NonPositiveParam { .. } => SjsccStatus::NonPositiveParam,
        Error::DegradednessViolation { .. } => SjsccStatus::DegradednessViolation,
        Error::UnknownLabel(_) => SjsccStatus::InvalidInput,
        Error::SingularCovariance { .. } => SjsccStatus::SingularCovariance,
        Error::ZeroInterference => SjsccStatus::ZeroInterference,
        Error::RateTooHigh { .. } => SjsccStatus::RateTooHigh,
        Error::InfeasibleOptimum { .. } => SjsccStatus::InfeasibleOptimum,
        Error::EmptyInterval { .. } => SjsccStatus::EmptyInterval,
        Error::InfeasibleWithoutOverride => SjsccStatus::InfeasibleWithoutOverride,
        Error::InvalidInput(_) => SjsccStatus::InvalidInput,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sjscc_status_message(status: SjsccStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        SjsccStatus::Ok => b"ok\0",
        SjsccStatus::NullArgument => b"null pointer argument\0",
        SjsccStatus::NonPositiveParam => b"parameter must be positive\0",
        SjsccStatus::DegradednessViolation => b"eavesdropper must be strictly degraded\0",
        SjsccStatus::SingularCovariance => b"covariance is numerically singular\0",
        SjsccStatus::ZeroInterference => b"interference power is zero\0",
        SjsccStatus::RateTooHigh => b"quantization rate too high\0",
        SjsccStatus::InfeasibleOptimum => b"closed-form optimum is infeasible\0",
        SjsccStatus::EmptyInterval => b"admissible gain interval is empty\0",
        SjsccStatus::InfeasibleWithoutOverride => b"operating point infeasible; set force\0",
        SjsccStatus::InvalidInput => b"invalid input\0",
    };
    message.as_ptr() as *const c_char
}

/// Opaque handle to a validated parameter set.
pub struct SjsccParams {
    inner: SystemParams,
}

/// Creates and validates a parameter set. On success writes a handle that
/// must be released with `sjscc_params_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sjscc_params_new(
    p: f64,
    q: f64,
    n1: f64,
    n2: f64,
    sigma_v2: f64,
    out: *mut *mut SjsccParams,
) -> SjsccStatus {
    if out.is_null() {
        return SjsccStatus::NullArgument;
    }
    match SystemParams::new(p, q, n1, n2, sigma_v2) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(SjsccParams { inner }));
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Releases a handle created by `sjscc_params_new`. Null is a no-op.
///
/// # Safety
/// `params` must be null or a pointer from `sjscc_params_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sjscc_params_free(params: *mut SjsccParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

unsafe fn deref<'a>(params: *const SjsccParams) -> Option<&'a SystemParams> {
    params.as_ref().map(|p| &p.inner)
}

/// Power regime of the piecewise secrecy rate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SjsccRegime {
    LowPower = 0,
    MidPower = 1,
    HighPower = 2,
    /// Q = 0: the rate degenerates to the plain wiretap-channel expression;
    /// threshold and crossing fields are NaN.
    ZeroInterference = 3,
}

/// Regime classification result.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SjsccRegimeReport {
    pub regime: SjsccRegime,
    pub p_low: f64,
    pub p_high: f64,
    pub alpha_star: f64,
    pub alpha_zero: f64,
    /// Achievable secrecy rate, bits per channel use.
    pub secrecy_rate_bits: f64,
}

/// Classifies the power regime and evaluates the achievable secrecy rate.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_regime(
    params: *const SjsccParams,
    out: *mut SjsccRegimeReport,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    if p.q == 0.0 {
        *out = SjsccRegimeReport {
            regime: SjsccRegime::ZeroInterference,
            p_low: f64::NAN,
            p_high: f64::NAN,
            alpha_star: p.p / (p.p + p.n1),
            alpha_zero: f64::NAN,
            secrecy_rate_bits: wiretap_rate(p),
        };
        return SjsccStatus::Ok;
    }
    match classify_regime(p) {
        Ok(regime) => {
            *out = SjsccRegimeReport {
                regime: match regime.regime {
                    PowerRegime::LowPower => SjsccRegime::LowPower,
                    PowerRegime::MidPower => SjsccRegime::MidPower,
                    PowerRegime::HighPower => SjsccRegime::HighPower,
                },
                p_low: regime.p_low,
                p_high: regime.p_high,
                alpha_star: regime.alpha_star,
                alpha_zero: regime.alpha_zero,
                secrecy_rate_bits: regime.secrecy_rate,
            };
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Minimum achievable distortion `sigma_v2 * N1 / (P + N1)`.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_optimal_distortion(
    params: *const SjsccParams,
    out: *mut f64,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    *out = optimal_distortion(p);
    SjsccStatus::Ok
}

/// Distortion of the separation-based scheme.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_separation_distortion(
    params: *const SjsccParams,
    out: *mut f64,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    match separation_distortion(p) {
        Ok(report) => {
            *out = report.closed_form_d;
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Distortion-optimal embedding pair of the direct scheme.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_scheme1_optimal(
    params: *const SjsccParams,
    out_alpha: *mut f64,
    out_k: *mut f64,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out_alpha.is_null() || out_k.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    match scheme1_optimal(p) {
        Ok(sp) => {
            *out_alpha = sp.alpha;
            *out_k = sp.k;
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Distortion of the direct-embedding scheme at `(alpha, k)`, with the
/// feasibility verdict and the two constraint margins.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_scheme1_distortion(
    params: *const SjsccParams,
    alpha: f64,
    k: f64,
    out_distortion: *mut f64,
    out_feasible: *mut bool,
    out_lower_margin: *mut f64,
    out_upper_margin: *mut f64,
) -> SjsccStatus {
    let nulls = out_distortion.is_null()
        || out_feasible.is_null()
        || out_lower_margin.is_null()
        || out_upper_margin.is_null();
    let (Some(p), false) = (deref(params), nulls) else {
        return SjsccStatus::NullArgument;
    };
    let sp = SchemeIParams { alpha, k };
    let report = scheme1_distortion(p, &sp);
    let feas = feasibility(p, &sp);
    *out_distortion = report.closed_form_d;
    *out_feasible = feas.feasible;
    *out_lower_margin = feas.lower_margin;
    *out_upper_margin = feas.upper_margin;
    SjsccStatus::Ok
}

/// Distortion of the superposition scheme at digital rate `rate`.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_scheme2_distortion(
    params: *const SjsccParams,
    rate: f64,
    out: *mut f64,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    match scheme2_distortion(p, rate) {
        Ok(report) => {
            *out = report.closed_form_d;
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Distortion of the superimposed scheme at quantization rate `rate`, using
/// the distortion-optimal embedding for that rate. Also reports the chosen
/// pair and whether the rate fits the binning window.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_scheme3_distortion(
    params: *const SjsccParams,
    rate: f64,
    out_distortion: *mut f64,
    out_alpha: *mut f64,
    out_k: *mut f64,
    out_rate_admissible: *mut bool,
) -> SjsccStatus {
    let nulls = out_distortion.is_null()
        || out_alpha.is_null()
        || out_k.is_null()
        || out_rate_admissible.is_null();
    let (Some(p), false) = (deref(params), nulls) else {
        return SjsccStatus::NullArgument;
    };
    let sp = match scheme3_params(p, rate) {
        Ok(sp) => sp,
        Err(err) => return status_of(&err),
    };
    let window = match scheme3_rate_window(p, &sp) {
        Ok(window) => window,
        Err(err) => return status_of(&err),
    };
    match scheme3_distortion(p, &sp) {
        Ok(report) => {
            *out_distortion = report.closed_form_d;
            *out_alpha = sp.alpha;
            *out_k = sp.k;
            *out_rate_admissible = window.rate_admissible;
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Scheme selector for mismatch analysis.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SjsccMismatchScheme {
    Separation = 0,
    Hda1 = 1,
    Hda1Modified = 2,
    /// Uses the `rate` argument.
    Hda2 = 3,
    /// Uses the `rate` argument.
    Hda3 = 4,
}

fn mismatch_scheme_of(scheme: SjsccMismatchScheme, rate: f64) -> MismatchScheme {
    match scheme {
        SjsccMismatchScheme::Separation => MismatchScheme::Separation,
        SjsccMismatchScheme::Hda1 => MismatchScheme::SchemeI,
        SjsccMismatchScheme::Hda1Modified => MismatchScheme::SchemeIModified,
        SjsccMismatchScheme::Hda2 => MismatchScheme::SchemeII { rate },
        SjsccMismatchScheme::Hda3 => MismatchScheme::SchemeIII { rate },
    }
}

/// Actual distortion of a scheme designed for noise `n_design` when the
/// channel realizes `n1_actual`. `rate` is ignored unless the scheme is
/// HDA2 or HDA3.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_mismatch_distortion(
    params: *const SjsccParams,
    scheme: SjsccMismatchScheme,
    n_design: f64,
    n1_actual: f64,
    rate: f64,
    out: *mut f64,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    let m = match MismatchParams::new(n_design, n1_actual) {
        Ok(m) => m,
        Err(err) => return status_of(&err),
    };
    match mismatch_distortion(p, mismatch_scheme_of(scheme, rate), &m) {
        Ok(d) => {
            *out = d;
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Least-squares distortion decay exponent over `[lo_db, hi_db]`.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_distortion_exponent(
    params: *const SjsccParams,
    scheme: SjsccMismatchScheme,
    n_design: f64,
    lo_db: f64,
    hi_db: f64,
    n_points: usize,
    rate: f64,
    out_zeta: *mut f64,
    out_residual: *mut f64,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out_zeta.is_null() || out_residual.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    match estimate_exponent(
        p,
        mismatch_scheme_of(scheme, rate),
        n_design,
        lo_db,
        hi_db,
        n_points,
    ) {
        Ok(est) => {
            *out_zeta = est.zeta;
            *out_residual = est.residual;
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Monte Carlo verification result.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SjsccSimReport {
    pub empirical_d: f64,
    pub closed_form_d: f64,
    pub standard_error: f64,
    pub z_score: f64,
    pub constraints_ok: bool,
}

/// Seeded Monte Carlo run of the direct-embedding scheme at `(alpha, k)`.
/// Identical seeds give bit-identical reports.
///
/// # Safety
/// `params` must come from `sjscc_params_new`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sjscc_simulate_scheme1(
    params: *const SjsccParams,
    alpha: f64,
    k: f64,
    n_samples: u64,
    seed: u64,
    force: bool,
    out: *mut SjsccSimReport,
) -> SjsccStatus {
    let (Some(p), false) = (deref(params), out.is_null()) else {
        return SjsccStatus::NullArgument;
    };
    let config = SimConfig {
        n_samples,
        seed,
        scheme: SimScheme::SchemeI(SchemeIParams { alpha, k }),
        mismatch: None,
        force,
    };
    match simulate_scheme(&config, p) {
        Ok(report) => {
            *out = SjsccSimReport {
                empirical_d: report.empirical_d,
                closed_form_d: report.closed_form_d,
                standard_error: report.standard_error,
                z_score: report.z_score,
                constraints_ok: report.constraints_ok,
            };
            SjsccStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}
