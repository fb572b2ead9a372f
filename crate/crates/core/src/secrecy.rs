//! Achievable secrecy rates of digital secret dirty-paper coding over the
//! Gaussian wiretap channel with transmitter side information.
//!
//! The auxiliary variable is `U = X + alpha*S`. Two rate curves matter:
//! the interference-cancellation rate `R(alpha) = I(U;Y) - I(U;S)` and the
//! wiretap rate `R_Z(alpha) = I(U;Y) - I(U;Z)`. The achievable secrecy rate
//! is `max_alpha min{R, R_Z}` over `alpha` in [0, 1], which admits a
//! three-branch closed form indexed by the transmit power.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Denominator of the interference-cancellation rate: residual variance seen
/// by the codeword after MMSE-style scaling, times `P + Q + N1`.
fn rate_denominator(params: &SystemParams, alpha: f64, noise: f64) -> f64 {
    let one_minus = 1.0 - alpha;
    one_minus * one_minus * params.p * params.q + noise * (params.p + alpha * alpha * params.q)
}

/// `R(alpha) = I(U;Y) - I(U;S)` in bits per channel use.
pub fn rate_dpc(params: &SystemParams, alpha: f64) -> f64 {
    let num = params.p * (params.p + params.q + params.n1);
    0.5 * (num / rate_denominator(params, alpha, params.n1)).log2()
}

/// `R_Z(alpha) = I(U;Y) - I(U;Z)` in bits per channel use.
pub fn rate_wiretap(params: &SystemParams, alpha: f64) -> f64 {
    let num = (params.p + params.q + params.n1) * rate_denominator(params, alpha, params.n2);
    let den = (params.p + params.q + params.n2) * rate_denominator(params, alpha, params.n1);
    0.5 * (num / den).log2()
}

/// Maximizer of `R(alpha)`.
pub fn alpha_star(params: &SystemParams) -> f64 {
    params.p / (params.p + params.n1)
}

/// Crossing point where `R(alpha_0) = R_Z(alpha_0)`. Undefined for Q = 0.
pub fn alpha_zero(params: &SystemParams) -> Result<f64> {
    if params.q == 0.0 {
        return Err(Error::ZeroInterference);
    }
    let (p, q, n2) = (params.p, params.q, params.n2);
    Ok((p * q + p * (q * (p + q + n2)).sqrt()) / (q * (p + n2)))
}

/// Power thresholds `(P_L, P_H)` separating the three branches of the
/// secrecy rate. Requires Q > 0.
pub fn power_thresholds(params: &SystemParams) -> Result<(f64, f64)> {
    if params.q == 0.0 {
        return Err(Error::ZeroInterference);
    }
    let (q, n1, n2) = (params.q, params.n1, params.n2);
    let p_low = -n1 - q / 2.0 + (q * q + 4.0 * q * (n2 - n1)).sqrt() / 2.0;
    let p_high = -q / 2.0 + (q * q + 4.0 * q * n2).sqrt() / 2.0;
    Ok((p_low, p_high))
}

/// Secrecy rate of the plain Gaussian wiretap channel (no interference):
/// `1/2 log2((1 + P/N1)/(1 + P/N2))`.
pub fn wiretap_rate(params: &SystemParams) -> f64 {
    0.5 * ((1.0 + params.p / params.n1) / (1.0 + params.p / params.n2)).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PowerRegime {
    /// `P <= P_L`: interference cancellation binds, `R_s = R(alpha*)`.
    LowPower,
    /// `P_L < P < P_H`: the curves cross, `R_s = R(alpha_0)`.
    MidPower,
    /// `P >= P_H`: the wiretap rate binds, `R_s = R_Z(1)`.
    HighPower,
}

/// Classification of the operating point with the active secrecy-rate branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateRegime {
    pub regime: PowerRegime,
    pub p_low: f64,
    pub p_high: f64,
    pub alpha_star: f64,
    /// May exceed 1 for large P; the max-min search stays clamped to [0, 1]
    /// and the high-power branch applies there.
    pub alpha_zero: f64,
    /// Achievable secrecy rate in bits per channel use.
    pub secrecy_rate: f64,
}

/// Evaluates the piecewise secrecy rate and classifies the power regime.
pub fn classify_regime(params: &SystemParams) -> Result<RateRegime> {
    let (p_low, p_high) = power_thresholds(params)?;
    let a_star = alpha_star(params);
    let a_zero = alpha_zero(params)?;
    let (regime, secrecy_rate) = if params.p <= p_low {
        (PowerRegime::LowPower, rate_dpc(params, a_star))
    } else if params.p >= p_high {
        (PowerRegime::HighPower, rate_wiretap(params, 1.0))
    } else {
        (PowerRegime::MidPower, rate_dpc(params, a_zero))
    };
    Ok(RateRegime {
        regime,
        p_low,
        p_high,
        alpha_star: a_star,
        alpha_zero: a_zero,
        secrecy_rate,
    })
}

const GOLDEN_RATIO_CONJ: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization on [a, b]; returns (argmax, max).
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut x1 = b - GOLDEN_RATIO_CONJ * (b - a);
    let mut x2 = a + GOLDEN_RATIO_CONJ * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..120 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN_RATIO_CONJ * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN_RATIO_CONJ * (b - a);
            f1 = f(x1);
        }
        if b - a < 1e-14 {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Numerical max-min secrecy rate: maximizes `min{R(alpha), R_Z(alpha)}`
/// over `alpha` in [0, 1] by coarse grid plus golden-section refinement.
///
/// This is the independent check that the piecewise closed form of
/// [`classify_regime`] actually solves the optimization.
pub fn secrecy_rate_maxmin(params: &SystemParams, grid_size: usize) -> Result<f64> {
    if grid_size < 100 {
        return Err(Error::InvalidInput(format!(
            "max-min grid needs at least 100 points, got {grid_size}"
        )));
    }
    let objective = |alpha: f64| rate_dpc(params, alpha).min(rate_wiretap(params, alpha));
    let mut best_idx = 0;
    let mut best_val = f64::NEG_INFINITY;
    for i in 0..=grid_size {
        let alpha = i as f64 / grid_size as f64;
        let val = objective(alpha);
        if val > best_val {
            best_val = val;
            best_idx = i;
        }
    }
    // refine on the bracket around the best grid point; keep the grid value
    // as a safeguard in case the objective is not unimodal here
    let lo = if best_idx == 0 {
        0.0
    } else {
        (best_idx - 1) as f64 / grid_size as f64
    };
    let hi = ((best_idx + 1).min(grid_size)) as f64 / grid_size as f64;
    let (_, refined) = golden_max(objective, lo, hi);
    Ok(refined.max(best_val))
}
