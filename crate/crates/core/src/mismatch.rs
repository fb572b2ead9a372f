//! Distortion under main-channel SNR mismatch.
//!
//! The transmitter designs every scheme for a noise variance `Nd`; the
//! channel realizes a smaller noise `N1`. The embedding parameters are
//! baked into the transmitted signal and stay at their design values, while
//! the receiver measures the actual noise and solves its MMSE weights under
//! it. These routines evaluate the resulting actual distortion, the
//! `alpha = 1` variant that trades design-point optimality for a unit decay
//! exponent, and the numerical estimation of that exponent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{db_to_linear, MismatchParams, SystemParams};
use crate::schemes::{achievable_secrecy_rate, scheme3_params};

/// Actual distortion of the direct-embedding scheme: embedding pair designed
/// at `Nd`, receiver weights solved at the true noise `N1`.
pub fn scheme1_mismatch(params: &SystemParams, m: &MismatchParams) -> f64 {
    let (p, q, sv2) = (params.p, params.q, params.sigma_v2);
    let (nd, n1) = (m.n_design, m.n1_actual);
    let num = sv2 * (q * nd * nd + (p * (p + q) + 2.0 * p * nd + nd * nd) * n1);
    let den = p * p * (p + q)
        + p * (p + q) * nd
        + q * nd * nd
        + (p * (2.0 * p + q) + 3.0 * p * nd + nd * nd) * n1;
    num / den
}

/// Result of the `alpha = 1` modification: distortion plus the admissible
/// embedding-gain interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModifiedMismatch {
    pub distortion: f64,
    /// Design gain, the feasibility limit evaluated at the design noise.
    pub k_prime_design: f64,
    /// Secrecy-side lower limit (at the eavesdropper noise).
    pub k_prime_lo: f64,
    /// Decodability upper limit (at the actual noise).
    pub k_prime_hi: f64,
}

fn k_prime_limit(params: &SystemParams, noise: f64) -> f64 {
    let (p, q, sv2) = (params.p, params.q, params.sigma_v2);
    (p * p + p * q - q * noise) / (sv2 * (p + q + noise))
}

/// Full interference presubtraction (`alpha = 1`) with the embedding gain
/// pushed to its design-noise feasibility limit. Slightly suboptimal at the
/// design point, but the distortion then decays linearly in the actual SNR.
pub fn scheme1_modified_mismatch(
    params: &SystemParams,
    m: &MismatchParams,
) -> Result<ModifiedMismatch> {
    let k2_design = k_prime_limit(params, m.n_design);
    if k2_design <= 0.0 {
        return Err(Error::EmptyInterval { lo: 0.0, hi: 0.0 });
    }
    let k_prime_design = k2_design.sqrt();
    let k_prime_lo = k_prime_limit(params, params.n2).max(0.0).sqrt();
    let k2_hi = k_prime_limit(params, m.n1_actual);
    if k2_hi <= 0.0 || k_prime_lo >= k2_hi.sqrt() {
        return Err(Error::EmptyInterval {
            lo: k_prime_lo,
            hi: k2_hi.max(0.0).sqrt(),
        });
    }
    let (p, q, sv2) = (params.p, params.q, params.sigma_v2);
    let n1 = m.n1_actual;
    let distortion = sv2 * (p + q) * n1
        / ((p + q) * n1 + k2_design * sv2 * (p + q + n1));
    Ok(ModifiedMismatch {
        distortion,
        k_prime_design,
        k_prime_lo,
        k_prime_hi: k2_hi.sqrt(),
    })
}

/// Mismatch distortion of the superposition scheme: the digital layer stays
/// decodable, so the analog layer behaves like the direct-embedding scheme
/// with the source replaced by the quantization error and the power by the
/// analog share.
pub fn scheme2_mismatch(params: &SystemParams, m: &MismatchParams, rate: f64) -> Result<f64> {
    let design = params.with_main_noise(m.n_design);
    let power_limit = 0.5 * ((design.p + design.n1) / design.n1).log2();
    let max = achievable_secrecy_rate(&design).min(power_limit);
    if !(rate > 0.0 && rate < max) || !rate.is_finite() {
        return Err(Error::RateTooHigh { rate, max });
    }
    let shrink = 2f64.powf(-2.0 * rate);
    let substituted = SystemParams {
        p: (params.p + m.n_design) * shrink - m.n_design,
        sigma_v2: params.sigma_v2 * shrink,
        ..*params
    };
    Ok(scheme1_mismatch(&substituted, m))
}

/// Mismatch distortion of the superimposed scheme at quantization rate `R`,
/// designed at `Nd` with the design-time three-observation estimator.
pub fn scheme3_mismatch(params: &SystemParams, m: &MismatchParams, rate: f64) -> Result<f64> {
    // the design pair must exist at the design noise
    scheme3_params(&params.with_main_noise(m.n_design), rate)?;
    let (p, q, sv2) = (params.p, params.q, params.sigma_v2);
    let (nd, n1) = (m.n_design, m.n1_actual);
    let num = sv2 * (q * nd * nd + (p * (p + q) + 2.0 * p * nd + nd * nd) * n1);
    let den = (p + nd) * (p + nd) * (p + q + n1)
        - 2f64.powf(2.0 * rate) * (nd - n1) * p * (p + q + nd);
    Ok(num / den)
}

/// Separation under mismatch: decoding succeeds at or above the design SNR
/// and the distortion stays pinned at the quantizer's design value; below
/// the design SNR decoding fails and the source variance is all that is
/// left.
pub fn separation_mismatch(params: &SystemParams, m: &MismatchParams) -> f64 {
    let design = params.with_main_noise(m.n_design);
    if m.n1_actual <= m.n_design {
        let rs = achievable_secrecy_rate(&design);
        params.sigma_v2 * 2f64.powf(-2.0 * rs)
    } else {
        params.sigma_v2
    }
}

/// Scheme selector for mismatch curves and exponent estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MismatchScheme {
    #[serde(rename = "separation")]
    Separation,
    #[serde(rename = "hda1")]
    SchemeI,
    #[serde(rename = "hda1_modified")]
    SchemeIModified,
    #[serde(rename = "hda2")]
    SchemeII { rate: f64 },
    #[serde(rename = "hda3")]
    SchemeIII { rate: f64 },
}

/// Actual distortion of one scheme at one mismatch point.
pub fn mismatch_distortion(
    params: &SystemParams,
    scheme: MismatchScheme,
    m: &MismatchParams,
) -> Result<f64> {
    m.validate_against(params)?;
    match scheme {
        MismatchScheme::Separation => Ok(separation_mismatch(params, m)),
        MismatchScheme::SchemeI => Ok(scheme1_mismatch(params, m)),
        MismatchScheme::SchemeIModified => {
            scheme1_modified_mismatch(params, m).map(|r| r.distortion)
        }
        MismatchScheme::SchemeII { rate } => scheme2_mismatch(params, m, rate),
        MismatchScheme::SchemeIII { rate } => scheme3_mismatch(params, m, rate),
    }
}

/// Distortion-versus-SNR curve of one scheme for a fixed design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MismatchCurve {
    pub snr1_db: Vec<f64>,
    pub distortion: Vec<f64>,
    pub scheme: MismatchScheme,
    pub design_noise: f64,
}

/// Sweeps the actual SNR over an inclusive dB grid.
pub fn mismatch_curve(
    params: &SystemParams,
    scheme: MismatchScheme,
    n_design: f64,
    snr1_db: &[f64],
) -> Result<MismatchCurve> {
    let mut distortion = Vec::with_capacity(snr1_db.len());
    for &snr_db in snr1_db {
        let n1_actual = params.p / db_to_linear(snr_db);
        let m = MismatchParams::new(n_design, n1_actual)?;
        distortion.push(mismatch_distortion(params, scheme, &m)?);
    }
    Ok(MismatchCurve {
        snr1_db: snr1_db.to_vec(),
        distortion,
        scheme,
        design_noise: n_design,
    })
}

/// Least-squares estimate of the distortion decay exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentEstimate {
    /// Negated slope of `log2 D` versus `log2 SNR1` over the window.
    pub zeta: f64,
    pub fit_range_db: (f64, f64),
    /// Root-mean-square residual of the fit, in log2 distortion units.
    pub residual: f64,
}

/// Estimates the decay exponent of `D(SNR1)` by a log-log regression over
/// `[lo_db, hi_db]` with `n_points` samples.
pub fn estimate_exponent(
    params: &SystemParams,
    scheme: MismatchScheme,
    n_design: f64,
    lo_db: f64,
    hi_db: f64,
    n_points: usize,
) -> Result<ExponentEstimate> {
    if n_points < 10 {
        return Err(Error::InvalidInput(format!(
            "exponent fit needs at least 10 points, got {n_points}"
        )));
    }
    let design_snr_db = 10.0 * (params.p / n_design).log10();
    if !(hi_db > lo_db) || lo_db < design_snr_db - 1e-9 {
        return Err(Error::InvalidInput(format!(
            "window [{lo_db}, {hi_db}] dB must sit above the design SNR {design_snr_db:.3} dB"
        )));
    }
    let mut xs = Vec::with_capacity(n_points);
    let mut ys = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let snr_db = lo_db + (hi_db - lo_db) * i as f64 / (n_points - 1) as f64;
        let snr = db_to_linear(snr_db);
        let m = MismatchParams::new(n_design, params.p / snr)?;
        let d = mismatch_distortion(params, scheme, &m)?;
        xs.push(snr.log2());
        ys.push(d.log2());
    }
    let n = n_points as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for i in 0..n_points {
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mut ss_res = 0.0;
    for i in 0..n_points {
        let r = ys[i] - (slope * xs[i] + intercept);
        ss_res += r * r;
    }
    Ok(ExponentEstimate {
        zeta: -slope,
        fit_range_db: (lo_db, hi_db),
        residual: (ss_res / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{
        assemble_joint, fixed_estimator_mse, linear_mmse, Label, SchemeLaw,
    };
    use crate::schemes::{optimal_distortion, scheme1_lambdas, scheme1_optimal};

    fn fig_params() -> SystemParams {
        // design noise is carried separately; N1 here is the design value
        SystemParams::new(1.0, 2.0, 0.01, 1.0, 1.0).unwrap()
    }

    #[test]
    fn matched_noise_recovers_the_designed_distortion() {
        let p = fig_params();
        let m = MismatchParams::new(0.01, 0.01).unwrap();
        let d = scheme1_mismatch(&p, &m);
        assert!((d - 0.00990099).abs() < 1e-8);
        assert!((d - optimal_distortion(&p.with_main_noise(0.01))).abs() < 1e-12);
    }

    #[test]
    fn vanishing_noise_exposes_the_interference_floor() {
        let p = fig_params();
        let m = MismatchParams::new(0.01, 1e-12).unwrap();
        let d = scheme1_mismatch(&p, &m);
        let floor = 2e-4 / 3.0302;
        assert!((d - floor).abs() / floor < 1e-6);
        assert!((d - 6.6003e-5).abs() / 6.6003e-5 < 1e-3);
    }

    /// The construction behind the mismatch closed forms: the embedding is
    /// frozen at its design value, the receiver knows the actual noise and
    /// solves its estimator weights under the actual joint law.
    #[test]
    fn designed_scheme_oracle_confirms_the_closed_form() {
        let p = fig_params();
        let nd = 0.01;
        let design = p.with_main_noise(nd);
        let sp = scheme1_optimal(&design).unwrap();
        for snr_db in [20.0, 30.0, 40.0, 60.0] {
            let n1 = p.p / db_to_linear(snr_db);
            let m = MismatchParams::new(nd, n1).unwrap();
            let actual = p.with_main_noise(n1);
            let actual_joint = assemble_joint(&actual, &SchemeLaw::SchemeI(sp));
            let oracle = linear_mmse(&actual_joint, Label::V, &[Label::Y, Label::U])
                .unwrap()
                .mmse;
            let closed = scheme1_mismatch(&p, &m);
            assert!(
                (closed - oracle).abs() < 1e-9,
                "snr {snr_db} dB: closed {closed} vs oracle {oracle}"
            );
            // the receiver-side weights are the design-pair forms evaluated
            // at the actual noise
            let (l1, l2) = scheme1_lambdas(&actual, &sp);
            let fixed =
                fixed_estimator_mse(&actual_joint, Label::V, &[Label::Y, Label::U], &[l1, l2])
                    .unwrap();
            assert!((closed - fixed).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatch_sits_between_frozen_weights_and_full_redesign() {
        let p = fig_params();
        let nd = 0.01;
        let n1 = 1e-4;
        let design = p.with_main_noise(nd);
        let sp = scheme1_optimal(&design).unwrap();
        let m = MismatchParams::new(nd, n1).unwrap();
        let closed = scheme1_mismatch(&p, &m);
        // freezing the numeric weights at their design values does worse
        let (l1d, l2d) = scheme1_lambdas(&design, &sp);
        let actual_joint = assemble_joint(&p.with_main_noise(n1), &SchemeLaw::SchemeI(sp));
        let frozen =
            fixed_estimator_mse(&actual_joint, Label::V, &[Label::Y, Label::U], &[l1d, l2d])
                .unwrap();
        assert!(frozen > closed);
        // redesigning the embedding for the actual noise does better
        assert!(closed > optimal_distortion(&p.with_main_noise(n1)));
    }

    #[test]
    fn modified_scheme_reference_point() {
        let p = fig_params();
        let m = MismatchParams::new(0.01, 0.01).unwrap();
        let result = scheme1_modified_mismatch(&p, &m).unwrap();
        assert!((result.k_prime_design - 0.995004).abs() < 1e-6);
        assert!((result.distortion - 0.03 / 3.01).abs() < 1e-9);
        // near-optimal at the design point, but not optimal
        let designed = optimal_distortion(&p.with_main_noise(0.01));
        assert!(result.distortion > designed);
        assert!(result.distortion < 1.5 * designed);
    }

    #[test]
    fn modified_scheme_distortion_vanishes_linearly() {
        let p = fig_params();
        let d1 = scheme1_modified_mismatch(&p, &MismatchParams::new(0.01, 1e-6).unwrap())
            .unwrap()
            .distortion;
        let d2 = scheme1_modified_mismatch(&p, &MismatchParams::new(0.01, 1e-7).unwrap())
            .unwrap()
            .distortion;
        assert!((d1 / d2 - 10.0).abs() < 0.01);
    }

    #[test]
    fn modified_scheme_interval_without_interference() {
        let p = SystemParams::new(1.0, 0.0, 0.01, 1.0, 1.0).unwrap();
        let m = MismatchParams::new(0.01, 0.001).unwrap();
        let result = scheme1_modified_mismatch(&p, &m).unwrap();
        let lo = (p.p * p.p / (p.sigma_v2 * (p.p + p.n2))).sqrt();
        let hi = (p.p * p.p / (p.sigma_v2 * (p.p + 0.001))).sqrt();
        assert!((result.k_prime_lo - lo).abs() < 1e-12);
        assert!((result.k_prime_hi - hi).abs() < 1e-12);
    }

    #[test]
    fn modified_scheme_rejects_dominant_interference() {
        // Q large enough that k'^2 would be negative at the design noise
        let p = SystemParams::new(0.1, 50.0, 0.2, 1.0, 1.0).unwrap();
        let m = MismatchParams::new(0.2, 0.1).unwrap();
        assert!(matches!(
            scheme1_modified_mismatch(&p, &m),
            Err(Error::EmptyInterval { .. })
        ));
    }

    #[test]
    fn superposition_mismatch_reduces_to_direct_at_tiny_rate() {
        let p = fig_params();
        let m = MismatchParams::new(0.01, 1e-4).unwrap();
        let d2 = scheme2_mismatch(&p, &m, 1e-12).unwrap();
        let d1 = scheme1_mismatch(&p, &m);
        assert!((d2 - d1).abs() / d1 < 1e-9);
    }

    #[test]
    fn superposition_mismatch_design_point_is_optimal() {
        let p = SystemParams::new(1.0, 2.0, 0.01, 1.0, 1.0).unwrap();
        let m = MismatchParams::new(0.01, 0.01).unwrap();
        let d = scheme2_mismatch(&p, &m, 1.0).unwrap();
        let expected = p.sigma_v2 * 0.01 / (p.p + 0.01);
        assert!((d - expected).abs() < 1e-12);
    }

    #[test]
    fn superposition_mismatch_curve_is_nonincreasing() {
        let p = fig_params();
        let grid: Vec<f64> = (0..=60).map(|i| 20.0 + i as f64).collect();
        let curve = mismatch_curve(&p, MismatchScheme::SchemeII { rate: 1.0 }, 0.01, &grid)
            .unwrap();
        for pair in curve.distortion.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-15);
        }
    }

    #[test]
    fn superimposed_mismatch_at_zero_rate_matches_direct() {
        let p = fig_params();
        for snr_db in [20.0, 35.0, 50.0] {
            let m = MismatchParams::new(0.01, p.p / db_to_linear(snr_db)).unwrap();
            let d3 = scheme3_mismatch(&p, &m, 0.0).unwrap();
            let d1 = scheme1_mismatch(&p, &m);
            assert!((d3 - d1).abs() < 1e-10);
        }
    }

    #[test]
    fn superimposed_mismatch_design_point() {
        let p = fig_params();
        let m = MismatchParams::new(0.01, 0.01).unwrap();
        let d = scheme3_mismatch(&p, &m, 1.0).unwrap();
        let designed = optimal_distortion(&p.with_main_noise(0.01));
        assert!((d - designed).abs() < 1e-9);
    }

    #[test]
    fn superimposed_designed_scheme_oracle() {
        let p = fig_params();
        let nd = 0.01;
        let rate = 1.0;
        let design = p.with_main_noise(nd);
        let sp = scheme3_params(&design, rate).unwrap();
        let obs = [Label::Vstar, Label::U, Label::Y];
        for snr_db in [20.0, 40.0, 55.0] {
            let n1 = p.p / db_to_linear(snr_db);
            let actual_joint = assemble_joint(&p.with_main_noise(n1), &SchemeLaw::SchemeIII(sp));
            let oracle = linear_mmse(&actual_joint, Label::V, &obs).unwrap().mmse;
            let m = MismatchParams::new(nd, n1).unwrap();
            let closed = scheme3_mismatch(&p, &m, rate).unwrap();
            assert!(
                (closed - oracle).abs() < 1e-9,
                "snr {snr_db}: closed {closed} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn separation_stays_flat_above_design() {
        let p = fig_params();
        let designed = separation_mismatch(&p, &MismatchParams::new(0.01, 0.01).unwrap());
        for snr_db in [25.0, 40.0, 70.0] {
            let m = MismatchParams::new(0.01, p.p / db_to_linear(snr_db)).unwrap();
            assert_eq!(separation_mismatch(&p, &m), designed);
        }
    }

    #[test]
    fn every_curve_passes_through_its_design_point() {
        let p = fig_params();
        let nd = 0.01;
        let m = MismatchParams::new(nd, nd).unwrap();
        let schemes = [
            MismatchScheme::SchemeI,
            MismatchScheme::SchemeIModified,
            MismatchScheme::SchemeII { rate: 1.0 },
            MismatchScheme::SchemeIII { rate: 1.0 },
        ];
        let designed_direct = optimal_distortion(&p.with_main_noise(nd));
        for scheme in schemes {
            let d = mismatch_distortion(&p, scheme, &m).unwrap();
            let reference = match scheme {
                MismatchScheme::SchemeIModified => {
                    scheme1_modified_mismatch(&p, &m).unwrap().distortion
                }
                _ => designed_direct,
            };
            assert!(
                (d - reference).abs() < 1e-9,
                "{scheme:?} design point {d} vs {reference}"
            );
        }
    }

    #[test]
    fn exponent_without_interference_is_one() {
        let p = SystemParams::new(1.0, 0.0, 0.01, 1.0, 1.0).unwrap();
        let est =
            estimate_exponent(&p, MismatchScheme::SchemeI, 0.01, 60.0, 80.0, 20).unwrap();
        assert!(est.zeta > 0.95 && est.zeta < 1.05, "zeta = {}", est.zeta);
    }

    #[test]
    fn exponent_with_interference_is_zero() {
        let p = fig_params();
        let est =
            estimate_exponent(&p, MismatchScheme::SchemeI, 0.01, 60.0, 80.0, 20).unwrap();
        assert!(est.zeta > -0.05 && est.zeta < 0.05, "zeta = {}", est.zeta);
    }

    #[test]
    fn modified_scheme_restores_the_unit_exponent() {
        let p = fig_params();
        let est = estimate_exponent(&p, MismatchScheme::SchemeIModified, 0.01, 60.0, 80.0, 20)
            .unwrap();
        assert!(est.zeta > 0.95 && est.zeta < 1.05, "zeta = {}", est.zeta);
    }

    #[test]
    fn separation_exponent_is_exactly_zero() {
        let p = fig_params();
        let est = estimate_exponent(&p, MismatchScheme::Separation, 0.01, 60.0, 80.0, 20)
            .unwrap();
        assert_eq!(est.zeta, 0.0);
        assert_eq!(est.residual, 0.0);
    }

    #[test]
    fn exponent_window_must_sit_above_design() {
        let p = fig_params();
        assert!(estimate_exponent(&p, MismatchScheme::SchemeI, 0.01, 10.0, 30.0, 20).is_err());
        assert!(estimate_exponent(&p, MismatchScheme::SchemeI, 0.01, 60.0, 80.0, 5).is_err());
    }
}
