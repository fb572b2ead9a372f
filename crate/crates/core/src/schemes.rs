//! Distortion analysis of the four transmission schemes: separation-based
//! digital coding and the three hybrid digital-analog constructions, plus
//! the feasibility region for the analog embedding and the binning-rate
//! bookkeeping of the superimposed scheme.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{assemble_joint, mutual_information, Label, SchemeLaw};
use crate::matrix::Matrix;
use crate::params::{SchemeIIIParams, SchemeIParams, SystemParams};
use crate::secrecy::{classify_regime, wiretap_rate, PowerRegime};

/// Minimum distortion of any scheme: the point-to-point value with the
/// interference presubtracted, `sigma_v2 * 2^(-2 i_eps) * N1/(P+N1)`.
pub fn optimal_distortion(params: &SystemParams) -> f64 {
    params.sigma_v2 * 2f64.powf(-2.0 * params.i_eps) * params.n1 / (params.p + params.n1)
}

/// Achievable secrecy rate for any valid parameters: the piecewise
/// closed form when Q > 0, the plain wiretap rate when Q = 0.
pub fn achievable_secrecy_rate(params: &SystemParams) -> f64 {
    match classify_regime(params) {
        Ok(regime) => regime.secrecy_rate,
        Err(_) => wiretap_rate(params),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    #[serde(rename = "separation")]
    Separation,
    #[serde(rename = "hda1")]
    SchemeI,
    #[serde(rename = "hda2")]
    SchemeII,
    #[serde(rename = "hda3")]
    SchemeIII,
}

/// Scheme parameters echoed back in a distortion report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "scheme_params")]
pub enum SchemeParamsUsed {
    #[serde(rename = "separation")]
    Separation { secrecy_rate: f64 },
    #[serde(rename = "hda1")]
    SchemeI { alpha: f64, k: f64 },
    #[serde(rename = "hda2")]
    SchemeII(SchemeIIConfig),
    #[serde(rename = "hda3")]
    SchemeIII { alpha: f64, k: f64, rate: f64 },
}

/// Closed-form distortion of one scheme at one operating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub scheme: Scheme,
    pub closed_form_d: f64,
    pub params_used: SchemeParamsUsed,
    pub constraints_ok: bool,
    pub notes: String,
}

/// Distortion of quantize-then-encode at the achievable secrecy rate:
/// `sigma_v2 * 2^(-2 R_s)`, evaluated branch by branch.
pub fn separation_distortion(params: &SystemParams) -> Result<DistortionReport> {
    let (d, secrecy_rate, notes) = if params.q == 0.0 {
        let rate = wiretap_rate(params);
        let d = params.sigma_v2 * 2f64.powf(-2.0 * rate);
        (d, rate, "zero interference: plain wiretap-channel branch".to_string())
    } else {
        let regime = classify_regime(params)?;
        let (p, q, n1, n2) = (params.p, params.q, params.n1, params.n2);
        let d = params.sigma_v2
            * match regime.regime {
                PowerRegime::LowPower => n1 / (p + n1),
                PowerRegime::MidPower => {
                    let a0 = regime.alpha_zero;
                    ((p + a0 * a0 * q) * (p + q + n1) - (p + a0 * q) * (p + a0 * q))
                        / (p * (p + q + n1))
                }
                PowerRegime::HighPower => (p + q + n2) / (p + q + n1) * n1 / n2,
            };
        (d, regime.secrecy_rate, format!("{:?} branch", regime.regime))
    };
    Ok(DistortionReport {
        scheme: Scheme::Separation,
        closed_form_d: d,
        params_used: SchemeParamsUsed::Separation { secrecy_rate },
        constraints_ok: true,
        notes,
    })
}

/// Residual interference-plus-noise variance seen by the analog estimator:
/// `((1-alpha)^2 P Q + N1 (P + alpha^2 Q)) / (P + Q + N1)`.
pub fn scheme1_mu(params: &SystemParams, alpha: f64) -> f64 {
    let one_minus = 1.0 - alpha;
    (one_minus * one_minus * params.p * params.q
        + params.n1 * (params.p + alpha * alpha * params.q))
        / (params.p + params.q + params.n1)
}

/// MMSE weights on the observation pair `[Y, U]` for the direct-embedding
/// scheme.
pub fn scheme1_lambdas(params: &SystemParams, sp: &SchemeIParams) -> (f64, f64) {
    let (p, q, n1, sv2) = (params.p, params.q, params.n1, params.sigma_v2);
    let one_minus = 1.0 - sp.alpha;
    let denom = sp.k * sp.k * sv2 * (p + q + n1)
        + one_minus * one_minus * p * q
        + n1 * (p + sp.alpha * sp.alpha * q);
    let lambda1 = -sp.k * sv2 * (p + sp.alpha * q) / denom;
    let lambda2 = sp.k * sv2 * (p + q + n1) / denom;
    (lambda1, lambda2)
}

/// Distortion of the direct-embedding scheme at `(alpha, k)`:
/// `sigma_v2 / (1 + k^2 sigma_v2 / mu)`.
///
/// Infeasible operating points still get a report (with `constraints_ok`
/// false) so region sweeps can evaluate the surface everywhere.
pub fn scheme1_distortion(params: &SystemParams, sp: &SchemeIParams) -> DistortionReport {
    let mu = scheme1_mu(params, sp.alpha);
    let d = params.sigma_v2 / (1.0 + sp.k * sp.k * params.sigma_v2 / mu);
    let feas = feasibility(params, sp);
    DistortionReport {
        scheme: Scheme::SchemeI,
        closed_form_d: d,
        params_used: SchemeParamsUsed::SchemeI {
            alpha: sp.alpha,
            k: sp.k,
        },
        constraints_ok: feas.feasible,
        notes: String::new(),
    }
}

/// Feasibility verdict for an `(alpha, k)` pair, with the slack of each
/// strict inequality (positive slack means satisfied).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// Slack of the secrecy-side constraint `I(U;SV) > I(U;Z)`.
    pub lower_margin: f64,
    /// Slack of the decodability constraint `I(U;Y) > I(U;SV)`.
    pub upper_margin: f64,
}

/// Threshold that `k^2 sigma_v2 (P+Q+N2)` must strictly exceed.
fn lower_threshold(params: &SystemParams, alpha: f64) -> f64 {
    let (p, q, n2) = (params.p, params.q, params.n2);
    -q * (p + n2) * alpha * alpha + 2.0 * p * q * alpha + p * p
}

/// Threshold that `k^2 sigma_v2 (P+Q+N1)` must stay strictly below.
fn upper_threshold(params: &SystemParams, alpha: f64) -> f64 {
    let (p, q, n1) = (params.p, params.q, params.n1);
    let one_minus = 1.0 - alpha;
    -one_minus * one_minus * p * q - n1 * (p + alpha * alpha * q) + p * (p + q + n1)
}

/// Membership in the open `(alpha, k)` region where
/// `I(U;Y) > I(U;SV) > I(U;Z)`. Strict comparisons, zero tolerance: the
/// region is open and its boundary is excluded.
pub fn feasibility(params: &SystemParams, sp: &SchemeIParams) -> Feasibility {
    let k2sv2 = sp.k * sp.k * params.sigma_v2;
    let lower_margin =
        k2sv2 * (params.p + params.q + params.n2) - lower_threshold(params, sp.alpha);
    let upper_margin =
        upper_threshold(params, sp.alpha) - k2sv2 * (params.p + params.q + params.n1);
    Feasibility {
        feasible: lower_margin > 0.0 && upper_margin > 0.0,
        lower_margin,
        upper_margin,
    }
}

/// The open set of valid `(alpha, k)` pairs, described by its k^2 bounds
/// at each alpha.
#[derive(Debug, Clone, Copy)]
pub struct FeasibilityRegion<'a> {
    params: &'a SystemParams,
}

pub fn feasibility_region(params: &SystemParams) -> FeasibilityRegion<'_> {
    FeasibilityRegion { params }
}

impl FeasibilityRegion<'_> {
    /// `k^2` must strictly exceed this (no constraint when negative).
    pub fn lower_k2(&self, alpha: f64) -> f64 {
        lower_threshold(self.params, alpha)
            / (self.params.sigma_v2 * (self.params.p + self.params.q + self.params.n2))
    }

    /// `k^2` must stay strictly below this.
    pub fn upper_k2(&self, alpha: f64) -> f64 {
        upper_threshold(self.params, alpha)
            / (self.params.sigma_v2 * (self.params.p + self.params.q + self.params.n1))
    }

    /// Lower boundary curve in k (0 where the constraint is vacuous).
    pub fn lower_boundary_k(&self, alpha: f64) -> f64 {
        self.lower_k2(alpha).max(0.0).sqrt()
    }

    /// Upper boundary curve in k.
    pub fn upper_boundary_k(&self, alpha: f64) -> f64 {
        self.upper_k2(alpha).max(0.0).sqrt()
    }

    pub fn contains(&self, alpha: f64, k: f64) -> bool {
        feasibility(self.params, &SchemeIParams { alpha, k }).feasible
    }
}

/// Membership in the closure of the feasible region: the secrecy margin must
/// be strictly positive, the decodability margin may touch zero within a
/// relative tolerance.
///
/// The distortion-minimizing pair sits exactly on the decodability boundary
/// (the inequality holds with equality there), so exact strictness would
/// accept or reject it on rounding luck. Operating points accepted here are
/// either feasible or within rounding of the boundary, where the distortion
/// is continuous.
pub fn feasibility_closure(params: &SystemParams, sp: &SchemeIParams) -> bool {
    let feas = feasibility(params, sp);
    let scale = (sp.k * sp.k * params.sigma_v2 * (params.p + params.q + params.n1))
        .max(params.p * params.p);
    feas.lower_margin > 0.0 && feas.upper_margin >= -1e-9 * scale
}

/// Distortion-minimizing embedding pair: `alpha = P/(P+N1)`,
/// `k = sqrt(P^2 / (sigma_v2 (P+N1)))`.
pub fn scheme1_optimal(params: &SystemParams) -> Result<SchemeIParams> {
    let alpha = params.p / (params.p + params.n1);
    let k = (params.p * params.p / (params.sigma_v2 * (params.p + params.n1))).sqrt();
    let sp = SchemeIParams { alpha, k };
    if !feasibility_closure(params, &sp) {
        return Err(Error::InfeasibleOptimum { alpha, k });
    }
    Ok(sp)
}

/// Configuration of the superposed digital/analog scheme at digital rate
/// `R`: power split, scalings and embedding gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchemeIIConfig {
    pub rate: f64,
    /// Digital-layer power `(P+N1)(1 - 2^(-2R))`.
    pub p1: f64,
    /// Digital-layer scaling `P1/(P1+Ph+N1)`.
    pub alpha1: f64,
    /// Analog-layer power `(P+N1) 2^(-2R) - N1`.
    pub ph: f64,
    /// Analog-layer scaling `Ph/(Ph+N1)`.
    pub alphah: f64,
    /// Embedding gain on the quantization error, `k^2 = Ph^2/(sigma_e2 (Ph+N1))`.
    pub k: f64,
    /// Quantization-error variance `sigma_v2 * 2^(-2R)`.
    pub sigma_e2: f64,
    /// Secrecy rate the digital layer actually sees, with the analog power
    /// acting as extra noise. The construction needs `R` below both this and
    /// the nominal secrecy rate.
    pub secrecy_rate_effective: f64,
}

/// Splits the power budget for the superposition scheme. The digital rate
/// must satisfy `0 < R < min(R_s, 1/2 log2((P+N1)/N1))` so both layers get
/// positive power.
pub fn scheme2_configure(params: &SystemParams, rate: f64) -> Result<SchemeIIConfig> {
    let secrecy_rate = achievable_secrecy_rate(params);
    let power_limit = 0.5 * ((params.p + params.n1) / params.n1).log2();
    let max = secrecy_rate.min(power_limit);
    if !(rate > 0.0 && rate < max) || !rate.is_finite() {
        return Err(Error::RateTooHigh { rate, max });
    }
    let shrink = 2f64.powf(-2.0 * rate);
    let p1 = (params.p + params.n1) * (1.0 - shrink);
    let ph = (params.p + params.n1) * shrink - params.n1;
    let alpha1 = p1 / (p1 + ph + params.n1);
    let alphah = ph / (ph + params.n1);
    let sigma_e2 = params.sigma_v2 * shrink;
    let k = (ph * ph / (sigma_e2 * (ph + params.n1))).sqrt();
    // what the digital layer sees: analog power on top of channel noise
    let effective = SystemParams {
        p: p1,
        n1: params.n1 + ph,
        n2: params.n2 + ph,
        ..*params
    };
    let secrecy_rate_effective = achievable_secrecy_rate(&effective);
    Ok(SchemeIIConfig {
        rate,
        p1,
        alpha1,
        ph,
        alphah,
        k,
        sigma_e2,
        secrecy_rate_effective,
    })
}

/// Distortion of the superposition scheme. The digital layer is decoded
/// exactly, so only the analog estimate of the quantization error
/// contributes; the result is `sigma_v2 N1/(P+N1)` for every admissible R.
pub fn scheme2_distortion(params: &SystemParams, rate: f64) -> Result<DistortionReport> {
    let config = scheme2_configure(params, rate)?;
    // analog layer is the direct-embedding scheme on (sigma_e2, Ph) with the
    // digital signal folded into the interference
    let sub = SystemParams {
        p: config.ph,
        q: params.q + config.p1,
        sigma_v2: config.sigma_e2,
        ..*params
    };
    let mu = scheme1_mu(&sub, config.alphah);
    let d = config.sigma_e2 / (1.0 + config.k * config.k * config.sigma_e2 / mu);
    Ok(DistortionReport {
        scheme: Scheme::SchemeII,
        closed_form_d: d,
        params_used: SchemeParamsUsed::SchemeII(config),
        constraints_ok: true,
        notes: String::new(),
    })
}

/// Embedding pair that makes the superimposed scheme optimal at rate `R`:
/// `alpha = P/(P+N1)`, `k^2 = P (P+N1-N1*2^(2R)) / (sigma_v2 (P+N1))`.
pub fn scheme3_params(params: &SystemParams, rate: f64) -> Result<SchemeIIIParams> {
    let max = 0.5 * ((params.p + params.n1) / params.n1).log2();
    if !(rate >= 0.0) || !rate.is_finite() || rate > max + 1e-9 {
        return Err(Error::RateTooHigh { rate, max });
    }
    let alpha = params.p / (params.p + params.n1);
    let k2 = params.p * (params.p + params.n1 - params.n1 * 2f64.powf(2.0 * rate))
        / (params.sigma_v2 * (params.p + params.n1));
    // k2 can round slightly negative at the rate limit
    Ok(SchemeIIIParams {
        alpha,
        k: k2.max(0.0).sqrt(),
        rate,
    })
}

/// Distortion of the superimposed scheme: assemble the observation
/// covariance over `[V*, U, Y]` and the correlation with `V`, solve, and
/// return `sigma_v2 - Gamma^T Lambda^{-1} Gamma`.
pub fn scheme3_distortion(
    params: &SystemParams,
    sp: &SchemeIIIParams,
) -> Result<DistortionReport> {
    let sigma_e2 = sp.sigma_e2(params.sigma_v2);
    let sigma_vstar2 = params.sigma_v2 - sigma_e2;
    let (p, q, n1) = (params.p, params.q, params.n1);
    let var_u = p + sp.alpha * sp.alpha * q + sp.k * sp.k * sigma_e2;
    let cov_uy = p + sp.alpha * q;
    let var_y = p + q + n1;

    let explained = if sigma_vstar2 == 0.0 {
        // R = 0: the reconstruction is degenerate, estimate from (U, Y) alone
        let lambda = Matrix::from_rows(&[&[var_u, cov_uy], &[cov_uy, var_y]]);
        let gamma = [sp.k * sigma_e2, 0.0];
        let coeff = lambda.solve(&gamma).map_err(|_| Error::SingularCovariance {
            context: "degenerate observation covariance of the superimposed scheme".into(),
        })?;
        coeff[0] * gamma[0] + coeff[1] * gamma[1]
    } else {
        let lambda = Matrix::from_rows(&[
            &[sigma_vstar2, 0.0, 0.0],
            &[0.0, var_u, cov_uy],
            &[0.0, cov_uy, var_y],
        ]);
        let gamma = [sigma_vstar2, sp.k * sigma_e2, 0.0];
        let coeff = lambda.solve(&gamma).map_err(|_| Error::SingularCovariance {
            context: "observation covariance of the superimposed scheme".into(),
        })?;
        coeff[0] * gamma[0] + coeff[1] * gamma[1] + coeff[2] * gamma[2]
    };
    let d = params.sigma_v2 - explained;
    let window = scheme3_rate_window(params, sp)?;
    Ok(DistortionReport {
        scheme: Scheme::SchemeIII,
        closed_form_d: d,
        params_used: SchemeParamsUsed::SchemeIII {
            alpha: sp.alpha,
            k: sp.k,
            rate: sp.rate,
        },
        constraints_ok: window.rate_admissible,
        notes: String::new(),
    })
}

/// Per-symbol codebook exponents of the superimposed scheme's binning.
///
/// The displayed per-bin count and the one implied by the codebook and bin
/// counts coincide only when `R` sits at the admissibility bound, so both
/// are reported along with the gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinningExponents {
    /// `I(U;Y)`: total codeword exponent.
    pub codebook_rate: f64,
    /// `R`: number-of-bins exponent.
    pub bin_rate: f64,
    /// `max{I(U;SE), I(U;Z)}`: displayed per-bin exponent.
    pub per_bin_rate: f64,
    /// `I(U;Y) - R`: per-bin exponent implied by the counts.
    pub per_bin_rate_implied: f64,
    /// `per_bin_rate - I(U;Z)`: subbins per bin.
    pub subbin_count_rate: f64,
    /// `per_bin_rate_implied - per_bin_rate`; zero exactly at the rate bound.
    pub rate_gap: f64,
}

/// Admissible quantization-rate window of the superimposed scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateWindow {
    /// `max(0, I(U;Y) - max{I(U;SE), I(U;Z)})`.
    pub max_rate: f64,
    /// The same difference before clamping; negative means no admissible rate.
    pub raw_window: f64,
    pub window_positive: bool,
    /// Whether the configured `R` fits the window.
    pub rate_admissible: bool,
    pub exponents: BinningExponents,
}

/// Tolerance for rate-window admissibility. The distortion-optimal embedding
/// family satisfies `I(U;Y) - I(U;SE) = R` exactly for every rate, so when
/// the encoder constraint binds, `R` sits on the window boundary and a
/// zero-tolerance comparison would flip on rounding.
const RATE_WINDOW_TOL: f64 = 1e-9;

/// Evaluates the admissible rate window `0 <= R <= I(U;Y) - max{I(U;SE),
/// I(U;Z)}` and the binning exponents via the mutual-information oracle.
pub fn scheme3_rate_window(params: &SystemParams, sp: &SchemeIIIParams) -> Result<RateWindow> {
    let joint = assemble_joint(params, &SchemeLaw::SchemeIII(*sp));
    let i_uy = mutual_information(&joint, &[Label::U], &[Label::Y])?;
    // drop degenerate variables from groups (Q = 0 makes S a point mass)
    let se_group: &[Label] = if params.q == 0.0 {
        &[Label::E]
    } else {
        &[Label::S, Label::E]
    };
    let i_use = mutual_information(&joint, &[Label::U], se_group)?;
    let i_uz = mutual_information(&joint, &[Label::U], &[Label::Z])?;
    let per_bin_rate = i_use.max(i_uz);
    let raw_window = i_uy - per_bin_rate;
    let max_rate = raw_window.max(0.0);
    let exponents = BinningExponents {
        codebook_rate: i_uy,
        bin_rate: sp.rate,
        per_bin_rate,
        per_bin_rate_implied: i_uy - sp.rate,
        subbin_count_rate: per_bin_rate - i_uz,
        rate_gap: (i_uy - sp.rate) - per_bin_rate,
    };
    Ok(RateWindow {
        max_rate,
        raw_window,
        window_positive: raw_window > 0.0,
        rate_admissible: sp.rate <= max_rate + RATE_WINDOW_TOL,
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::linear_mmse;

    fn fig_params() -> SystemParams {
        SystemParams::new(1.0, 2.0, 0.01, 1.0, 1.0).unwrap()
    }

    #[test]
    fn optimal_distortion_reference_values() {
        let p = SystemParams::new(1.0, 2.0, 1.0, 4.0, 1.0).unwrap();
        assert_eq!(optimal_distortion(&p), 0.5);
        assert!((optimal_distortion(&fig_params()) - 0.00990099).abs() < 1e-8);
        let noisy = SystemParams::new(1.0, 2.0, 1e9, 2e9, 1.0).unwrap();
        assert!((optimal_distortion(&noisy) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn separation_is_suboptimal_at_high_power() {
        let p = fig_params();
        let report = separation_distortion(&p).unwrap();
        let expected = (4.0 / 3.01) * 0.01;
        assert!((report.closed_form_d - expected).abs() < 1e-12);
        assert!((report.closed_form_d - 0.0132890).abs() < 1e-7);
        assert!(report.closed_form_d > optimal_distortion(&p));
    }

    #[test]
    fn separation_matches_rate_distortion_identity() {
        for params in [
            fig_params(),
            SystemParams::new(1.0, 1.0, 1.0, 4.0, 1.0).unwrap(),
            SystemParams::new(0.1, 2.0, 0.01, 1.0, 1.0).unwrap(),
            SystemParams::new(1.0, 0.0, 1.0, 4.0, 1.0).unwrap(),
        ] {
            let report = separation_distortion(&params).unwrap();
            let rs = achievable_secrecy_rate(&params);
            let identity = params.sigma_v2 * 2f64.powf(-2.0 * rs);
            assert!(
                (report.closed_form_d - identity).abs() < 1e-10,
                "branch value {} vs 2^(-2Rs) form {identity}",
                report.closed_form_d
            );
        }
    }

    #[test]
    fn separation_is_optimal_at_low_power() {
        let p = SystemParams::new(0.1, 2.0, 0.01, 1.0, 1.0).unwrap();
        let report = separation_distortion(&p).unwrap();
        assert!((report.closed_form_d - optimal_distortion(&p)).abs() < 1e-10);
    }

    #[test]
    fn residual_variance_simplifies_at_the_optimum() {
        let p = SystemParams::new(1.0, 1.0, 1.0, 4.0, 1.0).unwrap();
        let mu = scheme1_mu(&p, p.p / (p.p + p.n1));
        assert!((mu - 0.5).abs() < 1e-12);

        let q0 = SystemParams::new(1.0, 0.0, 1.0, 4.0, 1.0).unwrap();
        for alpha in [0.0, 0.3, 0.9] {
            assert!((scheme1_mu(&q0, alpha) - 0.5).abs() < 1e-12);
        }

        let full = fig_params();
        let expected = full.n1 * (full.p + full.q) / (full.p + full.q + full.n1);
        assert!((scheme1_mu(&full, 1.0) - expected).abs() < 1e-12);
    }

    #[test]
    fn no_embedding_means_no_information() {
        let p = fig_params();
        let report = scheme1_distortion(&p, &SchemeIParams { alpha: 0.5, k: 0.0 });
        assert_eq!(report.closed_form_d, p.sigma_v2);
        assert!(!report.constraints_ok);
    }

    #[test]
    fn scheme1_reaches_the_optimum_distortion() {
        let p = SystemParams::new(1.0, 1.0, 1.0, 4.0, 1.0).unwrap();
        let report = scheme1_distortion(
            &p,
            &SchemeIParams {
                alpha: 0.5,
                k: 0.5f64.sqrt(),
            },
        );
        assert!((report.closed_form_d - 0.5).abs() < 1e-12);

        let sp = scheme1_optimal(&p).unwrap();
        assert!((sp.alpha - 0.5).abs() < 1e-12);
        assert!((sp.k - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-5);
        let at_opt = scheme1_distortion(&p, &sp);
        assert!((at_opt.closed_form_d - optimal_distortion(&p)).abs() < 1e-12);
    }

    #[test]
    fn scheme1_optimal_reference_point() {
        let sp = scheme1_optimal(&fig_params()).unwrap();
        assert!((sp.alpha - 0.990099).abs() < 1e-6);
        assert!((sp.k - 0.995037).abs() < 1e-6);
    }

    #[test]
    fn lambdas_match_the_mmse_oracle() {
        let p = fig_params();
        for sp in [
            scheme1_optimal(&p).unwrap(),
            SchemeIParams { alpha: 0.9, k: 0.8 },
            SchemeIParams { alpha: 0.5, k: 1.3 },
        ] {
            let (l1, l2) = scheme1_lambdas(&p, &sp);
            let joint = assemble_joint(&p, &SchemeLaw::SchemeI(sp));
            let sol = linear_mmse(&joint, Label::V, &[Label::Y, Label::U]).unwrap();
            assert!((l1 - sol.coefficients[0]).abs() < 1e-10);
            assert!((l2 - sol.coefficients[1]).abs() < 1e-10);
            let d = scheme1_distortion(&p, &sp).closed_form_d;
            assert!((d - sol.mmse).abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_signs_at_the_optimal_point() {
        let p = fig_params();
        let sp = scheme1_optimal(&p).unwrap();
        let (l1, l2) = scheme1_lambdas(&p, &sp);
        assert!(l1 < 0.0);
        assert!(l2 > 0.0);
    }

    #[test]
    fn zero_embedding_zeroes_the_estimator() {
        let p = fig_params();
        let (l1, l2) = scheme1_lambdas(&p, &SchemeIParams { alpha: 0.4, k: 0.0 });
        assert_eq!(l1, 0.0);
        assert_eq!(l2, 0.0);
    }

    #[test]
    fn origin_is_infeasible() {
        let p = fig_params();
        let feas = feasibility(&p, &SchemeIParams { alpha: 0.0, k: 0.0 });
        assert!(!feas.feasible);
        // lower inequality would need 0 > P^2
        assert!((feas.lower_margin + p.p * p.p).abs() < 1e-12);
    }

    #[test]
    fn optimal_point_sits_on_the_upper_boundary() {
        let p = fig_params();
        let sp = scheme1_optimal(&p).unwrap();
        let feas = feasibility(&p, &sp);
        assert!(feas.lower_margin > 0.0);
        // decodability constraint is exactly tight at the optimum
        let scale = sp.k * sp.k * p.sigma_v2 * (p.p + p.q + p.n1);
        assert!(feas.upper_margin.abs() <= 1e-12 * scale);
        // nudging k inside makes the point strictly feasible
        let inside = SchemeIParams {
            alpha: sp.alpha,
            k: sp.k * (1.0 - 1e-9),
        };
        assert!(feasibility(&p, &inside).feasible);
    }

    #[test]
    fn membership_flips_once_per_boundary_crossing() {
        let p = fig_params();
        let region = feasibility_region(&p);
        let alpha = 0.9;
        let k_lo = region.lower_boundary_k(alpha);
        let k_hi = region.upper_boundary_k(alpha);
        assert!(k_lo < k_hi, "region must be nonempty at alpha={alpha}");
        let n = 4000;
        let k_max = 1.5 * k_hi;
        let mut flips = Vec::new();
        let mut prev = region.contains(alpha, 0.0);
        for i in 1..=n {
            let k = k_max * i as f64 / n as f64;
            let now = region.contains(alpha, k);
            if now != prev {
                flips.push(k);
                prev = now;
            }
        }
        assert_eq!(flips.len(), 2, "expected exactly two crossings");
        let step = k_max / n as f64;
        assert!((flips[0] - k_lo).abs() <= step);
        assert!((flips[1] - k_hi).abs() <= step);
    }

    #[test]
    fn grid_search_never_beats_the_closed_form_optimum() {
        let p = fig_params();
        let sp = scheme1_optimal(&p).unwrap();
        let best_closed = scheme1_distortion(&p, &sp).closed_form_d;
        let region = feasibility_region(&p);
        let mut best_grid = f64::INFINITY;
        let n = 400;
        for i in 0..=n {
            let alpha = i as f64 / n as f64;
            for j in 0..=n {
                let k = 2.0 * sp.k * j as f64 / n as f64;
                if region.contains(alpha, k) {
                    let d = scheme1_distortion(&p, &SchemeIParams { alpha, k }).closed_form_d;
                    best_grid = best_grid.min(d);
                }
            }
        }
        assert!(best_grid >= best_closed - 1e-6);
    }

    #[test]
    fn power_split_reference_configuration() {
        let p = SystemParams::new(1.0, 2.0, 0.01, 1.0, 1.0).unwrap();
        let config = scheme2_configure(&p, 1.0).unwrap();
        assert!((config.p1 - 0.7575).abs() < 1e-12);
        assert!((config.ph - 0.2425).abs() < 1e-12);
        assert!((config.p1 + config.ph - p.p).abs() < 1e-12);
        assert!((config.alpha1 - 0.75).abs() < 1e-12);
        assert!((config.alphah - 0.96040).abs() < 1e-5);
        assert!((config.sigma_e2 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn tiny_rate_degenerates_to_direct_embedding() {
        let p = fig_params();
        let rate = 1e-9;
        let config = scheme2_configure(&p, rate).unwrap();
        let opt = scheme1_optimal(&p).unwrap();
        assert!((config.ph - p.p).abs() < 1e-7);
        assert!(config.p1 < 1e-7);
        assert!((config.alphah - opt.alpha).abs() < 1e-7);
        assert!((config.k - opt.k).abs() < 1e-6);
    }

    #[test]
    fn rate_bounds_are_enforced() {
        let p = fig_params();
        let power_limit = 0.5 * ((p.p + p.n1) / p.n1).log2();
        assert!(matches!(
            scheme2_configure(&p, power_limit),
            Err(Error::RateTooHigh { .. })
        ));
        assert!(matches!(
            scheme2_configure(&p, 0.0),
            Err(Error::RateTooHigh { .. })
        ));
        // secrecy rate can be the binding constraint too
        let tight = SystemParams::new(1.0, 2.0, 0.1, 0.2, 1.0).unwrap();
        let rs = achievable_secrecy_rate(&tight);
        let pl = 0.5 * ((tight.p + tight.n1) / tight.n1).log2();
        assert!(rs < pl);
        assert!(scheme2_configure(&tight, (rs + pl) / 2.0).is_err());
    }

    #[test]
    fn superposition_distortion_is_rate_invariant() {
        let p = SystemParams::new(1.0, 2.0, 0.01, 1.0, 1.0).unwrap();
        let expected = optimal_distortion(&p);
        let max = achievable_secrecy_rate(&p).min(0.5 * ((p.p + p.n1) / p.n1).log2());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 1..=20 {
            let rate = max * i as f64 / 21.0;
            let d = scheme2_distortion(&p, rate).unwrap().closed_form_d;
            lo = lo.min(d);
            hi = hi.max(d);
            assert!((d - expected).abs() < 1e-12);
        }
        assert!(hi - lo < 1e-12);
    }

    #[test]
    fn superposition_simple_point() {
        let p = SystemParams::new(1.0, 2.0, 1.0, 4.0, 1.0).unwrap();
        let d = scheme2_distortion(&p, 0.25).unwrap().closed_form_d;
        assert!((d - 0.5).abs() < 1e-12);
        // rate cap comes from the plain wiretap rate when Q = 0
        let q0 = SystemParams::new(1.0, 0.0, 1.0, 4.0, 1.0).unwrap();
        let d = scheme2_distortion(&q0, 0.1).unwrap().closed_form_d;
        assert!((d - 0.5).abs() < 1e-12);
        assert!(scheme2_distortion(&q0, wiretap_rate(&q0)).is_err());
    }

    #[test]
    fn zero_rate_embedding_matches_direct_scheme() {
        let p = fig_params();
        let sp = scheme3_params(&p, 0.0).unwrap();
        let direct = scheme1_optimal(&p).unwrap();
        assert!((sp.alpha - direct.alpha).abs() < 1e-14);
        assert!((sp.k - direct.k).abs() < 1e-14);
        let d = scheme3_distortion(&p, &sp).unwrap().closed_form_d;
        assert!((d - optimal_distortion(&p)).abs() < 1e-12);
    }

    #[test]
    fn pure_digital_limit_of_the_family() {
        let p = SystemParams::new(1.0, 2.0, 1.0, 4.0, 1.0).unwrap();
        let sp = scheme3_params(&p, 0.5).unwrap();
        assert!(sp.k.abs() < 1e-9);
        let d = scheme3_distortion(&p, &sp).unwrap().closed_form_d;
        assert!((d - optimal_distortion(&p)).abs() < 1e-12);
    }

    #[test]
    fn superimposed_family_is_optimal_across_rates() {
        let p = fig_params();
        let expected = optimal_distortion(&p);
        let max = 0.5 * ((p.p + p.n1) / p.n1).log2();
        for i in 0..=20 {
            let rate = max * i as f64 / 20.0;
            let sp = scheme3_params(&p, rate).unwrap();
            let d = scheme3_distortion(&p, &sp).unwrap().closed_form_d;
            assert!(
                (d - expected).abs() / expected < 1e-9,
                "rate {rate}: {d} vs {expected}"
            );
        }
        assert!(matches!(
            scheme3_params(&p, max + 0.1),
            Err(Error::RateTooHigh { .. })
        ));
    }

    #[test]
    fn superimposed_reference_point() {
        let p = fig_params();
        let sp = scheme3_params(&p, 1.0).unwrap();
        let d = scheme3_distortion(&p, &sp).unwrap().closed_form_d;
        assert!((d - 0.00990099).abs() < 1e-8);
    }

    #[test]
    fn rate_window_of_the_optimal_family() {
        let p = fig_params();
        // the optimal embedding pins the encoder constraint: the window is
        // exactly R while I(U;SE) >= I(U;Z), so those rates sit on the
        // boundary and are admissible
        for rate in [0.2, 0.5, 0.9] {
            let sp = scheme3_params(&p, rate).unwrap();
            let window = scheme3_rate_window(&p, &sp).unwrap();
            assert!(
                (window.max_rate - rate).abs() < 1e-9,
                "rate {rate}: window {}",
                window.max_rate
            );
            assert!(window.rate_admissible);
            let exp = window.exponents;
            assert!((exp.codebook_rate - exp.per_bin_rate - rate).abs() < 1e-9);
        }
        // once the eavesdropper constraint takes over the window falls
        // short of R: at this reference point max_rate ~ 0.98564 < 1
        let sp = scheme3_params(&p, 1.0).unwrap();
        let window = scheme3_rate_window(&p, &sp).unwrap();
        assert!((window.max_rate - 0.985645).abs() < 1e-5);
        assert!(!window.rate_admissible);
        // the binding constraint is the wiretap one, so no subbinning slack
        assert_eq!(window.exponents.subbin_count_rate, 0.0);
    }

    #[test]
    fn rate_window_reduces_to_digital_bound_without_embedding() {
        let p = fig_params();
        let alpha = p.p / (p.p + p.n1);
        let sp = SchemeIIIParams {
            alpha,
            k: 0.0,
            rate: 0.3,
        };
        let window = scheme3_rate_window(&p, &sp).unwrap();
        let digital_min = crate::secrecy::rate_dpc(&p, alpha)
            .min(crate::secrecy::rate_wiretap(&p, alpha));
        assert!((window.raw_window - digital_min).abs() < 1e-9);
    }

    #[test]
    fn subbinning_vanishes_when_the_wiretap_constraint_binds() {
        let p = fig_params();
        // small k keeps I(U;SE) below I(U;Z)
        let sp = SchemeIIIParams {
            alpha: 1.0,
            k: 0.01,
            rate: 0.1,
        };
        let window = scheme3_rate_window(&p, &sp).unwrap();
        assert!(window.exponents.subbin_count_rate.abs() < 1e-12);
        assert!(
            window.exponents.per_bin_rate >= window.exponents.codebook_rate - window.max_rate - 1e-9
        );
    }
}
