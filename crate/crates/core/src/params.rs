//! Channel, source and scheme parameters shared by every analysis routine.
//!
//! All powers and variances are linear (variance units). Rates are bits per
//! channel use with base-2 logarithms throughout; decibels appear only at the
//! CLI boundary via [`db_to_linear`] / [`linear_to_db`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Channel-use to source-sample ratio. The analysis assumes a matched
/// bandwidth, so this is fixed at 1.
pub const BANDWIDTH_RATIO: f64 = 1.0;

/// Information leakage target at the eavesdropper. Fixed at 0 (perfect
/// secrecy); some distortion formulas reference it explicitly.
pub const LEAKAGE_RATE: f64 = 0.0;

/// The channel/source quintuple plus the fixed bandwidth ratio and leakage
/// target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Transmit power constraint.
    #[serde(rename = "P")]
    pub p: f64,
    /// Interference power (side information known at the transmitter).
    #[serde(rename = "Q")]
    pub q: f64,
    /// Main-channel noise variance.
    #[serde(rename = "N1")]
    pub n1: f64,
    /// Eavesdropper noise variance.
    #[serde(rename = "N2")]
    pub n2: f64,
    /// Source variance.
    pub sigma_v2: f64,
    /// Bandwidth ratio, carried explicitly; must equal 1.
    #[serde(default = "default_rho")]
    pub rho: f64,
    /// Leakage rate target, carried explicitly; must equal 0.
    #[serde(default)]
    pub i_eps: f64,
}

fn default_rho() -> f64 {
    BANDWIDTH_RATIO
}

impl SystemParams {
    /// Build and validate a parameter set.
    pub fn new(p: f64, q: f64, n1: f64, n2: f64, sigma_v2: f64) -> Result<Self> {
        let params = SystemParams {
            p,
            q,
            n1,
            n2,
            sigma_v2,
            rho: BANDWIDTH_RATIO,
            i_eps: LEAKAGE_RATE,
        };
        params.validate()?;
        Ok(params)
    }

    /// Check every field invariant; returns `Ok(())` iff all hold.
    pub fn validate(&self) -> Result<()> {
        check_positive("P", self.p)?;
        if !(self.q >= 0.0) || !self.q.is_finite() {
            return Err(Error::NonPositiveParam {
                name: "Q",
                value: self.q,
            });
        }
        check_positive("N1", self.n1)?;
        check_positive("N2", self.n2)?;
        check_positive("sigma_v2", self.sigma_v2)?;
        if self.n2 <= self.n1 {
            return Err(Error::DegradednessViolation {
                n1: self.n1,
                n2: self.n2,
            });
        }
        if self.rho != BANDWIDTH_RATIO {
            return Err(Error::InvalidInput(format!(
                "bandwidth ratio rho must be exactly 1, got {}",
                self.rho
            )));
        }
        if self.i_eps != LEAKAGE_RATE {
            return Err(Error::InvalidInput(format!(
                "leakage target i_eps must be exactly 0, got {}",
                self.i_eps
            )));
        }
        Ok(())
    }

    /// Same parameters with a different main-channel noise. Used by the
    /// mismatch analysis, which evaluates design-time formulas at the design
    /// noise variance.
    pub fn with_main_noise(&self, n1: f64) -> SystemParams {
        SystemParams { n1, ..*self }
    }
}

/// Returns the parameters unchanged if every invariant holds.
pub fn validate_params(params: SystemParams) -> Result<SystemParams> {
    params.validate()?;
    Ok(params)
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveParam { name, value })
    }
}

/// Analog-embedding parameters of the unquantized hybrid scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeIParams {
    /// Interference scaling inside the auxiliary variable.
    pub alpha: f64,
    /// Source-embedding gain.
    pub k: f64,
}

impl SchemeIParams {
    pub fn new(alpha: f64, k: f64) -> Result<Self> {
        if !alpha.is_finite() || !k.is_finite() {
            return Err(Error::InvalidInput(format!(
                "scheme parameters must be finite, got alpha={alpha}, k={k}"
            )));
        }
        Ok(SchemeIParams { alpha, k })
    }
}

/// Parameters of the superimposed quantized/analog hybrid scheme: embedding
/// pair plus the quantization rate of the digital layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeIIIParams {
    pub alpha: f64,
    pub k: f64,
    /// Quantization rate in bits per channel use.
    pub rate: f64,
}

impl SchemeIIIParams {
    pub fn new(alpha: f64, k: f64, rate: f64) -> Result<Self> {
        if !alpha.is_finite() || !k.is_finite() {
            return Err(Error::InvalidInput(format!(
                "scheme parameters must be finite, got alpha={alpha}, k={k}"
            )));
        }
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::InvalidInput(format!(
                "quantization rate must be nonnegative, got {rate}"
            )));
        }
        Ok(SchemeIIIParams { alpha, k, rate })
    }

    /// Variance of the quantization error at this rate.
    pub fn sigma_e2(&self, sigma_v2: f64) -> f64 {
        sigma_v2 * 2f64.powf(-2.0 * self.rate)
    }
}

/// Designed versus actual main-channel noise for the mismatch analysis.
///
/// The transmitter designs for `n_design`; the channel realizes `n1_actual`.
/// Validity requires `N2 > Nd >= N1 > 0`, i.e. the actual SNR is at least the
/// design SNR and the eavesdropper stays strictly degraded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MismatchParams {
    pub n_design: f64,
    pub n1_actual: f64,
}

impl MismatchParams {
    pub fn new(n_design: f64, n1_actual: f64) -> Result<Self> {
        check_positive("N1_actual", n1_actual)?;
        check_positive("Nd", n_design)?;
        if n_design < n1_actual {
            return Err(Error::InvalidInput(format!(
                "design noise Nd={n_design} must be >= actual noise N1={n1_actual}"
            )));
        }
        Ok(MismatchParams {
            n_design,
            n1_actual,
        })
    }

    /// Check the mismatch ordering against the eavesdropper noise.
    pub fn validate_against(&self, params: &SystemParams) -> Result<()> {
        if params.n2 <= self.n_design {
            return Err(Error::DegradednessViolation {
                n1: self.n_design,
                n2: params.n2,
            });
        }
        Ok(())
    }
}

/// Decibels to linear ratio.
pub fn db_to_linear(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

/// Linear ratio to decibels. Errors on non-positive input.
pub fn linear_to_db(x: f64) -> Result<f64> {
    if x > 0.0 {
        Ok(10.0 * x.log10())
    } else {
        Err(Error::NonPositiveParam {
            name: "linear ratio",
            value: x,
        })
    }
}

/// On-disk parameter file. Noise variances may be given directly or as SNRs
/// in dB, resolved via `N = P / SNR` before validation.
#[derive(Debug, Clone, Deserialize)]
pub struct ParamsFile {
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "N1")]
    pub n1: Option<f64>,
    #[serde(rename = "N2")]
    pub n2: Option<f64>,
    pub sigma_v2: f64,
    pub snr1_db: Option<f64>,
    pub snrd_db: Option<f64>,
    pub snr2_db: Option<f64>,
}

/// A parameter file after SNR resolution.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedParams {
    pub system: SystemParams,
    /// Design noise variance, when the file carried a design SNR.
    pub design_noise: Option<f64>,
}

impl ParamsFile {
    pub fn resolve(&self) -> Result<ResolvedParams> {
        let snr_to_noise = |snr_db: f64| self.p / db_to_linear(snr_db);
        let design_noise = self.snrd_db.map(snr_to_noise);
        let n1 = self
            .n1
            .or(self.snr1_db.map(snr_to_noise))
            .or(design_noise)
            .ok_or_else(|| {
                Error::InvalidInput("parameter file must provide N1, snr1_db or snrd_db".into())
            })?;
        let n2 = self
            .n2
            .or(self.snr2_db.map(snr_to_noise))
            .ok_or_else(|| {
                Error::InvalidInput("parameter file must provide N2 or snr2_db".into())
            })?;
        let system = SystemParams::new(self.p, self.q, n1, n2, self.sigma_v2)?;
        Ok(ResolvedParams {
            system,
            design_noise,
        })
    }
}
