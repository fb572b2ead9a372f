//! Parameter-file loading, sweep grids, and the report shapes emitted by the
//! command-line front end.
//!
//! SNRs cross this boundary in dB; everything behind it is linear. CSV
//! numbers are printed with 9 significant digits, `.` decimal separator,
//! no locale dependence.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ParamsFile, ResolvedParams, SystemParams};
use crate::secrecy::{classify_regime, secrecy_rate_maxmin, wiretap_rate, PowerRegime};

/// Quantity a sweep ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Alpha,
    K,
    Rate,
    Snr1Db,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepScale {
    Linear,
    Log,
}

/// An inclusive sweep over one variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub scale: SweepScale,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        lo: f64,
        hi: f64,
        steps: usize,
        scale: SweepScale,
    ) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidInput(format!(
                "sweep needs lo < hi, got {lo}:{hi}"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidInput(format!(
                "sweep needs at least 2 steps, got {steps}"
            )));
        }
        if scale == SweepScale::Log && lo <= 0.0 {
            return Err(Error::InvalidInput(
                "log-scale sweep needs positive endpoints".into(),
            ));
        }
        Ok(SweepSpec {
            variable,
            lo,
            hi,
            steps,
            scale,
        })
    }

    /// Grid points, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.lo + (self.hi - self.lo) * t,
                    SweepScale::Log => {
                        (self.lo.ln() + (self.hi.ln() - self.lo.ln()) * t).exp()
                    }
                }
            })
            .collect()
    }
}

/// Parses `lo:hi:n` into a linear sweep triple.
pub fn parse_range(spec: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected lo:hi:n, got `{spec}`"
        )));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad sweep start `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad sweep end `{}`", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad sweep count `{}`", parts[2])))?;
    if !(lo < hi) || n < 2 {
        return Err(Error::InvalidInput(format!(
            "sweep `{spec}` needs lo < hi and at least 2 points"
        )));
    }
    Ok((lo, hi, n))
}

/// Parses `lo:hi` into a window pair.
pub fn parse_window(spec: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput(format!("expected lo:hi, got `{spec}`")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad window start `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad window end `{}`", parts[1])))?;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "window `{spec}` needs lo < hi"
        )));
    }
    Ok((lo, hi))
}

/// Loads and resolves a JSON parameter file.
pub fn load_params(path: &Path) -> Result<ResolvedParams> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let file: ParamsFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {}: {e}", path.display())))?;
    file.resolve()
}

/// 9 significant digits, locale-independent.
pub fn csv_value(x: f64) -> String {
    format!("{x:.8e}")
}

/// Regime report of the `regimes` subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct RegimesOutput {
    pub params: SystemParams,
    #[serde(rename = "P_L")]
    pub p_low: Option<f64>,
    #[serde(rename = "P_H")]
    pub p_high: Option<f64>,
    pub regime: String,
    pub alpha_star: f64,
    pub alpha_0: Option<f64>,
    #[serde(rename = "R_s_bits")]
    pub r_s_bits: f64,
    #[serde(rename = "R_s_maxmin_check")]
    pub r_s_maxmin_check: f64,
}

/// Classifies the regime, falling back to the zero-interference branch, and
/// attaches the numerical max-min cross-check.
pub fn regimes_output(params: &SystemParams) -> Result<RegimesOutput> {
    params.validate()?;
    let maxmin = secrecy_rate_maxmin(params, 400)?;
    if params.q == 0.0 {
        return Ok(RegimesOutput {
            params: *params,
            p_low: None,
            p_high: None,
            regime: "ZeroInterference".into(),
            alpha_star: params.p / (params.p + params.n1),
            alpha_0: None,
            r_s_bits: wiretap_rate(params),
            r_s_maxmin_check: maxmin,
        });
    }
    let regime = classify_regime(params)?;
    let name = match regime.regime {
        PowerRegime::LowPower => "LowPower",
        PowerRegime::MidPower => "MidPower",
        PowerRegime::HighPower => "HighPower",
    };
    Ok(RegimesOutput {
        params: *params,
        p_low: Some(regime.p_low),
        p_high: Some(regime.p_high),
        regime: name.into(),
        alpha_star: regime.alpha_star,
        alpha_0: Some(regime.alpha_zero),
        r_s_bits: regime.secrecy_rate,
        r_s_maxmin_check: maxmin,
    })
}
