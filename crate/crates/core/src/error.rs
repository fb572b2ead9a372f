//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A power or variance that must be strictly positive was not.
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParam { name: &'static str, value: f64 },

    /// The eavesdropper channel must be strictly noisier than the main channel.
    #[error("eavesdropper must be strictly degraded (N2 > N1), got N1={n1}, N2={n2}")]
    DegradednessViolation { n1: f64, n2: f64 },

    /// A variable name was requested that the joint law does not contain.
    #[error("variable `{0}` is not part of this joint law")]
    UnknownLabel(String),

    /// A covariance (sub)matrix was numerically singular.
    #[error("singular covariance: {context}")]
    SingularCovariance { context: String },

    /// Interference power Q is zero, so the side-information rate machinery
    /// (alpha_0, the power thresholds) is undefined.
    #[error("interference power Q is zero; regime classification is degenerate")]
    ZeroInterference,

    /// Quantization rate exceeds what the power budget admits.
    #[error("quantization rate {rate} exceeds admissible maximum {max}")]
    RateTooHigh { rate: f64, max: f64 },

    /// The closed-form optimum fell outside the feasible region.
    #[error("closed-form optimum (alpha={alpha}, k={k}) violates the feasible region")]
    InfeasibleOptimum { alpha: f64, k: f64 },

    /// The admissible k' interval for the modified scheme is empty.
    #[error("admissible k' interval is empty (lo={lo}, hi={hi})")]
    EmptyInterval { lo: f64, hi: f64 },

    /// Simulation of an infeasible operating point without the force flag.
    #[error("scheme parameters violate the feasibility constraints; set force to simulate anyway")]
    InfeasibleWithoutOverride,

    /// Malformed configuration input (grids, sweeps, parameter files).
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant, for CLI diagnostics and
    /// FFI status codes.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPositiveParam { .. } => "NonPositiveParam",
            Error::DegradednessViolation { .. } => "DegradednessViolation",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::SingularCovariance { .. } => "SingularCovariance",
            Error::ZeroInterference => "ZeroInterference",
            Error::RateTooHigh { .. } => "RateTooHigh",
            Error::InfeasibleOptimum { .. } => "InfeasibleOptimum",
            Error::EmptyInterval { .. } => "EmptyInterval",
            Error::InfeasibleWithoutOverride => "InfeasibleWithoutOverride",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
