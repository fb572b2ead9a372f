//! Secrecy rates and reconstruction distortions for transmitting a Gaussian
//! source over a Gaussian wiretap channel with side information known at the
//! transmitter.
//!
//! The crate covers the separation-based scheme and three hybrid
//! digital-analog constructions: closed-form distortions, the embedding
//! feasibility region, behavior under main-channel SNR mismatch, and a
//! seeded Monte Carlo layer that verifies the closed forms empirically.
//! A small Gaussian toolkit (joint covariances, log-det mutual information,
//! linear MMSE) acts as the independent oracle behind every closed form.

// `!(a < b)` is used on purpose in validation: NaN must fail the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod gaussian;
pub mod matrix;
pub mod mismatch;
pub mod params;
pub mod schemes;
pub mod secrecy;
pub mod sim;

pub use error::{Error, Result};
pub use params::{
    db_to_linear, linear_to_db, validate_params, MismatchParams, ParamsFile, ResolvedParams,
    SchemeIIIParams, SchemeIParams, SystemParams,
};
