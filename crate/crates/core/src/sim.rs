//! Seeded Monte Carlo verification of the closed-form distortions and
//! mutual-information constraints.
//!
//! The binning/typicality layer is idealized: the decoder knows the selected
//! codeword exactly, which at the estimation layer is equivalent to drawing
//! the channel input independently of the source and interference. What the
//! simulation checks is the estimation-layer statistics: empirical mean
//! squared error against the closed forms, and empirical covariances against
//! the assembled joint law.
//!
//! RNG contract: ChaCha8 seeded from the config seed. Samples are generated
//! in fixed batches of 2^16; batch `b` draws from stream `b` of the seeded
//! generator and partial sums are reduced in batch order, so results are
//! bit-identical for a given seed regardless of how batches are scheduled
//! across threads.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{
    assemble_joint, fixed_estimator_mse, linear_mmse, mutual_information, GaussianJoint, Label,
    SchemeLaw,
};
use crate::matrix::Matrix;
use crate::params::{MismatchParams, SchemeIIIParams, SchemeIParams, SystemParams};
use crate::schemes::{feasibility_closure, scheme1_lambdas, scheme3_rate_window};

const BATCH_SIZE: u64 = 1 << 16;

/// Scheme under simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SimScheme {
    #[serde(rename = "hda1")]
    SchemeI(SchemeIParams),
    #[serde(rename = "hda3")]
    SchemeIII(SchemeIIIParams),
}

/// Simulation configuration. With `mismatch` set, the embedding parameters
/// stay at their design values while the channel draws the actual noise; the
/// receiver knows the actual noise and solves its estimator weights under
/// it, which is what the mismatch closed forms describe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub scheme: SimScheme,
    pub mismatch: Option<MismatchParams>,
    /// Simulate infeasible operating points anyway.
    pub force: bool,
}

/// One empirical-vs-theoretical covariance entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovCheck {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub abs_dev: f64,
    /// Large-sample standard error of the covariance estimate.
    pub std_err: f64,
}

/// Empirical distortion against its closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub n_samples: u64,
    pub seed: u64,
    pub empirical_d: f64,
    pub closed_form_d: f64,
    /// Standard error of the empirical mean squared error.
    pub standard_error: f64,
    pub z_score: f64,
    pub constraints_ok: bool,
    pub empirical_cov_checks: Vec<CovCheck>,
}

/// One mutual-information constraint check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MiCheck {
    pub constraint: String,
    pub closed_form: f64,
    pub sampled: f64,
}

/// Everything fixed before sampling starts.
struct Setup {
    /// Joint law under the actual channel noise.
    actual_joint: GaussianJoint,
    /// Variables tracked per sample, in draw order.
    tracked: Vec<Label>,
    /// Receiver-side estimator weights: solved under the actual noise with
    /// the design-frozen embedding.
    coefficients: Vec<f64>,
    /// Expected mean squared error of that estimator.
    closed_form_d: f64,
    constraints_ok: bool,
    /// Base-variable standard deviations, in draw order.
    draw_sigmas: Vec<f64>,
}

fn prepare(config: &SimConfig, params: &SystemParams) -> Result<Setup> {
    params.validate()?;
    if config.n_samples < 1000 {
        return Err(Error::InvalidInput(format!(
            "simulation needs at least 1000 samples, got {}",
            config.n_samples
        )));
    }
    let (design_params, actual_params) = match &config.mismatch {
        Some(m) => {
            m.validate_against(params)?;
            (
                params.with_main_noise(m.n_design),
                params.with_main_noise(m.n1_actual),
            )
        }
        None => (*params, *params),
    };
    let (law, tracked, observations, constraints_ok) = match config.scheme {
        SimScheme::SchemeI(sp) => {
            let tracked = vec![
                Label::X,
                Label::S,
                Label::V,
                Label::W,
                Label::Wp,
                Label::U,
                Label::Y,
                Label::Z,
            ];
            let ok = feasibility_closure(&design_params, &sp);
            (SchemeLaw::SchemeI(sp), tracked, vec![Label::Y, Label::U], ok)
        }
        SimScheme::SchemeIII(sp) => {
            let tracked = vec![
                Label::X,
                Label::S,
                Label::Vstar,
                Label::E,
                Label::V,
                Label::W,
                Label::Wp,
                Label::U,
                Label::Y,
                Label::Z,
            ];
            let ok = scheme3_rate_window(&design_params, &sp)?.rate_admissible;
            (
                SchemeLaw::SchemeIII(sp),
                tracked,
                vec![Label::Vstar, Label::U, Label::Y],
                ok,
            )
        }
    };
    if !constraints_ok && !config.force {
        return Err(Error::InfeasibleWithoutOverride);
    }
    // the embedding is frozen at design time, but the receiver knows the
    // actual noise and solves its MMSE weights under it
    let actual_joint = assemble_joint(&actual_params, &law);
    let coefficients = match config.scheme {
        SimScheme::SchemeI(sp) => {
            let (l1, l2) = scheme1_lambdas(&actual_params, &sp);
            vec![l1, l2]
        }
        SimScheme::SchemeIII(sp) => {
            if sp.sigma_e2(actual_params.sigma_v2) == actual_params.sigma_v2 {
                // R = 0: the reconstruction V* is degenerate; its weight is
                // immaterial, so solve on (U, Y) and carry a unit weight
                let sol = linear_mmse(&actual_joint, Label::V, &[Label::U, Label::Y])?;
                vec![1.0, sol.coefficients[0], sol.coefficients[1]]
            } else {
                linear_mmse(&actual_joint, Label::V, &observations)?.coefficients
            }
        }
    };
    let closed_form_d =
        fixed_estimator_mse(&actual_joint, Label::V, &observations, &coefficients)?;
    let draw_sigmas = match config.scheme {
        // draw order: X, S, V, W, W'
        SimScheme::SchemeI(_) => vec![
            actual_params.p.sqrt(),
            actual_params.q.sqrt(),
            actual_params.sigma_v2.sqrt(),
            actual_params.n1.sqrt(),
            actual_params.n2.sqrt(),
        ],
        // draw order: X, S, V*, E, W, W'
        SimScheme::SchemeIII(sp) => {
            let sigma_e2 = sp.sigma_e2(actual_params.sigma_v2);
            vec![
                actual_params.p.sqrt(),
                actual_params.q.sqrt(),
                (actual_params.sigma_v2 - sigma_e2).sqrt(),
                sigma_e2.sqrt(),
                actual_params.n1.sqrt(),
                actual_params.n2.sqrt(),
            ]
        }
    };
    Ok(Setup {
        actual_joint,
        tracked,
        coefficients,
        closed_form_d,
        constraints_ok,
        draw_sigmas,
    })
}

/// Running sums of one batch: per-variable totals, upper-triangle cross
/// products, and the squared-error moments.
#[derive(Clone)]
struct BatchSums {
    n: u64,
    sums: Vec<f64>,
    cross: Vec<f64>,
    err2: f64,
    err4: f64,
}

impl BatchSums {
    fn zero(n_vars: usize) -> BatchSums {
        BatchSums {
            n: 0,
            sums: vec![0.0; n_vars],
            cross: vec![0.0; n_vars * (n_vars + 1) / 2],
            err2: 0.0,
            err4: 0.0,
        }
    }

    fn merge(&mut self, other: &BatchSums) {
        self.n += other.n;
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += b;
        }
        for (a, b) in self.cross.iter_mut().zip(&other.cross) {
            *a += b;
        }
        self.err2 += other.err2;
        self.err4 += other.err4;
    }
}

#[inline]
fn tri_index(i: usize, j: usize, n: usize) -> usize {
    // upper triangle, row-major: i <= j
    i * n - i * (i + 1) / 2 + j
}

fn run_batch(config: &SimConfig, setup: &Setup, batch: u64, count: u64) -> BatchSums {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(batch);
    let n_vars = setup.tracked.len();
    let mut sums = BatchSums::zero(n_vars);
    sums.n = count;
    let sig = &setup.draw_sigmas;
    let mut values = [0.0f64; 10];
    for _ in 0..count {
        let err = match config.scheme {
            SimScheme::SchemeI(sp) => {
                let x = sig[0] * rng.sample::<f64, _>(StandardNormal);
                let s = sig[1] * rng.sample::<f64, _>(StandardNormal);
                let v = sig[2] * rng.sample::<f64, _>(StandardNormal);
                let w = sig[3] * rng.sample::<f64, _>(StandardNormal);
                let wp = sig[4] * rng.sample::<f64, _>(StandardNormal);
                let u = x + sp.alpha * s + sp.k * v;
                let y = x + s + w;
                let z = x + s + wp;
                values[..8].copy_from_slice(&[x, s, v, w, wp, u, y, z]);
                let estimate = setup.coefficients[0] * y + setup.coefficients[1] * u;
                v - estimate
            }
            SimScheme::SchemeIII(sp) => {
                let x = sig[0] * rng.sample::<f64, _>(StandardNormal);
                let s = sig[1] * rng.sample::<f64, _>(StandardNormal);
                let vstar = sig[2] * rng.sample::<f64, _>(StandardNormal);
                let e = sig[3] * rng.sample::<f64, _>(StandardNormal);
                let w = sig[4] * rng.sample::<f64, _>(StandardNormal);
                let wp = sig[5] * rng.sample::<f64, _>(StandardNormal);
                let v = vstar + e;
                let u = x + sp.alpha * s + sp.k * e;
                let y = x + s + w;
                let z = x + s + wp;
                values[..10].copy_from_slice(&[x, s, vstar, e, v, w, wp, u, y, z]);
                let estimate = setup.coefficients[0] * vstar
                    + setup.coefficients[1] * u
                    + setup.coefficients[2] * y;
                v - estimate
            }
        };
        for i in 0..n_vars {
            sums.sums[i] += values[i];
            for j in i..n_vars {
                sums.cross[tri_index(i, j, n_vars)] += values[i] * values[j];
            }
        }
        let e2 = err * err;
        sums.err2 += e2;
        sums.err4 += e2 * e2;
    }
    sums
}

fn accumulate(config: &SimConfig, setup: &Setup) -> BatchSums {
    let n_batches = config.n_samples.div_ceil(BATCH_SIZE);
    let partials: Vec<BatchSums> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let start = batch * BATCH_SIZE;
            let count = BATCH_SIZE.min(config.n_samples - start);
            run_batch(config, setup, batch, count)
        })
        .collect();
    let mut total = BatchSums::zero(setup.tracked.len());
    for partial in &partials {
        total.merge(partial);
    }
    total
}

/// Empirical covariance matrix from accumulated sums.
fn empirical_cov(sums: &BatchSums) -> Matrix {
    let n_vars = sums.sums.len();
    let n = sums.n as f64;
    let mut cov = Matrix::zeros(n_vars);
    for i in 0..n_vars {
        for j in i..n_vars {
            let mean_i = sums.sums[i] / n;
            let mean_j = sums.sums[j] / n;
            let c = sums.cross[tri_index(i, j, n_vars)] / n - mean_i * mean_j;
            cov.set(i, j, c);
            cov.set(j, i, c);
        }
    }
    cov
}

/// Draws the model variables, applies the scheme's frozen estimator, and
/// reports the empirical distortion with its standard error and z-score
/// against the closed form, plus per-pair covariance deviations.
pub fn simulate_scheme(config: &SimConfig, params: &SystemParams) -> Result<SimReport> {
    let setup = prepare(config, params)?;
    let sums = accumulate(config, &setup);
    let n = sums.n as f64;
    let empirical_d = sums.err2 / n;
    let var_e2 = (sums.err4 / n - empirical_d * empirical_d).max(0.0);
    let standard_error = (var_e2 / n).sqrt();
    let z_score = (empirical_d - setup.closed_form_d) / standard_error;

    let cov = empirical_cov(&sums);
    let n_vars = setup.tracked.len();
    let mut empirical_cov_checks = Vec::with_capacity(n_vars * (n_vars + 1) / 2);
    for i in 0..n_vars {
        for j in i..n_vars {
            let a = setup.tracked[i];
            let b = setup.tracked[j];
            let expected = setup.actual_joint.covariance(a, b)?;
            let observed = cov.get(i, j);
            let var_a = setup.actual_joint.variance(a)?;
            let var_b = setup.actual_joint.variance(b)?;
            // large-sample variance of a Gaussian covariance estimate
            let std_err = ((var_a * var_b + expected * expected) / n).sqrt();
            empirical_cov_checks.push(CovCheck {
                name: format!("Cov({a},{b})"),
                expected,
                observed,
                abs_dev: (observed - expected).abs(),
                std_err,
            });
        }
    }
    Ok(SimReport {
        n_samples: sums.n,
        seed: config.seed,
        empirical_d,
        closed_form_d: setup.closed_form_d,
        standard_error,
        z_score,
        constraints_ok: setup.constraints_ok,
        empirical_cov_checks,
    })
}

/// Sample-covariance mutual information: the variables are exactly Gaussian
/// by construction, so plugging the empirical covariance into the log-det
/// formula is a consistent estimate.
fn sampled_mi(cov: &Matrix, group_a: &[usize], group_b: &[usize]) -> f64 {
    let sub = |idx: &[usize]| {
        let mut m = Matrix::zeros(idx.len());
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                m.set(r, c, cov.get(i, j));
            }
        }
        m
    };
    let det_a = sub(group_a).det();
    let det_b = sub(group_b).det();
    let joined: Vec<usize> = group_a.iter().chain(group_b.iter()).copied().collect();
    let det_ab = sub(&joined).det();
    0.5 * (det_a * det_b / det_ab).log2()
}

/// Estimates the mutual-information constraints of the scheme from samples
/// and pairs each with its exact value from the assembled joint law.
pub fn empirical_mi_check(config: &SimConfig, params: &SystemParams) -> Result<Vec<MiCheck>> {
    let setup = prepare(config, params)?;
    let sums = accumulate(config, &setup);
    let cov = empirical_cov(&sums);
    let idx = |label: Label| setup.tracked.iter().position(|&l| l == label).unwrap();
    let known: Vec<Label> = match config.scheme {
        SimScheme::SchemeI(_) => vec![Label::S, Label::V],
        SimScheme::SchemeIII(_) => vec![Label::S, Label::E],
    };
    let known_name = match config.scheme {
        SimScheme::SchemeI(_) => "I(U;SV)",
        SimScheme::SchemeIII(_) => "I(U;SE)",
    };
    let mut checks = Vec::new();
    let constraints: Vec<(String, Vec<Label>, Vec<Label>)> = vec![
        ("I(U;Y)".into(), vec![Label::U], vec![Label::Y]),
        (known_name.into(), vec![Label::U], known),
        ("I(U;Z)".into(), vec![Label::U], vec![Label::Z]),
        ("I(X;S)".into(), vec![Label::X], vec![Label::S]),
    ];
    for (name, group_a, group_b) in constraints {
        let closed = mutual_information(&setup.actual_joint, &group_a, &group_b)?;
        let ia: Vec<usize> = group_a.iter().map(|&l| idx(l)).collect();
        let ib: Vec<usize> = group_b.iter().map(|&l| idx(l)).collect();
        let sampled = sampled_mi(&cov, &ia, &ib);
        checks.push(MiCheck {
            constraint: name,
            closed_form: closed,
            sampled,
        });
    }
    Ok(checks)
}
