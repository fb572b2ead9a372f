//! Command-line front end: regime classification, scheme distortions,
//! feasibility-region sweeps, mismatch curves, decay exponents, and seeded
//! Monte Carlo runs. JSON or CSV on stdout; exit code 0 on success, 2 on
//! validation or configuration errors, 3 when a simulation z-score trips the
//! hard guard.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sjscc::cli::{csv_value, load_params, parse_range, parse_window, regimes_output};
use sjscc::error::{Error, Result};
use sjscc::mismatch::{estimate_exponent, mismatch_distortion, ExponentEstimate, MismatchScheme};
use sjscc::params::{db_to_linear, MismatchParams, ResolvedParams, SystemParams};
use sjscc::schemes::{
    feasibility, feasibility_region, optimal_distortion, scheme1_distortion, scheme1_optimal,
    scheme2_configure, scheme2_distortion, scheme3_distortion, scheme3_params, DistortionReport,
};
use sjscc::sim::{simulate_scheme, SimConfig, SimReport, SimScheme};
use sjscc::{SchemeIIIParams, SchemeIParams};

#[derive(Parser)]
#[command(
    name = "sjscc",
    about = "Secrecy rates and distortions for Gaussian wiretap channels with side information",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Separation,
    Hda1,
    Hda1Modified,
    Hda2,
    Hda3,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the power regime and report the achievable secrecy rate.
    Regimes {
        /// JSON parameter file.
        params: PathBuf,
    },
    /// Closed-form distortion of one scheme at one operating point.
    Distortion {
        params: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Quantization rate (hda2, hda3).
        #[arg(long)]
        rate: Option<f64>,
        /// Explicit embedding scaling (hda1, hda3); defaults to the optimum.
        #[arg(long)]
        alpha: Option<f64>,
        /// Explicit embedding gain (hda1, hda3); defaults to the optimum.
        #[arg(long)]
        k: Option<f64>,
    },
    /// Feasibility-region sweep over (alpha, k), as CSV.
    Region {
        params: PathBuf,
        /// alpha grid as lo:hi:n.
        #[arg(long)]
        alpha_grid: String,
        /// k grid as lo:hi:n.
        #[arg(long)]
        k_grid: String,
    },
    /// Distortion versus actual SNR under main-channel mismatch, as CSV.
    Mismatch {
        params: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Design SNR in dB; defaults to the file's snrd_db or N1.
        #[arg(long)]
        snrd_db: Option<f64>,
        /// Actual-SNR sweep as lo:hi:n in dB.
        #[arg(long)]
        snr1_sweep: String,
        /// Quantization rate for the hda2/hda3 columns.
        #[arg(long)]
        rate: Option<f64>,
    },
    /// Distortion decay exponent over a high-SNR window.
    Exponent {
        params: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Fit window as lo:hi in dB.
        #[arg(long)]
        window_db: String,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long)]
        snrd_db: Option<f64>,
        #[arg(long)]
        rate: Option<f64>,
    },
    /// Seeded Monte Carlo check of a scheme's distortion.
    Simulate {
        params: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Actual SNR in dB; enables mismatch mode with the design taken
        /// from the parameter file.
        #[arg(long)]
        snr1_db: Option<f64>,
        #[arg(long)]
        rate: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        k: Option<f64>,
        /// Simulate infeasible operating points anyway.
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}: {err}", err.name());
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Regimes { params } => {
            let resolved = load_params(&params)?;
            let output = regimes_output(&resolved.system)?;
            println!("{}", serde_json::to_string_pretty(&output).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Distortion {
            params,
            scheme,
            rate,
            alpha,
            k,
        } => {
            let resolved = load_params(&params)?;
            cmd_distortion(&resolved.system, scheme, rate, alpha, k)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Region {
            params,
            alpha_grid,
            k_grid,
        } => {
            let resolved = load_params(&params)?;
            cmd_region(&resolved.system, &alpha_grid, &k_grid)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mismatch {
            params,
            scheme,
            snrd_db,
            snr1_sweep,
            rate,
        } => {
            let resolved = load_params(&params)?;
            cmd_mismatch(&resolved, scheme, snrd_db, &snr1_sweep, rate)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Exponent {
            params,
            scheme,
            window_db,
            points,
            snrd_db,
            rate,
        } => {
            let resolved = load_params(&params)?;
            cmd_exponent(&resolved, scheme, &window_db, points, snrd_db, rate)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            params,
            scheme,
            samples,
            seed,
            snr1_db,
            rate,
            alpha,
            k,
            force,
        } => {
            let resolved = load_params(&params)?;
            cmd_simulate(&resolved, scheme, samples, seed, snr1_db, rate, alpha, k, force)
        }
    }
}

#[derive(Serialize)]
struct DistortionOutput {
    params: SystemParams,
    d_opt: f64,
    #[serde(flatten)]
    report: DistortionReport,
}

fn require_rate(rate: Option<f64>, scheme: &str) -> Result<f64> {
    rate.ok_or_else(|| Error::InvalidInput(format!("--rate is required for {scheme}")))
}

fn cmd_distortion(
    system: &SystemParams,
    scheme: SchemeArg,
    rate: Option<f64>,
    alpha: Option<f64>,
    k: Option<f64>,
) -> Result<()> {
    system.validate()?;
    let report = match scheme {
        SchemeArg::Separation => sjscc::schemes::separation_distortion(system)?,
        SchemeArg::Hda1 => {
            let sp = match (alpha, k) {
                (Some(alpha), Some(k)) => SchemeIParams::new(alpha, k)?,
                (None, None) => scheme1_optimal(system)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "--alpha and --k must be given together".into(),
                    ))
                }
            };
            scheme1_distortion(system, &sp)
        }
        SchemeArg::Hda2 => scheme2_distortion(system, require_rate(rate, "hda2")?)?,
        SchemeArg::Hda3 => {
            let r = require_rate(rate, "hda3")?;
            let sp = match (alpha, k) {
                (Some(alpha), Some(k)) => SchemeIIIParams::new(alpha, k, r)?,
                (None, None) => scheme3_params(system, r)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "--alpha and --k must be given together".into(),
                    ))
                }
            };
            scheme3_distortion(system, &sp)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "distortion supports separation, hda1, hda2 and hda3".into(),
            ))
        }
    };
    let output = DistortionOutput {
        params: *system,
        d_opt: optimal_distortion(system),
        report,
    };
    println!("{}", serde_json::to_string_pretty(&output).unwrap());
    Ok(())
}

fn cmd_region(system: &SystemParams, alpha_grid: &str, k_grid: &str) -> Result<()> {
    system.validate()?;
    let (a_lo, a_hi, a_n) = parse_range(alpha_grid)?;
    let (k_lo, k_hi, k_n) = parse_range(k_grid)?;
    let region = feasibility_region(system);
    println!("kind,alpha,k,feasible,lower_margin,upper_margin");
    let row = |kind: &str, alpha: f64, k: f64| {
        let feas = feasibility(system, &SchemeIParams { alpha, k });
        println!(
            "{kind},{},{},{},{},{}",
            csv_value(alpha),
            csv_value(k),
            u8::from(feas.feasible),
            csv_value(feas.lower_margin),
            csv_value(feas.upper_margin)
        );
    };
    for i in 0..a_n {
        let alpha = a_lo + (a_hi - a_lo) * i as f64 / (a_n - 1) as f64;
        for j in 0..k_n {
            let k = k_lo + (k_hi - k_lo) * j as f64 / (k_n - 1) as f64;
            row("grid", alpha, k);
        }
    }
    for i in 0..a_n {
        let alpha = a_lo + (a_hi - a_lo) * i as f64 / (a_n - 1) as f64;
        row("boundary_lower", alpha, region.lower_boundary_k(alpha));
        row("boundary_upper", alpha, region.upper_boundary_k(alpha));
    }
    Ok(())
}

fn design_noise(resolved: &ResolvedParams, snrd_db: Option<f64>) -> f64 {
    match snrd_db {
        Some(db) => resolved.system.p / db_to_linear(db),
        None => resolved.design_noise.unwrap_or(resolved.system.n1),
    }
}

fn mismatch_schemes(
    scheme: SchemeArg,
    rate: Option<f64>,
) -> Result<Vec<(&'static str, MismatchScheme)>> {
    let rated = |name: &'static str| -> Result<(&'static str, MismatchScheme)> {
        let r = require_rate(rate, name)?;
        Ok((
            name,
            if name == "D_hda2" {
                MismatchScheme::SchemeII { rate: r }
            } else {
                MismatchScheme::SchemeIII { rate: r }
            },
        ))
    };
    Ok(match scheme {
        SchemeArg::Separation => vec![("D_separation", MismatchScheme::Separation)],
        SchemeArg::Hda1 => vec![("D_hda1", MismatchScheme::SchemeI)],
        SchemeArg::Hda1Modified => vec![("D_hda1_modified", MismatchScheme::SchemeIModified)],
        SchemeArg::Hda2 => vec![rated("D_hda2")?],
        SchemeArg::Hda3 => vec![rated("D_hda3")?],
        SchemeArg::All => vec![
            ("D_separation", MismatchScheme::Separation),
            ("D_hda1", MismatchScheme::SchemeI),
            ("D_hda1_modified", MismatchScheme::SchemeIModified),
            rated("D_hda3")?,
        ],
    })
}

fn cmd_mismatch(
    resolved: &ResolvedParams,
    scheme: SchemeArg,
    snrd_db: Option<f64>,
    snr1_sweep: &str,
    rate: Option<f64>,
) -> Result<()> {
    let system = resolved.system;
    system.validate()?;
    let nd = design_noise(resolved, snrd_db);
    let (lo, hi, n) = parse_range(snr1_sweep)?;
    let design_snr_db = 10.0 * (system.p / nd).log10();
    if lo < design_snr_db - 1e-9 {
        return Err(Error::InvalidInput(format!(
            "sweep starts at {lo} dB, below the design SNR {design_snr_db:.3} dB"
        )));
    }
    let columns = mismatch_schemes(scheme, rate)?;
    let header: Vec<&str> = columns.iter().map(|(name, _)| *name).collect();
    println!("snr1_db,{}", header.join(","));
    for i in 0..n {
        let snr_db = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let m = MismatchParams::new(nd, system.p / db_to_linear(snr_db))?;
        let mut fields = vec![csv_value(snr_db)];
        for (_, s) in &columns {
            fields.push(csv_value(mismatch_distortion(&system, *s, &m)?));
        }
        println!("{}", fields.join(","));
    }
    Ok(())
}

#[derive(Serialize)]
struct ExponentOutput {
    params: SystemParams,
    design_noise: f64,
    scheme: String,
    #[serde(flatten)]
    estimate: ExponentEstimate,
}

fn cmd_exponent(
    resolved: &ResolvedParams,
    scheme: SchemeArg,
    window_db: &str,
    points: usize,
    snrd_db: Option<f64>,
    rate: Option<f64>,
) -> Result<()> {
    let system = resolved.system;
    system.validate()?;
    if scheme == SchemeArg::All {
        return Err(Error::InvalidInput(
            "exponent estimates one scheme at a time".into(),
        ));
    }
    let nd = design_noise(resolved, snrd_db);
    let (lo, hi) = parse_window(window_db)?;
    let columns = mismatch_schemes(scheme, rate)?;
    let (name, mismatch_scheme) = columns[0];
    let estimate = estimate_exponent(&system, mismatch_scheme, nd, lo, hi, points)?;
    let output = ExponentOutput {
        params: system,
        design_noise: nd,
        scheme: name.trim_start_matches("D_").to_string(),
        estimate,
    };
    println!("{}", serde_json::to_string_pretty(&output).unwrap());
    Ok(())
}

#[derive(Serialize)]
struct SimulateOutput {
    params: SystemParams,
    config: SimConfig,
    #[serde(flatten)]
    report: SimReport,
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    resolved: &ResolvedParams,
    scheme: SchemeArg,
    samples: u64,
    seed: u64,
    snr1_db: Option<f64>,
    rate: Option<f64>,
    alpha: Option<f64>,
    k: Option<f64>,
    force: bool,
) -> Result<ExitCode> {
    let system = resolved.system;
    system.validate()?;
    let nd = design_noise(resolved, None);
    let mismatch = match snr1_db {
        Some(db) => Some(MismatchParams::new(nd, system.p / db_to_linear(db))?),
        None => None,
    };
    // scheme parameters are design-time choices
    let design = system.with_main_noise(nd);
    let (sim_params, sim_scheme) = match scheme {
        SchemeArg::Hda1 => {
            let sp = match (alpha, k) {
                (Some(alpha), Some(k)) => SchemeIParams::new(alpha, k)?,
                (None, None) => scheme1_optimal(&design)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "--alpha and --k must be given together".into(),
                    ))
                }
            };
            (system, SimScheme::SchemeI(sp))
        }
        SchemeArg::Hda2 => {
            // the estimation layer of hda2 is hda1 on the analog share, with
            // the digital signal folded into the interference
            let r = require_rate(rate, "hda2")?;
            let config = scheme2_configure(&design, r)?;
            let substituted = SystemParams {
                p: config.ph,
                q: system.q + config.p1,
                sigma_v2: config.sigma_e2,
                ..system
            };
            let sp = SchemeIParams::new(config.alphah, config.k)?;
            (substituted, SimScheme::SchemeI(sp))
        }
        SchemeArg::Hda3 => {
            let r = require_rate(rate, "hda3")?;
            let sp = match (alpha, k) {
                (Some(alpha), Some(k)) => SchemeIIIParams::new(alpha, k, r)?,
                (None, None) => scheme3_params(&design, r)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "--alpha and --k must be given together".into(),
                    ))
                }
            };
            (system, SimScheme::SchemeIII(sp))
        }
        _ => {
            return Err(Error::InvalidInput(
                "simulate supports hda1, hda2 and hda3".into(),
            ))
        }
    };
    let config = SimConfig {
        n_samples: samples,
        seed,
        scheme: sim_scheme,
        mismatch,
        force,
    };
    let report = simulate_scheme(&config, &sim_params)?;
    let z = report.z_score;
    let output = SimulateOutput {
        params: sim_params,
        config,
        report,
    };
    println!("{}", serde_json::to_string_pretty(&output).unwrap());
    if z.abs() > 5.0 {
        eprintln!("error: simulation z-score {z} exceeds the hard guard of 5");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}
