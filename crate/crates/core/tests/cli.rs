//! End-to-end checks of the command-line interface: JSON/CSV shapes, exit
//! codes, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write_params(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sjscc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn fig4_file() -> PathBuf {
    write_params(
        "fig4.json",
        r#"{"P": 1.0, "Q": 2.0, "snrd_db": 20.0, "N2": 1.0, "sigma_v2": 1.0}"#,
    )
}

fn sjscc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sjscc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).unwrap()
}

#[test]
fn regimes_reports_the_high_power_branch() {
    let path = fig4_file();
    let json = stdout_json(&sjscc(&["regimes", path.to_str().unwrap()]));
    assert_eq!(json["regime"], "HighPower");
    assert!((json["P_L"].as_f64().unwrap() - 0.716268).abs() < 1e-5);
    assert!((json["P_H"].as_f64().unwrap() - 0.732051).abs() < 1e-5);
    let rs = json["R_s_bits"].as_f64().unwrap();
    assert!((rs - 3.1168098).abs() < 1e-6);
    assert!((rs - json["R_s_maxmin_check"].as_f64().unwrap()).abs() < 1e-6);
    // resolved parameter echo
    assert!((json["params"]["N1"].as_f64().unwrap() - 0.01).abs() < 1e-15);
}

#[test]
fn regimes_flags_zero_interference() {
    let path = write_params(
        "q0.json",
        r#"{"P": 1.0, "Q": 0.0, "N1": 1.0, "N2": 4.0, "sigma_v2": 1.0}"#,
    );
    let json = stdout_json(&sjscc(&["regimes", path.to_str().unwrap()]));
    assert_eq!(json["regime"], "ZeroInterference");
    assert!(json["P_L"].is_null());
    let expected = 0.5 * (2.0f64 / 1.25).log2();
    assert!((json["R_s_bits"].as_f64().unwrap() - expected).abs() < 1e-9);
}

#[test]
fn validation_failures_exit_with_code_2() {
    let path = write_params(
        "bad.json",
        r#"{"P": 1.0, "Q": 0.0, "N1": 1.0, "N2": 1.0, "sigma_v2": 1.0}"#,
    );
    let output = sjscc(&["regimes", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("DegradednessViolation"),
        "stderr was: {stderr}"
    );
}

#[test]
fn distortion_reports_separation_and_optimum() {
    let path = fig4_file();
    let json = stdout_json(&sjscc(&[
        "distortion",
        path.to_str().unwrap(),
        "--scheme",
        "separation",
    ]));
    assert!((json["closed_form_d"].as_f64().unwrap() - 0.0132890).abs() < 1e-7);
    assert!((json["d_opt"].as_f64().unwrap() - 0.0099010).abs() < 1e-7);

    let hda1 = stdout_json(&sjscc(&[
        "distortion",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
    ]));
    let d = hda1["closed_form_d"].as_f64().unwrap();
    assert!((d - hda1["d_opt"].as_f64().unwrap()).abs() < 1e-12);

    let hda2 = stdout_json(&sjscc(&[
        "distortion",
        path.to_str().unwrap(),
        "--scheme",
        "hda2",
        "--rate",
        "1",
    ]));
    assert!((hda2["closed_form_d"].as_f64().unwrap() - d).abs() < 1e-12);

    let hda3 = stdout_json(&sjscc(&[
        "distortion",
        path.to_str().unwrap(),
        "--scheme",
        "hda3",
        "--rate",
        "1",
    ]));
    assert!((hda3["closed_form_d"].as_f64().unwrap() - d).abs() < 1e-9);
    // R = 1 exceeds the binning window at this operating point
    assert_eq!(hda3["constraints_ok"], Value::Bool(false));

    // hda2 without a rate is a configuration error
    let missing = sjscc(&[
        "distortion",
        path.to_str().unwrap(),
        "--scheme",
        "hda2",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn region_sweep_emits_grid_and_boundaries() {
    let path = fig4_file();
    let output = sjscc(&[
        "region",
        path.to_str().unwrap(),
        "--alpha-grid",
        "0:1:11",
        "--k-grid",
        "0:2:21",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind,alpha,k,feasible,lower_margin,upper_margin"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let grid: Vec<&Vec<&str>> = rows.iter().filter(|r| r[0] == "grid").collect();
    assert_eq!(grid.len(), 11 * 21);
    // k = 0 is always infeasible
    for row in &grid {
        if row[2].parse::<f64>().unwrap() == 0.0 {
            assert_eq!(row[3], "0");
        }
    }
    // a known interior point is feasible: alpha = 0.9, k = 0.9
    let interior = grid
        .iter()
        .find(|r| {
            (r[1].parse::<f64>().unwrap() - 0.9).abs() < 1e-9
                && (r[2].parse::<f64>().unwrap() - 0.9).abs() < 1e-9
        })
        .expect("grid point missing");
    assert_eq!(interior[3], "1");
    // boundary rows pin their binding margin to ~0
    for row in rows.iter().filter(|r| r[0] == "boundary_upper") {
        let upper: f64 = row[5].parse().unwrap();
        assert!(upper.abs() <= 1e-9, "upper boundary margin {upper}");
    }
    for row in rows.iter().filter(|r| r[0] == "boundary_lower") {
        let k: f64 = row[2].parse().unwrap();
        if k > 0.0 {
            let lower: f64 = row[4].parse().unwrap();
            assert!(lower.abs() <= 1e-9, "lower boundary margin {lower}");
        }
    }
}

#[test]
fn mismatch_single_scheme_and_bad_sweeps() {
    let path = fig4_file();
    let output = sjscc(&[
        "mismatch",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--snr1-sweep",
        "20:40:5",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("snr1_db,D_hda1\n"));
    assert_eq!(text.lines().count(), 6);

    // sweeping below the design SNR is invalid
    let below = sjscc(&[
        "mismatch",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--snr1-sweep",
        "10:40:5",
    ]);
    assert_eq!(below.status.code(), Some(2));
}

#[test]
fn exponent_classifies_the_schemes() {
    let path = fig4_file();
    let json = stdout_json(&sjscc(&[
        "exponent",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--window-db",
        "60:80",
        "--points",
        "20",
    ]));
    let zeta = json["zeta"].as_f64().unwrap();
    assert!(zeta.abs() < 0.05, "zeta {zeta}");

    let q0 = write_params(
        "q0exp.json",
        r#"{"P": 1.0, "Q": 0.0, "snrd_db": 20.0, "N2": 1.0, "sigma_v2": 1.0}"#,
    );
    let json = stdout_json(&sjscc(&[
        "exponent",
        q0.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--window-db",
        "60:80",
        "--points",
        "20",
    ]));
    let zeta = json["zeta"].as_f64().unwrap();
    assert!((zeta - 1.0).abs() < 0.05, "zeta {zeta}");

    let json = stdout_json(&sjscc(&[
        "exponent",
        path.to_str().unwrap(),
        "--scheme",
        "hda1-modified",
        "--window-db",
        "60:80",
        "--points",
        "20",
    ]));
    let zeta = json["zeta"].as_f64().unwrap();
    assert!((zeta - 1.0).abs() < 0.05, "zeta {zeta}");
}

#[test]
fn simulation_is_deterministic_and_guarded() {
    let path = write_params(
        "sim.json",
        r#"{"P": 1.0, "Q": 1.0, "N1": 1.0, "N2": 4.0, "sigma_v2": 1.0}"#,
    );
    let args = [
        "simulate",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--samples",
        "100000",
        "--seed",
        "42",
    ];
    let a = sjscc(&args);
    let b = sjscc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical output");
    let json: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(json["z_score"].as_f64().unwrap().abs() <= 5.0);
    assert!((json["closed_form_d"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    // infeasible embedding without --force
    let infeasible = sjscc(&[
        "simulate",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--samples",
        "10000",
        "--seed",
        "1",
        "--alpha",
        "0.5",
        "--k",
        "0",
    ]);
    assert_eq!(infeasible.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&infeasible.stderr);
    assert!(stderr.contains("InfeasibleWithoutOverride"), "stderr: {stderr}");

    // with --force it runs and reports the violated constraints
    let forced = sjscc(&[
        "simulate",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--samples",
        "10000",
        "--seed",
        "1",
        "--alpha",
        "0.5",
        "--k",
        "0",
        "--force",
    ]);
    assert!(forced.status.success());
    let json: Value = serde_json::from_slice(&forced.stdout).unwrap();
    assert_eq!(json["constraints_ok"], Value::Bool(false));
}

#[test]
fn layered_schemes_simulate_to_the_optimum() {
    let path = fig4_file();
    for extra in [["--scheme", "hda2", "--rate", "1"], ["--scheme", "hda3", "--rate", "0.5"]] {
        let mut args = vec![
            "simulate",
            path.to_str().unwrap(),
            "--samples",
            "100000",
            "--seed",
            "4",
        ];
        args.extend(extra);
        let json = stdout_json(&sjscc(&args));
        let closed = json["closed_form_d"].as_f64().unwrap();
        assert!((closed - 0.00990099).abs() < 1e-8, "closed {closed}");
        assert!(json["z_score"].as_f64().unwrap().abs() <= 5.0);
        assert_eq!(json["constraints_ok"], Value::Bool(true));
    }
}

#[test]
fn simulation_is_identical_across_thread_counts() {
    let path = write_params(
        "sim-threads.json",
        r#"{"P": 1.0, "Q": 1.0, "N1": 1.0, "N2": 4.0, "sigma_v2": 1.0}"#,
    );
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_sjscc"))
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "simulate",
                path.to_str().unwrap(),
                "--scheme",
                "hda1",
                "--samples",
                "300000",
                "--seed",
                "9",
            ])
            .output()
            .unwrap()
    };
    let single = run("1");
    let parallel = run("4");
    assert!(single.status.success() && parallel.status.success());
    assert_eq!(
        single.stdout, parallel.stdout,
        "thread count changed the result"
    );
}

#[test]
fn mismatched_simulation_tracks_the_closed_form() {
    let path = fig4_file();
    let json = stdout_json(&sjscc(&[
        "simulate",
        path.to_str().unwrap(),
        "--scheme",
        "hda1",
        "--samples",
        "200000",
        "--seed",
        "7",
        "--snr1-db",
        "40",
    ]));
    // closed form at the design pair under the actual noise
    let closed = json["closed_form_d"].as_f64().unwrap();
    assert!(closed < 0.00990099); // better than the design-point value
    assert!(json["z_score"].as_f64().unwrap().abs() <= 5.0);
}
