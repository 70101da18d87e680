//! End-to-end checks of the `fractal-calc` binary.

use std::process::{Command, Output};

use fractal_calculus::verify::run_all;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fractal-calc")).args(args).output().unwrap()
}

fn rows(out: &Output) -> Vec<Vec<f64>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn staircase_grid_is_monotone_from_origin_to_one() {
    let out = run(&["staircase", "--grid", "0", "1", "1000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("x,value\n") && text.ends_with('\n') && !text.contains('\r'));
    let r = rows(&out);
    assert_eq!(r.len(), 1000);
    assert_eq!((r[0][0], r[0][1]), (0.0, 0.0));
    assert_eq!((r[999][0], r[999][1]), (1.0, 1.0));
    assert!(r.windows(2).all(|w| w[0][1] <= w[1][1]));
}

#[test]
fn classical_half_derivative_of_square() {
    let out = run(&["rl-der", "--alpha-mode", "identity", "--beta", "0.5", "--f", "x^2", "--grid", "0.1", "1", "10"]);
    assert!(out.status.success());
    for r in rows(&out) {
        assert!((r[1] - 1.5045 * r[0].powf(1.5)).abs() < 1e-3 * r[0].powf(1.5).max(1.0), "{r:?}");
    }
}

#[test]
fn every_subcommand_runs() {
    for args in [
        &["gamma", "--grid", "0.5", "2", "4"][..],
        &["gamma", "--mode", "raw"],
        &["beta", "--r", "0.5"],
        &["ml", "--eta", "1", "--nu", "1"],
        &["rl-int", "--beta", "0.5", "--f", "S(x)^2"],
        &["rl-der", "--beta", "0.5", "--f", "S(x)", "--scheme", "double-exponential"],
        &["caputo", "--beta", "0.5", "--f", "-S(x)^2", "--side", "right"],
        &["caputo", "--beta", "0.5", "--f", "exp(S(x))", "--kernel", "dimension-shifted"],
        &["laplace", "--f", "exp(-S(x))"],
        &["solve", "--id", "3"],
        &["solve", "--id", "4", "--lambda", "-0.25"],
        &["staircase", "--format", "svg"],
        &["staircase", "--alpha-mode", "identity", "--depth", "20"],
    ] {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
}

/// Raw `x` pulls back to the Cantor quantile in the measure coordinate,
/// which is nowhere smooth; the derivative refuses instead of guessing.
#[test]
fn rough_input_is_a_runtime_error() {
    let out = run(&["caputo", "--beta", "0.5", "--f", "x", "--kernel", "dimension-shifted"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("finite-difference"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["staircase", "--grid", "1", "0", "10"][..],
        &["staircase", "--grid", "0", "1", "1"],
        &["rl-int", "--beta", "0.5", "--f", "x +"],
        &["rl-int", "--beta", "-1", "--f", "x"],
        &["frobnicate"],
        &["solve", "--id", "7"],
        &["staircase", "--tol", "-1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fractal-calc"))
        .args(["staircase"])
        .env("FRACTAL_CALC_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_fractal-calc"))
        .args(["rl-der", "--beta", "0.5", "--f", "S(x)^2"])
        .env("FRACTAL_CALC_TOL", "1e-2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn output_file_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.svg");
    let out = run(&["staircase", "--format", "svg", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let figs = dir.path().join("figs");
    let out = run(&["figures", "--format", "svg", "--output", figs.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(&figs).unwrap().count(), 7);
}

/// `verify` exits 0 exactly when every criterion passes.
#[test]
fn verify_exit_status_tracks_criteria() {
    let out = run(&["verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    let all_pass = run_all().iter().all(|r| r.passed);
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
    assert_eq!(text.lines().all(|l| l.starts_with("[PASS]")), all_pass);
}
