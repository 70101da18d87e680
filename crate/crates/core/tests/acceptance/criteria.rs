//! One test per acceptance criterion; each writes its result line to the
//! terminal, bypassing output capture.

use std::io::Write;

use fractal_calculus::verify::{run_criterion, CriterionResult};

fn report(r: &CriterionResult) {
    let _ = writeln!(std::io::stderr(), "{r}");
}

fn check(id: u8) {
    let r = run_criterion(id);
    report(&r);
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_1_staircase_exactness() {
    check(1);
}

#[test]
fn criterion_2_beta_identities() {
    check(2);
}

#[test]
fn criterion_3_mittag_leffler_special_cases() {
    check(3);
}

#[test]
fn criterion_4_power_rules() {
    check(4);
}

#[test]
fn criterion_5_composition_identities() {
    check(5);
}

#[test]
fn criterion_6_laplace_rules() {
    check(6);
}

#[test]
fn criterion_7_classical_degeneration() {
    check(7);
}

#[test]
fn criterion_8_worked_examples() {
    check(8);
}

/// Two consecutive `figures` runs of the binary give byte-identical CSVs;
/// the in-process check of the library runs as well.
#[test]
fn criterion_9_determinism() {
    let bin = env!("CARGO_BIN_EXE_fractal-calc");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = std::process::Command::new(bin)
            .args(["figures", "--output"])
            .arg(d.path())
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let mut names: Vec<_> = std::fs::read_dir(dirs[0].path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 7);
    let mut differing = Vec::new();
    for n in &names {
        let a = std::fs::read(dirs[0].path().join(n)).unwrap();
        let b = std::fs::read(dirs[1].path().join(n)).unwrap();
        if a != b {
            differing.push(n.to_string_lossy().into_owned());
        }
    }
    let library = run_criterion(9);
    report(&library);
    let _ = writeln!(
        std::io::stderr(),
        "[{}] criterion 9 via the binary: {} CSV files, differing: {:?}",
        if differing.is_empty() { "PASS" } else { "FAIL" },
        names.len(),
        differing
    );
    assert!(differing.is_empty() && library.passed);
}
