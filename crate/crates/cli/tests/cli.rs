use std::process::{Command, Output};

use faber_walsh::map::TwoIntervalSet;
use faber_walsh::recursion::{AlphaSequence, BetaScheme};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faber-walsh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn cells(line: &str) -> Vec<&str> {
    line.split(", ").collect()
}

/// Data rows of the first CSV table, header dropped.
fn table(text: &str) -> Vec<Vec<&str>> {
    text.lines().skip(1).take_while(|l| !l.is_empty()).map(cells).collect()
}

#[test]
fn polys_match_closed_forms() {
    let out = stdout(&["polys", "--a", "1", "--mu", "0.5", "--n", "2"]);
    assert_eq!(out, "degree, c0, c1, c2\n0, 1\n1, -1, 1\n2, -1.0625, 0, 1\n");
    assert_eq!(stdout(&["polys", "--n", "0"]), "degree, c0\n0, 1\n");
    let minus = stdout(&["polys", "--seq", "minus", "--n", "1"]);
    assert_eq!(minus.lines().last().unwrap(), "1, 1, 1");
}

#[test]
fn polys_round_trip_exactly() {
    let out = stdout(&["polys", "--alpha", "0.3", "--beta", "1.7", "--n", "12"]);
    let set = TwoIntervalSet::new(0.3, 1.7).unwrap();
    let scheme = BetaScheme::for_map(&set.laurent_map(8), &AlphaSequence::plus_first(set.a()), 12).unwrap();
    for row in table(&out) {
        let n: usize = row[0].parse().unwrap();
        let parsed: Vec<f64> = row[1..].iter().map(|c| c.parse().unwrap()).collect();
        let expect: Vec<f64> = scheme.b(n).coeffs().iter().map(|c| c.re + 0.0).collect();
        assert_eq!(parsed, expect, "degree {n}");
    }
}

#[test]
fn polys_json() {
    let v: Value = serde_json::from_str(&stdout(&["polys", "--n", "2", "--format", "json"])).unwrap();
    assert_eq!(v["set"]["mu"], 0.5);
    assert_eq!(v["polynomials"][2]["coefficients"][0], -1.0625);
}

#[test]
fn series_of_inverse_has_unit_root_rate() {
    let out = stdout(&["series", "--n", "40"]);
    let rows = table(&out);
    assert_eq!(rows.len(), 41);
    let root: f64 = rows[40][3].parse().unwrap();
    assert!((root - 1.0).abs() < 0.01, "{root}");
    // a second table with the monomial coefficients of s_n follows
    let assembled = out.split("\n\n").nth(1).unwrap();
    assert!(assembled.starts_with("power, re, im\n"));
    assert_eq!(assembled.lines().count(), 42);
}

#[test]
fn series_of_b1_is_a_unit_vector() {
    let out = stdout(&["series", "--function", "rational", "--num", "-1,1", "--den", "1", "--n", "6"]);
    for row in table(&out) {
        let k: usize = row[0].parse().unwrap();
        let re: f64 = row[1].parse().unwrap();
        let im: f64 = row[2].parse().unwrap();
        let target = if k == 1 { 1.0 } else { 0.0 };
        assert!((re - target).abs() < 1e-10 && im.abs() < 1e-10, "k={k}: {re} {im}");
    }
}

#[test]
fn series_does_not_depend_on_square_radius() {
    let parse = |r: &str| -> Vec<(f64, f64)> {
        table(&stdout(&["series", "--n", "25", "--r", r]))
            .iter()
            .map(|row| (row[1].parse().unwrap(), row[2].parse().unwrap()))
            .collect()
    };
    let small = parse("0.5");
    let large = parse("0.95");
    for ((a, b), (c, d)) in small.iter().zip(&large) {
        let scale = a.hypot(*b);
        assert!((a - c).hypot(b - d) <= 1e-8 * scale);
    }
}

#[test]
fn series_with_pole_on_set_exits_4() {
    assert_eq!(exit_code(&["series", "--function", "rational", "--num", "1", "--den", "-1.1,1"]), 4);
    assert_eq!(exit_code(&["series", "--function", "rational", "--num", "1", "--den", "0.75,1"]), 4);
    assert_eq!(exit_code(&["series", "--function", "rational", "--num", "1", "--den", "1,0,1", "--n", "4"]), 0);
}

#[test]
fn error_curve_defaults() {
    let out = stdout(&["error-curve"]);
    let rows = table(&out);
    assert_eq!(rows.len(), 41);
    for row in &rows {
        let n: usize = row[0].parse().unwrap();
        let error: f64 = row[1].parse().unwrap();
        assert!(error.is_finite() && error > 0.0);
        if n <= 33 && n % 2 == 1 {
            assert_eq!(row[3], "pass", "n={n}");
        }
        if n > 33 {
            assert_eq!(row[3], "");
        }
    }
    let e33: f64 = rows[33][1].parse().unwrap();
    assert!((5e-11..=5e-9).contains(&e33), "{e33}");
    assert_eq!(rows[40][4], "true");
}

#[test]
fn error_curve_short() {
    let rows_text = stdout(&["error-curve", "--n", "5"]);
    let rows = table(&rows_text);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap().is_finite()));
}

#[test]
fn diagnostics_report_fields() {
    let v: Value = serde_json::from_str(&stdout(&["diagnostics", "--n", "20", "--z0", "0"])).unwrap();
    assert!((v["convergence_factor"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 20);
    for key in ["error_curve", "quotient_error", "norm_roots", "normalised_norm_roots"] {
        for x in v[key].as_array().unwrap() {
            let x = x.as_f64().unwrap();
            assert!(x.is_finite() && x >= 0.0, "{key}");
        }
    }
    assert!(v["empirical_bounds"]["c1"].as_f64().unwrap() > 0.0);

    let far: Value = serde_json::from_str(&stdout(&["diagnostics", "--n", "5", "--z0", "10"])).unwrap();
    assert!(far["convergence_factor"].as_f64().unwrap() < 0.2);
    let inf: Value = serde_json::from_str(&stdout(&["diagnostics", "--n", "5", "--z0", "inf"])).unwrap();
    assert_eq!(inf["convergence_factor"], 0.0);
}

#[test]
fn diagnostics_bad_z0() {
    assert_eq!(exit_code(&["diagnostics", "--z0", "1"]), 5);
    assert_eq!(exit_code(&["diagnostics", "--z0", "-0.8"]), 5);
    assert_eq!(exit_code(&["diagnostics", "--z0", "one"]), 5);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(exit_code(&["polys", "--alpha", "0.5"]), 2);
    assert_eq!(exit_code(&["polys", "--alpha", "0.5", "--beta", "1", "--a", "1", "--mu", "0.5"]), 2);
    assert_eq!(exit_code(&["polys", "--alpha", "1", "--beta", "0.5"]), 2);
    assert_eq!(exit_code(&["polys", "--n", "61"]), 2);
    assert_eq!(exit_code(&["series", "--r", "1.2"]), 2);
    assert_eq!(exit_code(&["series", "--r", "-0.1"]), 2);
    assert_eq!(exit_code(&["error-curve", "--mesh", "0"]), 2);
    assert_eq!(exit_code(&["series", "--function", "rational", "--num", "1"]), 2);
    assert_eq!(exit_code(&["diagnostics", "--n", "0"]), 2);
}

#[test]
fn soft_cap_warns() {
    let out = run(&["polys", "--n", "45"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn output_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut contents = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{i}.json"));
        let p = path.to_str().unwrap();
        assert!(run(&["diagnostics", "--n", "12", "--out", p]).status.success());
        contents.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(contents[0], contents[1]);
    assert!(!contents[0].is_empty());
}
