use std::f64::consts::PI;
use std::process::Command;

use fourier_laplace::cli::{run_with, Field, OutputRecord, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fourier-laplace").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn complex(f: &Field) -> (f64, f64) {
    let z = f.as_complex().expect("complex field");
    (z.re, z.im)
}

#[test]
fn eval_gaussian_anchor() {
    let (code, out, _) = run(&["eval", "--alpha", "2", "--beta", "0", "--z", "0,0"]);
    assert_eq!(code, EXIT_OK);
    let rec = OutputRecord::from_json(&out).unwrap();
    assert_eq!(rec.schema_version, "1");
    assert_eq!(rec.command, "eval");
    let (re, im) = complex(&rec.rows[0]["value"]);
    let expect = PI.sqrt() / 2.0 / 2f64.sqrt();
    assert!((re - expect).abs() < 1e-10 && (im - expect).abs() < 1e-10);
}

#[test]
fn alpha_one_is_usage_error() {
    let (code, out, err) = run(&["eval", "--alpha", "1", "--beta", "0", "--z", "0,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("alpha > 1"), "{err}");
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["eval", "--alpha", "2", "--z", "1,2,3"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["expand", "--case", "sector2", "--alpha", "2", "--terms", "2"]).0, EXIT_USAGE);
    assert_eq!(run(&["expand", "--case", "sector1", "--alpha", "2", "--theta", "0.5", "--terms", "2"]).0, EXIT_USAGE);
    assert_eq!(run(&["compare", "--alpha", "2", "--theta", "-1", "--radii", "10,5", "--terms", "1"]).0, EXIT_USAGE);
    assert_eq!(run(&["demo-mueger", "--alpha", "2", "--s", "0.5"]).0, EXIT_USAGE);
}

#[test]
fn overflow_is_numeric_failure() {
    let (code, out, err) = run(&["eval", "--alpha", "2", "--z", "70,70"]);
    assert_eq!(code, EXIT_NUMERIC);
    assert!(out.is_empty());
    assert!(err.contains("overflow"), "{err}");
}

#[test]
fn expand_real_axis_leading_coefficients() {
    let (code, out, _) = run(&["expand", "--case", "real-axis", "--alpha", "2", "--beta", "0", "--terms", "1"]);
    assert_eq!(code, EXIT_OK);
    let rec = OutputRecord::from_json(&out).unwrap();
    let term = rec.rows.iter().find(|r| r["kind"] == Field::Text("term".into())).unwrap();
    let (cr, ci) = complex(&term["c"]);
    assert!(cr.abs() < 1e-14 && (ci + 1.0).abs() < 1e-14);
    let (dr, di) = complex(&term["d"]);
    let h = PI.sqrt() / 2f64.sqrt();
    assert!((dr - h).abs() < 1e-12 && (di - h).abs() < 1e-12);
}

#[test]
fn negative_complex_arguments_parse() {
    let (code, out, _) = run(&["--no-header", "eval", "--alpha", "2", "--beta", "-0.5,1", "--z", "-1,-2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let rec = OutputRecord::from_json(&out).unwrap();
    assert_eq!(complex(&rec.params["beta"]), (-0.5, 1.0));
    assert_eq!(complex(&rec.params["z"]), (-1.0, -2.0));
}

#[test]
fn json_and_csv_encode_the_same_record() {
    let cases: &[&[&str]] = &[
        &["eval", "--alpha", "2.5", "--beta", "0.5", "--z", "1,-1"],
        &["expand", "--case", "sector2", "--alpha", "2", "--beta", "-2", "--theta", "0.7", "--terms", "3"],
        &["compare", "--alpha", "2", "--theta", "-1.2", "--radii", "4,8,16", "--terms", "2"],
        &["bounds", "--alpha", "2", "--C", "0.5", "--xs", "4,8"],
        &["demo-tauberian", "--kappa", "2", "--xs", "25,50"],
        &["demo-mueger", "--alpha", "2", "--s", "2"],
    ];
    for args in cases {
        for header in [true, false] {
            let mut base: Vec<&str> = if header { vec![] } else { vec!["--no-header"] };
            base.extend_from_slice(args);
            let (c1, json, e1) = run(&base);
            assert_eq!(c1, EXIT_OK, "{args:?}: {e1}");
            let mut csv_args = vec!["--format", "csv"];
            csv_args.extend_from_slice(&base);
            let (c2, csv, _) = run(&csv_args);
            assert_eq!(c2, EXIT_OK);
            let a = OutputRecord::from_json(&json).unwrap();
            let b = OutputRecord::from_csv(&csv).unwrap();
            assert_eq!(a, b, "{args:?}");
            assert_eq!(a.header.is_some(), header);
            assert_eq!(OutputRecord::from_json(&a.to_json().unwrap()).unwrap(), a);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--no-header", "compare", "--alpha", "3", "--theta", "-0.5", "--radii", "3,6,12,24", "--terms", "2"];
    let first = run(&args).1;
    for _ in 0..3 {
        assert_eq!(run(&args).1, first);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fourier-laplace");
    let ok = Command::new(bin).args(["eval", "--alpha", "2", "--z", "0,0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(OutputRecord::from_json(std::str::from_utf8(&ok.stdout).unwrap()).is_ok());
    let bad = Command::new(bin).args(["eval", "--alpha", "0.5", "--z", "0,0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
}
