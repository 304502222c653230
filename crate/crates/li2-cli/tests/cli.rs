//! End-to-end tests of the command-line surface: flags, formats, exit codes.

use li2::recurrence::{annihilation_residual, recurrence_from_json};
use li2::seq::binomial_transform;
use li2::{Complex, Dd, Real, TransformParams};
use std::process::{Command, Output};

fn li2_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_li2"))
}

fn run(args: &[&str]) -> Output {
    li2_bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_path(name: &str) -> std::path::PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("li2-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn eval_classic_point() {
    let out = run(&["eval", "--re", "-1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-8.2246703342411320e-1"), "{text}");
    assert!(text.contains("identity    = direct"));
}

#[test]
fn eval_zero_short_circuits() {
    let out = run(&["eval", "--re", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("terms       = 0"));
    assert!(text.contains("closed_form"));
}

#[test]
fn eval_on_cut_policies_and_exit_codes() {
    let out = run(&["eval", "--re", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("on branch cut"));

    let out = run(&["eval", "--re", "2", "--on-cut", "above"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // pi^2/4 + i pi ln 2
    assert!(text.contains("2.4674011002723395e0"), "{text}");
    assert!(text.contains("2.1775860903036022e0"), "{text}");

    let out = run(&["eval", "--re", "0.999999", "--max-terms", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn eval_json_round_trips_binary64() {
    let out = run(&["eval", "--re", "-0.7312", "--im", "0.25", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    for key in ["re", "im", "terms", "condition_number", "error_bound", "identity"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    // The JSON value is the bit-exact binary64 result of the library call.
    let reference = li2::li2(Complex::new(-0.7312, 0.25)).unwrap();
    assert_eq!(v["re"].as_f64().unwrap(), reference.value.re);
    assert_eq!(v["im"].as_f64().unwrap(), reference.value.im);
    assert_eq!(v["terms"].as_u64().unwrap() as usize, reference.terms_used);
}

#[test]
fn eval_extended_precision_prints_more_digits() {
    let out = run(&["eval", "--re", "-1", "--precision", "extended"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Li2(-1) = -0.82246703342411321823620758332301259...
    assert!(
        text.contains("-8.2246703342411321823620758332300") ,
        "{text}"
    );
}

#[test]
fn sweep_unit_circle_csv() {
    let path = tmp_path("sweep.csv");
    let out = run(&["sweep", "--points", "360", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,re_x,im_x,re_li2,im_li2,terms,cond,identity"
    );
    let mut prev_theta = 0.0f64;
    let mut rows = 0;
    let mut max_terms = 0i64;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 8, "row: {line}");
        let theta: f64 = fields[0].parse().unwrap();
        assert!(theta > prev_theta, "theta must increase");
        prev_theta = theta;
        let terms: i64 = fields[5].parse().unwrap();
        max_terms = max_terms.max(terms);
        let cond: f64 = fields[6].parse().unwrap();
        assert!(cond >= 1.0);
        assert!(["direct", "reflection", "reciprocal"].contains(&fields[7]));
        rows += 1;
    }
    assert_eq!(rows, 359);
    assert!(max_terms < 70, "max terms {max_terms}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_inside_disk_uses_direct_and_reflection_only() {
    let path = tmp_path("sweep-half.csv");
    let out = run(&[
        "sweep",
        "--points",
        "180",
        "--radius",
        "0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1) {
        let identity = line.rsplit(',').next().unwrap();
        assert!(identity == "direct" || identity == "reflection", "{line}");
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_error_paths() {
    let out = run(&["sweep", "--out", "/nonexistent-dir/x.csv", "--points", "8"]);
    assert_eq!(out.status.code(), Some(1));

    // Starving the summation forces rows with terms = -1 and exit code 3.
    let path = tmp_path("sweep-starved.csv");
    let out = run(&[
        "sweep",
        "--points",
        "16",
        "--radius",
        "0.99",
        "--max-terms",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().skip(1).any(|l| l.split(',').nth(5) == Some("-1")));
    std::fs::remove_file(&path).ok();
}

#[test]
fn transform_constants_recurrence() {
    let input = tmp_path("const.json");
    let output = tmp_path("const-out.json");
    std::fs::write(&input, r#"{"order":1,"coefficients":[[-1],[1]]}"#).unwrap();
    let out = run(&[
        "transform",
        "--recurrence",
        input.to_str().unwrap(),
        "--alpha-re",
        "1",
        "--beta-re",
        "1",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rec = recurrence_from_json(&std::fs::read_to_string(&output).unwrap()).unwrap();
    // B(1,1) of a constant sequence is 2^n: the output must annihilate it.
    let geometric: Vec<Complex<f64>> = (0..12)
        .map(|n| Complex::new(2.0f64.powi(n) * 5.0, 0.0))
        .collect();
    assert!(annihilation_residual(&rec, &geometric).unwrap() <= 1e-13);
    std::fs::remove_file(&input).ok();
    std::fs::remove_file(&output).ok();
}

#[test]
fn transform_identity_params_round_trip() {
    let input = tmp_path("ident.json");
    let output = tmp_path("ident-out.json");
    std::fs::write(
        &input,
        r#"{"order":2,"coefficients":[[2],[-3,[0,1]],[1]]}"#,
    )
    .unwrap();
    let out = run(&[
        "transform",
        "--recurrence",
        input.to_str().unwrap(),
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let original = recurrence_from_json(&std::fs::read_to_string(&input).unwrap()).unwrap();
    let transformed = recurrence_from_json(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(original, transformed);
    std::fs::remove_file(&input).ok();
    std::fs::remove_file(&output).ok();
}

#[test]
fn transform_q_recurrence_against_extended_oracle() {
    let input = tmp_path("q3.json");
    let output = tmp_path("q3-out.json");
    // (n+2)² F[n+1] − 3 (n+1)² F[n] = 0.
    std::fs::write(
        &input,
        r#"{"order":1,"coefficients":[[-3,-6,-3],[4,4,1]]}"#,
    )
    .unwrap();
    let out = run(&[
        "transform",
        "--recurrence",
        input.to_str().unwrap(),
        "--alpha-re",
        "2",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rec = recurrence_from_json(&std::fs::read_to_string(&output).unwrap()).unwrap();

    // Directly computed B(2,1)Q at x = 3 in extended precision.
    let q: Vec<Dd> = (0..40)
        .map(|k| {
            let mut p = Dd::ONE;
            for _ in 0..=k {
                p = p * Dd::from_f64(3.0);
            }
            p / Dd::from_f64(((k + 1) * (k + 1)) as f64)
        })
        .collect();
    let transformed = binomial_transform(&q, TransformParams::new(Dd::from_f64(2.0), Dd::ONE));
    let prefix: Vec<Complex<f64>> = transformed
        .iter()
        .map(|v| Complex::new(v.to_f64(), 0.0))
        .collect();
    assert!(annihilation_residual(&rec, &prefix).unwrap() <= 1e-10);
    std::fs::remove_file(&input).ok();
    std::fs::remove_file(&output).ok();
}

#[test]
fn transform_error_exit_codes() {
    let bad = tmp_path("bad.json");
    std::fs::write(&bad, "not json").unwrap();
    let out = run(&[
        "transform",
        "--recurrence",
        bad.to_str().unwrap(),
        "--out",
        "/tmp/never.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));

    let good = tmp_path("good.json");
    std::fs::write(&good, r#"{"order":1,"coefficients":[[-1],[1]]}"#).unwrap();
    let out = run(&[
        "transform",
        "--recurrence",
        good.to_str().unwrap(),
        "--beta-re",
        "0",
        "--out",
        "/tmp/never.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&bad).ok();
    std::fs::remove_file(&good).ok();
}
