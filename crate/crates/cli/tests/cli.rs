use std::process::{Command, Output};

use multmap::report::{analyze, AnalysisReport, AnalyzeOptions};
use serde_json::Value;

fn multmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multmap"))
        .args(args)
        .env_remove("MULTMAP_FORMAT")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = multmap(&all);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn cx(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn analyze_quadratic() {
    let r = json(&["analyze", "--poly", "-1,0,1"]);
    assert_eq!(r["jac_coeff"]["numerical_rank"], 1);
    let m: Vec<(f64, f64)> = r["multipliers"].as_array().unwrap().iter().map(cx).collect();
    assert_eq!(m, vec![(-2.0, 0.0), (2.0, 0.0)]);
    assert_eq!(cx(&r["jac_coeff"]["hypersurface_residual"]["raw"]), (0.0, 0.0));
    // row-major [re, im] pairs
    assert_eq!(r["jac_coeff"]["matrix"][1][0], serde_json::json!([-1.0, 0.0]));
}

#[test]
fn analyze_cubic_minor() {
    let r = json(&["analyze", "--poly", "0,2,-3,1"]);
    assert_eq!(r["jac_coeff"]["numerical_rank"], 2);
    let m33 = &r["jac_roots"]["minors"][2];
    assert_eq!(m33["index"], 3);
    let (re, im) = cx(&m33["value"]);
    assert!((re + 2.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(code(&multmap(&["analyze", "--poly", "1,2,1"])), 2);
    assert_eq!(code(&multmap(&["analyze", "--poly", "1,two,1"])), 1);
    let o = multmap(&["analyze", "--poly", "-2,0,2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--monicize"));
    assert_eq!(code(&multmap(&["--monicize", "analyze", "--poly", "-2,0,2"])), 0);
    assert_eq!(code(&multmap(&["analyze", "--poly", "-1,0,1", "--rank-tol", "2"])), 1);
}

#[test]
fn analysis_json_round_trips() {
    let o = multmap(&["analyze", "--json", "--poly", "1,-3,0,0,0,1"]);
    let text = stdout(&o);
    let parsed: AnalysisReport = serde_json::from_str(&text).unwrap();
    let direct = analyze("1,-3,0,0,0,1", &AnalyzeOptions::default()).unwrap();
    assert_eq!(parsed, direct);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
}

#[test]
fn kernel_examples() {
    let r = json(&["kernel", "--poly", "1,0,-2,0,1"]);
    assert_eq!(r["w_dim"], 1);
    assert_eq!(r["w_basis"], serde_json::json!([["-1", "0", "1"]]));
    assert_eq!(r["field"], "Q");

    assert_eq!(json(&["kernel", "--poly", "-1,0,0,0,0,0,1"])["w_dim"], 0);

    let r = json(&["kernel", "--poly", "0,0,0,0,1", "--char", "101"]);
    assert_eq!(r["w_dim"], 1);
    assert_eq!(r["field"], "F_101");

    let r = json(&["kernel", "--poly", "1/2+i,0,1"]);
    assert_eq!(r["field"], "Q(i)");
}

#[test]
fn kernel_rejections() {
    assert_eq!(code(&multmap(&["kernel", "--poly", "-1,0,0,0,0,1", "--char", "5"])), 1);
    assert_eq!(code(&multmap(&["kernel", "--poly", "1,0,1", "--char", "9"])), 1);
    assert_eq!(code(&multmap(&["kernel", "--poly", "0.5,0,1"])), 1);
    assert_eq!(code(&multmap(&["kernel", "--poly", "1,2"])), 1);
}

#[test]
fn kernel_golden() {
    let o = multmap(&["kernel", "--json", "--poly", "162,45,20,15,0,1"]);
    assert_eq!(code(&o), 0);
    let golden = include_str!("golden/kernel_quintic.json");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn verify_paper_passes() {
    let o = multmap(&["verify-paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn verify_paper_fault_injection() {
    let o = multmap(&["verify-paper", "--inject-fault", "rees-sign"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("minor-law"));
    assert!(stdout(&o).contains("FAIL minor-law-anchor"));
    assert_eq!(code(&multmap(&["verify-paper", "--inject-fault", "nope"])), 1);
}

#[test]
fn verify_paper_filter() {
    let s = json(&["verify-paper", "--filter", "hypersurface"]);
    let verdicts = s["verdicts"].as_array().unwrap();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|v| v["name"].as_str().unwrap().contains("hypersurface")));
}

#[test]
fn random_histograms() {
    let r = json(&["random", "--n", "8", "--trials", "50", "--seed", "7"]);
    assert_eq!(r["rank_histogram"], serde_json::json!({"7": 50}));
    let r = json(&["random", "--n", "2", "--trials", "5", "--seed", "1"]);
    assert_eq!(r["rank_histogram"], serde_json::json!({"1": 5}));
}

#[test]
fn random_is_deterministic() {
    let a = multmap(&["random", "--n", "6", "--trials", "40", "--seed", "3"]);
    let b = multmap(&["random", "--n", "6", "--trials", "40", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = multmap(&["--json", "random", "--n", "6", "--trials", "40", "--seed", "3"]);
    let b = multmap(&["--json", "random", "--n", "6", "--trials", "40", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_rejects_bad_arguments() {
    assert_eq!(code(&multmap(&["random", "--n", "13", "--trials", "5"])), 1);
    assert_eq!(code(&multmap(&["random", "--n", "1", "--trials", "5"])), 1);
    assert_eq!(code(&multmap(&["random", "--n", "4", "--trials", "0"])), 1);
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_multmap"))
        .args(["kernel", "--poly", "0,0,0,1"])
        .env("MULTMAP_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["w_dim"], 0);
}

#[test]
fn usage_and_help() {
    assert_eq!(code(&multmap(&["--help"])), 0);
    assert_eq!(code(&multmap(&["--version"])), 0);
    assert_eq!(code(&multmap(&["frobnicate"])), 1);
    assert_eq!(code(&multmap(&["analyze"])), 1);
}
