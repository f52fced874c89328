use std::process::{Command, Output};

use serde_json::Value;

fn dinikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dinikit"))
        .args(args)
        .env_remove("DINIKIT_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_quarter_matches_closed_form() {
    let o = dinikit(&[
        "eval", "--alpha", "1", "--v", "0.5", "--z", "0.25+0i", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((re - 0.25 * 0.5f64.cos()).abs() < 1e-12, "{re}");
    assert!(v["tail_bound"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn eval_at_origin_is_zero() {
    let o = dinikit(&["eval", "--z", "0+0i", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"]["re"].as_f64(), Some(0.0));
    assert_eq!(v["value"]["im"].as_f64(), Some(0.0));
}

#[test]
fn eval_usage_errors_exit_2() {
    assert_eq!(dinikit(&["eval", "--v", "-1", "--z", "0.1"]).status.code(), Some(2));
    assert_eq!(dinikit(&["eval", "--z", "0.1", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(dinikit(&["eval", "--alpha", "0", "--z", "0.1"]).status.code(), Some(2));
    assert_eq!(dinikit(&["eval", "--z", "zz"]).status.code(), Some(2));
}

#[test]
fn eval_partial_sum() {
    let o = dinikit(&["eval", "--z", "0.5", "--m", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // z - z^2/2 with a_1 = -1/2 at alpha = 1, v = 1/2
    assert!((v["value"]["re"].as_f64().unwrap() - 0.375).abs() < 1e-15);
}

#[test]
fn max_terms_override_is_honored() {
    let o = Command::new(env!("CARGO_BIN_EXE_dinikit"))
        .args(["eval", "--z", "0.9", "--tol", "1e-15"])
        .env("DINIKIT_MAX_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not reached"));
}

#[test]
fn bounds_json_has_exact_fractions() {
    let o = dinikit(&["bounds", "--alpha", "3/2", "--v", "1/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let b = &v["bounds"]["THM_RATIO_WPRIME"];
    assert_eq!(b["num"], "1031");
    assert_eq!(b["den"], "2962");
    assert_eq!(v["hypotheses"]["T21"]["satisfied"], false);
}

#[test]
fn bounds_reject_order_below_seven_eighths() {
    assert_eq!(dinikit(&["bounds", "--v", "-0.9"]).status.code(), Some(2));
}

#[test]
fn verify_single_case() {
    let o = dinikit(&["verify", "--case", "corollary-2.3a", "--radii", "16", "--angles", "180"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["claimed_bound"]["num"], "45");
    assert_eq!(reports[0]["claimed_bound"]["den"], "1286");
    assert_eq!(reports[0]["verdict"], "CONFIRMED");
}

#[test]
fn verify_rejects_closed_disk_and_unknown_case() {
    assert_eq!(dinikit(&["verify", "--rmax", "1.0"]).status.code(), Some(2));
    assert_eq!(dinikit(&["verify", "--case", "corollary-9"]).status.code(), Some(2));
}

#[test]
fn verify_default_runs_all_cases_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let oa = dinikit(&["verify", "--output", a.to_str().unwrap()]);
    let ob = dinikit(&["verify", "--sequential", "--output", b.to_str().unwrap()]);
    let ta = std::fs::read_to_string(&a).unwrap();
    let tb = std::fs::read_to_string(&b).unwrap();
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_str(&ta).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 23);
    let violated = reports.iter().any(|r| r["verdict"] == "VIOLATED");
    let failed = reports.iter().any(|r| r["verdict"] == "EVALUATION_FAILED");
    let want = if failed {
        3
    } else if violated {
        1
    } else {
        0
    };
    assert_eq!(oa.status.code(), Some(want));
    assert_eq!(ob.status.code(), Some(want));

    let r = dinikit(&["report", "--input", a.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(want));
    assert_eq!(stdout(&r).lines().count(), 24);
}

#[test]
fn plot_f1_svg_has_four_curves() {
    let dir = tempfile::tempdir().unwrap();
    let o = dinikit(&[
        "plot",
        "--fn",
        "f1",
        "--format",
        "svg",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("f1.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 4);
    assert!(!dir.path().join("f1.csv").exists());
    assert!(stdout(&o).contains("flagged: 0"));
}

#[test]
fn plot_f5_csv_is_flag_free() {
    let dir = tempfile::tempdir().unwrap();
    let o = dinikit(&[
        "plot",
        "--fn",
        "f5",
        "--format",
        "csv",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(dir.path().join("f5.csv")).unwrap();
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 800);
    assert!(rows.iter().all(|r| r.get(4) == Some("")));
}

#[test]
fn plot_unknown_fn_and_bad_destination() {
    assert_eq!(dinikit(&["plot", "--fn", "f9"]).status.code(), Some(2));
    assert_eq!(
        dinikit(&["plot", "--fn", "f1", "--output", "/proc/nope"]).status.code(),
        Some(4)
    );
}
