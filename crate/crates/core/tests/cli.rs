use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn pfk(args: &[&str], env_cap: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pfk"));
    cmd.args(args).current_dir(root()).env_remove("PFK_CAP");
    if let Some(c) = env_cap {
        cmd.env("PFK_CAP", c);
    }
    cmd.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn spectral_census_over_sierpinski() {
    let out =
        pfk(&["bundle-enumerate", "--space", "data/S.json", "--fq", "data/q2d1.json", "--filter", "spectral"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["count"], 2);
}

#[test]
fn primes_of_c3_via_in_alias() {
    let out = pfk(&["primes", "--in", "data/c3.json"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["primes"], serde_json::json!(["0", "m"]));
}

#[test]
fn m3_is_not_a_frame() {
    let out = pfk(&["lattice-check", "--lattice", "data/m3.json", "--level", "frame"], None);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let dist = r["verdicts"].as_array().unwrap().iter().find(|v| v["name"] == "binary distributivity").unwrap();
    assert_eq!(dist["witness"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn lax_law_failure_exits_one() {
    let args =
        ["morphism-check", "--source", "data/B1.json", "--target", "data/B2.json", "--morphism", "data/B1_to_B2.json"];
    let out = pfk(&args, None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdicts"][0]["witness"], serde_json::json!(["1", "x1"]));
}

#[test]
fn rejected_linearized_locale_exits_one() {
    let out = pfk(&["linloc-check", "--linloc", "data/L1_bad.json"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdicts"][0]["name"], "spectral kernel continuous");
}

#[test]
fn invalid_input_exits_two_with_paths() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"points": ["a"], "opens": [["a", "zz"], ["q"]]}"#).unwrap();
    let out = pfk(&["soberify", "--space", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "invalid-input");
    let errors = r["errors"].as_array().unwrap();
    assert_eq!(errors.len(), 2);
    assert!(errors[0].as_str().unwrap().starts_with("$.opens[0]"));

    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(pfk(&["primes", "--lattice", bad.to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    let out = pfk(&["frobnicate"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(pfk(&["primes"], None).status.code(), Some(2));
    assert_eq!(pfk(&["--help"], None).status.code(), Some(0));
}

#[test]
fn caps_from_env_and_flag() {
    let args = ["bundle-enumerate", "--space", "data/S.json", "--fq", "data/q2d2.json"];
    assert_eq!(pfk(&args, None).status.code(), Some(0));
    let capped = pfk(&args, Some("3"));
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(report(&capped)["status"], "unverified");
    let mut flagged = args.to_vec();
    flagged.extend(["--cap", "1000"]);
    assert_eq!(pfk(&flagged, Some("3")).status.code(), Some(0));
    assert_eq!(pfk(&args, Some("lots")).status.code(), Some(2));
}

#[test]
fn out_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let dot_path = dir.path().join("b3.dot");
    let out = pfk(
        &["dot", "--bundle", "data/B3.json", "--dot", dot_path.to_str().unwrap(), "--out", out_path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert_eq!(r["dot"], dot.as_str());
    assert!(dot.contains("y0\\nκ = 0:"));
    assert_eq!(r["edges"], 2);
}

#[test]
fn spec_of_l1_and_transpose() {
    let out = pfk(&["spec", "--linloc", "data/L1.json"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["base_points"], serde_json::json!(["0", "m"]));
    let t = pfk(
        &["transpose", "--bundle", "data/B3.json", "--linloc", "data/L1.json", "--morphism", "data/B3_to_specL1.json"],
        None,
    );
    assert_eq!(t.status.code(), Some(0));
    let r = report(&t);
    assert_eq!(r["inverse_image"]["0"], "{}");
    assert_eq!(r["inverse_image"]["m"], "{y0,y1}");
    assert_eq!(r["strict"], false);
}
