use pfk_web::{bundle_report, census_report, lattice_report};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn chain_primes_and_m3_failure() {
    let c3 = r#"{"elements": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]]}"#;
    let r = parse(&lattice_report(c3).unwrap());
    assert_eq!(r["status"], "pass");
    assert_eq!(r["primes"], serde_json::json!(["0", "m"]));
    let m3 =
        r#"{"elements": ["0","a","b","c","1"], "leq": [["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#;
    assert_eq!(parse(&lattice_report(m3).unwrap())["status"], "fail");
}

#[test]
fn sierpinski_census() {
    let s = r#"{"points": ["x0", "x1"], "opens": [[], ["x1"], ["x0", "x1"]]}"#;
    let r = parse(&census_report(s, 2, 1).unwrap());
    assert_eq!(r["counts"]["continuous"], 3);
    assert_eq!(r["counts"]["spectral"], 2);
}

#[test]
fn bundle_classification_and_errors() {
    let b2 = r#"{"space": {"points": ["x0", "x1"], "opens": [[], ["x1"], ["x0", "x1"]]},
        "fq": {"q": 2, "dim": 1}, "kappa": {"x0": {"basis": []}, "x1": {"basis": ["1"]}}}"#;
    let r = parse(&bundle_report(b2).unwrap());
    assert_eq!(r["spectral"], false);
    assert_eq!(r["criteria"]["witness"], "1");
    let bad = parse(&bundle_report("{}").unwrap_err());
    assert_eq!(bad["status"], "invalid-input");
}
