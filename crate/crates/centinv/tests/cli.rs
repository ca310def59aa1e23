//! Integration tests for the batch runners behind the command line:
//! deterministic report bodies, golden canonical output, and the error
//! paths that map to usage failures.

use centinv::combinatorics::Partition;
use centinv::jobs::{
    invariant_texts, run_basis, run_envelope, run_index, run_invariants, run_verify, JobConfig,
};
use centinv::Error;

fn cfg(lambda: &str, case: &str, field: &str) -> JobConfig {
    JobConfig::new(lambda, case, field).unwrap()
}

#[test]
fn basis_listing_matches_minima_sum() {
    let report = run_basis(&cfg("3,2", "gl", "q")).unwrap();
    assert!(report.pass);
    let payload = report.payload.unwrap();
    assert_eq!(payload["dim"], 9);
    assert_eq!(payload["basis"].as_array().unwrap().len(), 9);
    // first entry is ξ_1^{1,0}
    assert_eq!(payload["basis"][0], serde_json::json!({"i": 1, "j": 1, "s": 0}));
}

#[test]
fn golden_invariants_2_1_gl() {
    let lambda = Partition::parse("2,1").unwrap();
    let got: Vec<String> = invariant_texts(&lambda)
        .into_iter()
        .enumerate()
        .map(|(k, text)| format!("x_{} = {}", k + 1, text))
        .collect();
    let want = include_str!("golden/invariants_2_1_gl.txt");
    assert_eq!(got.join("\n") + "\n", want);
}

#[test]
fn golden_invariants_2_2_sp() {
    let c = cfg("2,2", "sp", "q");
    let report = run_invariants(&c).unwrap();
    assert!(report.pass);
    let payload = report.payload.unwrap();
    let mut lines = Vec::new();
    for item in payload["invariants"].as_array().unwrap() {
        let r = item["r"].as_u64().unwrap();
        lines.push(format!("x_{} = {}", r, item["poly"]["text"].as_str().unwrap()));
        lines.push(format!(
            "x_{}|{} = {}",
            r,
            item["restriction"]["target"].as_str().unwrap(),
            item["restriction"]["poly"]["text"].as_str().unwrap()
        ));
    }
    let want = include_str!("golden/invariants_2_2_sp.txt");
    assert_eq!(lines.join("\n") + "\n", want);
}

#[test]
fn report_bodies_are_byte_identical() {
    for (lambda, case, field, suite) in [
        ("2,1", "gl", "fp:5", "all"),
        ("2,2", "sp", "fp:3", "parity"),
        ("3,1", "so", "q", "stabiliser"),
    ] {
        let mut c = cfg(lambda, case, field);
        c.suite = Some(suite.into());
        let a = run_verify(&c).unwrap().body_json();
        let b = run_verify(&c).unwrap().body_json();
        assert_eq!(a, b, "{lambda} {case} {field} {suite}");
    }
}

#[test]
fn verify_examples_from_the_interface() {
    // parity at λ=(2,2) over F_5 passes
    let mut c = cfg("2,2", "sp", "fp:5");
    c.suite = Some("parity".into());
    assert!(run_verify(&c).unwrap().pass);
    // index λ=(3,1) so = 1
    let report = run_index(&cfg("3,1", "so", "q")).unwrap();
    assert_eq!(report.payload.unwrap()["index"], 1);
    // gl index is N
    let report = run_index(&cfg("3,2", "gl", "q")).unwrap();
    assert_eq!(report.payload.unwrap()["index"], 5);
}

#[test]
fn envelope_checks_pass() {
    for check in ["milner", "grbeta", "pcentre", "bound"] {
        let mut c = cfg("2,1", "gl", "fp:3");
        c.suite = Some(check.into());
        let report = run_envelope(&c).unwrap();
        assert!(report.pass, "{check}: {}", report.to_json());
    }
    // sp λ=(2) p-centre
    let mut c = cfg("2", "sp", "fp:3");
    c.suite = Some("pcentre".into());
    assert!(run_envelope(&c).unwrap().pass);
}

#[test]
fn envelope_bound_payload() {
    let mut c = cfg("1,1", "gl", "fp:3");
    c.suite = Some("bound".into());
    let report = run_envelope(&c).unwrap();
    assert_eq!(report.payload.unwrap()["bound"], "3");
}

#[test]
fn usage_errors_are_reported() {
    // graded suite requires a prime field
    let mut c = cfg("2,1", "gl", "q");
    c.suite = Some("graded".into());
    assert!(matches!(run_verify(&c), Err(Error::Usage(_))));
    // parity requires sp or so
    let mut c = cfg("2,1", "gl", "q");
    c.suite = Some("parity".into());
    assert!(matches!(run_verify(&c), Err(Error::Usage(_))));
    // p-centre over the rationals is rejected
    let mut c = cfg("2,1", "gl", "q");
    c.suite = Some("pcentre".into());
    assert!(matches!(run_envelope(&c), Err(Error::Usage(_))));
}

#[test]
fn field_too_small_surfaces() {
    // six blocks cannot get distinct diagonal values mod 3
    let mut c = cfg("1,1,1,1,1,1", "gl", "fp:3");
    c.suite = Some("jacobian".into());
    assert!(matches!(run_verify(&c), Err(Error::FieldTooSmall(_))));
}

#[test]
fn graded_report_rows() {
    let mut c = cfg("2,1", "gl", "fp:3");
    c.suite = Some("graded".into());
    c.degree_cap = Some(4);
    let report = run_verify(&c).unwrap();
    assert!(report.pass, "{}", report.to_json());
    assert_eq!(report.checks.len(), 5); // degrees 0..=4
}

#[test]
fn seeds_are_echoed_and_stable() {
    let mut c = cfg("2,1", "gl", "q");
    c.suite = Some("properties".into());
    c.seed = Some(7);
    let a = run_verify(&c).unwrap();
    let b = run_verify(&c).unwrap();
    assert!(a.pass);
    assert_eq!(a.body_json(), b.body_json());
    assert!(a.body_json().contains("\"seed\": 7"));
}
