use quivalg::field::FieldSpec;
use quivalg::report::{run_verification, Budget, Status, Suite, VerificationReport, VerifyOptions};

fn run(suite: Suite, ms: Vec<usize>, field: FieldSpec) -> VerificationReport {
    let mut opts = VerifyOptions::new(suite, ms, field);
    opts.keep_going = true;
    run_verification(&opts).unwrap()
}

fn assert_all_pass(r: &VerificationReport) {
    for (m, c) in r.checks() {
        assert_eq!(c.status, Status::Pass, "m = {m}: {} ({})", c.id, c.detail);
    }
}

#[test]
fn every_suite_passes() {
    let r = run(Suite::All, vec![2, 3], FieldSpec::rationals(2).unwrap());
    assert_all_pass(&r);
    assert!(r.complete);
    let ids: Vec<&str> = r.runs[0].checks.iter().map(|c| c.id.as_str()).collect();
    let mut unique = ids.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), ids.len());
}

#[test]
fn prime_field_smoke() {
    let r = run(Suite::All, vec![2], FieldSpec::prime(5, 3).unwrap());
    assert_all_pass(&r);
    assert_eq!(r.field, "Fp:5");
}

#[test]
fn json_is_reproducible_and_versioned() {
    let a = run(Suite::Identities, vec![2], FieldSpec::rationals(-1).unwrap()).to_json();
    let b = run(Suite::Identities, vec![2], FieldSpec::rationals(-1).unwrap()).to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["suite"], "identities");
    assert!(v["runs"][0]["checks"][0].get("millis").is_none());
}

#[test]
fn exhausted_rule_budget_is_an_error() {
    let mut opts = VerifyOptions::new(Suite::Structure, vec![2], FieldSpec::rationals(1).unwrap());
    opts.budget = Budget::uniform(3);
    let err = run_verification(&opts).unwrap_err();
    assert!(err.is_budget(), "{err}");
}

#[test]
fn markdown_lists_every_check() {
    let r = run(Suite::Tilting, vec![2], FieldSpec::rationals(1).unwrap());
    let md = r.to_markdown();
    assert!(md.contains("| tilting/vanishing | pass |"));
    assert!(md.contains("| tilting/generation | pass |"));
    assert!(md.contains("C[i][j] = dim e_i A e_j"));
}
