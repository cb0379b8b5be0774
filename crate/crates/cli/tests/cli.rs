use std::process::{Command, Output};

use serde_json::Value;

fn quivalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivalg"))
        .args(args)
        .env_remove("QUIVALG_BUDGET")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = quivalg(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn build_presets() {
    let v = json(&["build", "--preset", "spherical", "--m", "3", "--lambda", "2", "--format", "json"]);
    assert_eq!(v["dim"], 112);
    assert_eq!(v["cartan"][1][5], 2);
    let v = json(&["build", "--preset", "tetrahedral", "--format", "json"]);
    assert_eq!(v["dim"], 72);

    let out = quivalg(&["build", "--preset", "spherical"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dimension: 76"), "{text}");
}

#[test]
fn build_from_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("square.quiver");
    std::fs::write(
        &path,
        "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation a.b = c.d\n",
    )
    .unwrap();
    let v = json(&["build", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(v["dim"], 9);

    std::fs::write(&path, "vertex 1\narrow a: 1 -> 7\n").unwrap();
    assert_eq!(quivalg(&["build", "--file", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(quivalg(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(quivalg(&["verify", "--m", "1"]).status.code(), Some(2));
    assert_eq!(quivalg(&["verify", "--m", "2", "--field", "Fp:4"]).status.code(), Some(2));
    assert_eq!(quivalg(&["build", "--preset", "spherical", "--lambda", "0"]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_quivalg"))
        .args(["verify", "--suite", "structure", "--m", "2"])
        .env("QUIVALG_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn verify_a_suite() {
    let v = json(&["verify", "--suite", "tilting", "--m", "2", "--format", "json"]);
    assert_eq!(v["suite"], "tilting");
    assert_eq!(v["complete"], true);
    let checks = v["runs"][0]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass" && c.get("millis").is_none()));

    let out = quivalg(&["verify", "--suite", "identities", "--m", "2", "--field", "Fp:7", "--lambda", "-1"]);
    assert!(out.status.success());
}

#[test]
fn hom_dimensions() {
    let v = json(&["hom", "--from", "1", "--to", "3", "--format", "json"]);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["euler"], 3);
    assert_eq!(v["null_homotopic"], 1);
    let v = json(&["hom", "--from", "3", "--to", "1", "--shift", "-1", "--format", "json"]);
    assert_eq!(v["dim"], 0);
}

#[test]
fn resolve_returns_after_four_steps() {
    let v = json(&["resolve", "--preset", "tetrahedral", "--vertex", "2", "--format", "json"]);
    let flags: Vec<bool> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["isomorphic_to_start"].as_bool().unwrap())
        .collect();
    assert_eq!(flags, [false, false, false, true]);
}
