//! End-to-end smoke tests of the binary.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
}

fn workspace_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR")).parent().unwrap().parent().unwrap()
}

#[test]
fn shintani_lambda_one_nonsplit() {
    let out = bin()
        .args(["shintani", "--p", "5", "--torus", "nonsplit", "--lambda", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["terms"][0]["T"], 1);
    assert_eq!(v["terms"][0]["coeff"]["rat"], "1/6");
}

#[test]
fn engine_and_closed_routes_agree() {
    let engine = bin()
        .args(["shintani", "--p", "3", "--torus", "split", "--lambda", "3", "--engine"])
        .output()
        .unwrap();
    let closed = bin()
        .args(["shintani", "--p", "3", "--torus", "split", "--lambda", "3", "--closed"])
        .output()
        .unwrap();
    assert!(engine.status.success() && closed.status.success());
    let a: serde_json::Value = serde_json::from_slice(&engine.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&closed.stdout).unwrap();
    assert_eq!(a, b);
}

#[test]
fn period_ideal_examples() {
    let delta = workspace_root().join("data/delta.json");
    let out = bin()
        .args(["period-ideal", "--eigenform", delta.to_str().unwrap(), "--p", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generator"], 8);
    assert_eq!(v["split_type"], "inert");

    let out = bin()
        .args([
            "period-ideal",
            "--eigenform",
            delta.to_str().unwrap(),
            "--p",
            "5",
            "--chi-value",
            "1",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generator"], 4);
    assert_eq!(v["split_type"], "split");
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = bin()
        .args(["verify", "--suite", "convolution", "--p", "3", "--lambda-max", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["passed"], v[0]["instances"]);

    // empty prime list: empty report, success
    let out = bin().args(["verify", "--suite", "eps", "--p", ""]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().is_empty());
}

#[test]
fn convolve_universal_certify_pipeline() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let xi_path = dir.join("xi.json");
    std::fs::write(
        &xi_path,
        r#"{"torus":"split","p":3,"support":[{"lambda":1,"a":0,"b":0,"coeff":{"rat":"1","sqrtp":"0"}}]}"#,
    )
    .unwrap();
    let op = bin().args(["universal-op", "--xi", xi_path.to_str().unwrap()]).output().unwrap();
    assert!(op.status.success());
    let v: serde_json::Value = serde_json::from_slice(&op.stdout).unwrap();
    assert_eq!(v["torus"], "split");

    let cert = bin().args(["certify", "--xi", xi_path.to_str().unwrap()]).output().unwrap();
    assert!(cert.status.success());
    let v: serde_json::Value = serde_json::from_slice(&cert.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["g1"], 2);

    let conv = bin()
        .args(["convolve", "--gen", "A-", "--xi", xi_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(conv.status.success());
    let v: serde_json::Value = serde_json::from_slice(&conv.stdout).unwrap();
    assert_eq!(v["support"][0]["a"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decompose_classifies_and_lists_cosets() {
    let out = bin()
        .args([
            "decompose",
            "--p",
            "3",
            "--torus",
            "nonsplit",
            "9,0;0,1",
            "--h",
            "3,0;0,3",
            "--cosets",
            "cartan:1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lambda"], 2);
    assert_eq!(v["index"]["lambda"], 2);
    assert_eq!(v["index"]["a"], 1);
    assert_eq!(v["cosets"].as_array().unwrap().len(), 4);
}
