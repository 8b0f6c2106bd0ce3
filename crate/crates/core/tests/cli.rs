//! End-to-end CLI tests through the built binary.

use std::process::Command;

fn symnorm(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_symnorm"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code(),
    )
}

fn parse(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).expect("valid JSON output")
}

#[test]
fn check_open_example() {
    let (out, _, code) = symnorm(&[
        "check",
        "--fan",
        "catalog:ex1:2:2",
        "--bundle",
        r#"{"values":{"0":"0","1":"0","2":"1"}}"#,
        "--mode",
        "open",
    ]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    assert_eq!(v["verdict"], "surjective");
}

#[test]
fn ample_example() {
    let (out, _, code) = symnorm(&[
        "ample",
        "--root",
        "A1xA1",
        "--fan",
        "catalog:blowup2",
        "--bundle",
        "values(-2,-2,-3)",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(parse(&out), serde_json::json!({"gg": true, "ample": true}));
}

#[test]
fn symmetrize_example() {
    let (out, _, code) = symnorm(&[
        "symmetrize",
        "--root",
        "A2",
        "--fan",
        "catalog:chamber:2",
    ]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    assert_eq!(v["max_cones"].as_array().unwrap().len(), 6);
}

#[test]
fn polytope_report_shape() {
    let (out, _, code) = symnorm(&[
        "polytope",
        "--root",
        "A1xA1",
        "--fan",
        "catalog:blowup2",
        "--bundle",
        "values(-2,-2,-3)",
        "--side",
        "p",
    ]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    assert_eq!(v["lattice_points"], 21);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn equivalence_and_witnesses() {
    let (out, _, code) = symnorm(&[
        "check",
        "--root",
        "A1xA1",
        "--fan",
        "catalog:blowup2",
        "--bundle",
        "values(-2,-2,-3)",
        "--mode",
        "equivalence",
        "--witnesses",
    ]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    assert_eq!(v["agree"], true);
    assert!(v["open"]["witnesses"].as_array().is_some());
}

#[test]
fn split_round_trips_via_json() {
    let (out, _, code) = symnorm(&[
        "split",
        "--fan",
        "catalog:ex1b:3:3",
        "--bundle",
        "values(0,0,0,1,1)",
        "--m",
        "1,1,1",
        "--algorithm",
        "chain",
    ]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    let m1: Vec<String> = v["m1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(m1, vec!["1", "0", "1"]);
}

#[test]
fn input_errors_exit_nonzero() {
    let (_, err, code) = symnorm(&["ample", "--fan", "catalog:nosuch"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("error"));
    let (_, err2, code2) = symnorm(&[
        "ample",
        "--fan",
        "catalog:blowup2",
        "--bundle",
        r#"{"values":{"9":"1"}}"#,
    ]);
    assert_eq!(code2, Some(2));
    assert!(err2.contains("ray index"));
}

#[test]
fn not_surjective_still_exits_zero() {
    // A non-convex bundle is an unsupported input (exit 2), but a convex one
    // with a failing verdict would exit 0; validate-fan on an invalid fan
    // also reports rather than failing.
    let (out, _, code) = symnorm(&[
        "validate-fan",
        "--fan",
        r#"{"rank":2,"rays":[[1,0],[0,1],[1,1],[1,-1]],"max_cones":[[0,1],[2,3]],"kind":"open"}"#,
    ]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    assert_eq!(v["valid"], false);
}

#[test]
fn batch_manifest_runs_and_flags_errors() {
    let dir = std::env::temp_dir().join("symnorm-batch-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("manifest.json");
    std::fs::write(
        &path,
        r#"[
          {"verb": "ample", "root": "A1xA1", "fan": "catalog:blowup2",
           "bundles": ["values(-2,-2,-3)"]},
          {"verb": "check", "fan": "catalog:ex1:2:2",
           "bundles": [{"values": {"0": "0", "1": "0", "2": "1"}}], "mode": "open"}
        ]"#,
    )
    .unwrap();
    let (out, _, code) = symnorm(&["batch", "--manifest", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    let v = parse(&out);
    assert_eq!(v["total"], 2);
    assert_eq!(v["errors"], false);

    std::fs::write(&path, r#"[{"verb": "ample", "fan": "catalog:nosuch"}]"#).unwrap();
    let (_, _, code) = symnorm(&["batch", "--manifest", path.to_str().unwrap()]);
    assert_eq!(code, Some(1));
}

#[test]
fn csv_format_summarizes() {
    let (out, _, code) = symnorm(&[
        "ample",
        "--root",
        "A2",
        "--fan",
        "catalog:chamber:2",
        "--bundle",
        "values(-1,-1)",
        "--format",
        "csv",
    ]);
    assert_eq!(code, Some(0));
    assert!(out.starts_with("key,value"));
    assert!(out.contains("ample,"));
}

#[test]
fn fan_json_round_trip_through_cli() {
    let (out, _, _) = symnorm(&["validate-fan", "--fan", "catalog:ex3_2:3:2"]);
    let v = parse(&out);
    let fan_json = v["fan"].to_string();
    let (out2, _, code) = symnorm(&["validate-fan", "--fan", &fan_json]);
    assert_eq!(code, Some(0));
    let v2 = parse(&out2);
    assert_eq!(v["fan"], v2["fan"]);
    assert_eq!(v2["valid"], true);
    assert_eq!(v2["smooth"], true);
}
