use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equirank"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn s3_binary_shift_rank() {
    let v = json(&["rank", "S3", "shift:q=2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["relative_rank"], 8);
    assert_eq!(v["u_sizes"], serde_json::json!([4, 2, 2, 1]));
    assert_eq!(v["kappa_size"], 1);
    assert_eq!(v["collapse_types"], 8);
    assert_eq!(v["generating_set"].as_array().unwrap().len(), 8);
}

#[test]
fn z2_verify_passes() {
    let out = run(&["verify", "Z2", "shift:q=2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
    }
}

#[test]
fn z4_boxes() {
    let v = json(&["boxes", "Z4", "shift:q=2"]);
    assert_eq!(v["orbits"], 6);
    assert_eq!(v["burnside_orbits"], 6);
    assert_eq!(v["boxes"].as_array().unwrap().len(), 3);
}

#[test]
fn rank_with_verify_flag() {
    let v = json(&["rank", "Z3", "shift:q=2", "--verify"]);
    assert_eq!(v["relative_rank"], 3);
    assert!(v["verify"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] != "fail"));
}

#[test]
fn enumerate_counts() {
    let v = json(&["enumerate", "Z2", "shift:q=2"]);
    assert_eq!(v["end_order"], 16);
    assert_eq!(v["end_order_formula"], 16);
    assert_eq!(v["aut_order"], 4);
    let v = json(&["enumerate", "Z3", "shift:q=2", "--aut-only", "--maps"]);
    assert_eq!(v["aut_order"], 36);
    assert_eq!(v["aut"].as_array().unwrap().len(), 36);
    assert!(v.get("end_order").is_none());
}

#[test]
fn enumeration_over_budget_exits_3() {
    let out = run(&["enumerate", "Z4", "shift:q=2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error["));
}

#[test]
fn oversized_group_exits_3() {
    assert_eq!(
        run(&["rank", "Z1000000", "shift:q=2"]).status.code(),
        Some(3)
    );
}

#[test]
fn bad_specs_exit_2() {
    for args in [
        &["rank", "Zx", "shift:q=2"][..],
        &["rank", "Z2", "shift:q=1"],
        &["boxes", "S3", "cosets:zz"],
        &["lattice", "W4"],
        &["ca", "Z2", "q=2", "--rule", "0:01x"],
        &["rank", "Z2"],
        &["rank", "Z2", "shift:q=2", "--budget", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["rank", "S3", "shift:q=2"][..],
        &["lattice", "D4"],
        &["boxes", "Z2xZ2", "shift:q=2"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn paper_layout_uses_integer_encodings() {
    let out = run(&["boxes", "Z6", "shift:q=2", "--paper-layout"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("|  0 63 |"), "{text}");
    assert!(text.contains("| 21 |"));
    assert!(text.contains("|  9 27 |"));
    assert!(text.contains("(kappa)"));
}

#[test]
fn ca_rule_on_z4() {
    let v = json(&["ca", "Z4", "q=2", "--rule", "0,1:0110"]);
    assert_eq!(v["equivariant"], true);
    assert_eq!(v["bijective"], false);
    assert_eq!(v["image"].as_array().unwrap().len(), 16);
    assert_eq!(v["rule"]["table"], serde_json::json!([0, 1, 1, 0]));
}

#[test]
fn ca_identity_is_invertible() {
    let v = json(&["ca", "Z3", "q=2", "--rule", "0:01"]);
    assert_eq!(v["bijective"], true);
    assert_eq!(v["minimal_memory_set"], serde_json::json!(["0"]));
    assert!(v["inverse_rule"].is_object());
}

#[test]
fn lattice_of_s3() {
    let v = json(&["lattice", "S3"]);
    assert_eq!(v["group"]["order"], 6);
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn table_output() {
    let out = run(&["rank", "Z2", "shift:q=2", "--output", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("relative_rank: 2"), "{text}");
}
