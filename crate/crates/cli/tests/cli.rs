use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn neron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neron"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = neron(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn two_cycle_decomposes_into_two_components() {
    let v = json(&["decompose", &data("b11.graph"), "--ell", "2"]);
    assert_eq!(v["result"]["neron_match"], true);
    assert_eq!(v["result"]["total_label_count"], "2");
    assert_eq!(v["result"]["fixed_label_count"], "2");
    assert_eq!(v["graph"]["genus"], 3);
    let odd = json(&["decompose", &data("b11.graph"), "--ell", "3"]);
    assert_eq!(odd["result"]["neron_match"], false);
    let min = json(&["decompose", &data("b11.graph"), "--ell", "min", "--oracle"]);
    assert_eq!(min["result"]["level"], 2);
}

#[test]
fn banana_complexity_text() {
    let out = neron(&["complexity", &data("banana_2_3.graph"), "--oracle"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("complexity: 5\n"), "{text}");
}

#[test]
fn loop_groups() {
    let k = json(&["critical", &data("loop_6.graph")]);
    assert_eq!(
        k["result"]["critical_group"]["invariant_factors"],
        serde_json::json!([])
    );
    assert_eq!(k["result"]["critical_group"]["order"], "1");
    assert_eq!(k["result"]["critical_group"]["exponent"], "1");
    let phi = json(&["components", &data("loop_6.graph"), "--oracle"]);
    assert_eq!(
        phi["result"]["component_group"]["invariant_factors"],
        serde_json::json!(["6"])
    );
    assert_eq!(phi["result"]["extension"]["orders_multiply"], true);
}

#[test]
fn kernel_and_jacobian_reports() {
    let k = json(&["kernel", &data("loop_6.graph"), "--ell", "2", "--oracle"]);
    assert_eq!(k["result"]["kernel"]["order"], "12");
    assert_eq!(k["result"]["closed_form_agrees"], true);
    let j = json(&["jacobian", &data("triangle_1_2_3.graph"), "--oracle"]);
    assert_eq!(j["result"]["gram"], serde_json::json!([["6"]]));
    assert_eq!(j["result"]["abel_holds"], true);
    assert_eq!(j["result"]["jacobian"]["order"], "6");
}

#[test]
fn divisor_class_and_firing() {
    let c = json(&["class", &data("b11.graph"), "--divisor", "v1=-1,v2=1"]);
    assert_eq!(c["result"]["is_divisor"], true);
    assert_eq!(c["result"]["coordinates"], serde_json::json!(["1"]));
    let outside = json(&[
        "class",
        &data("banana_2_3.graph"),
        "--divisor",
        "v1=-1/7,v2=1/7",
    ]);
    assert_eq!(outside["result"]["is_divisor"], false);
    let f = json(&[
        "fire",
        &data("b11.graph"),
        "--divisor",
        "v1=-1,v2=1",
        "--at",
        "v2",
    ]);
    assert_eq!(
        f["result"]["divisor"],
        serde_json::json!({"v1": "1", "v2": "-1"})
    );
}

#[test]
fn report_schema() {
    let v = json(&["check", &data("b11.graph")]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "graph", "result", "version"]);
    assert_eq!(v["command"]["name"], "check");
    assert_eq!(v["graph"]["stable"], true);
    assert_eq!(v["result"]["valid"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(neron(&["check", &data("b11.graph")]).status.code(), Some(0));
    assert_eq!(
        neron(&[
            "fire",
            &data("b11.graph"),
            "--divisor",
            "v1=0.5",
            "--at",
            "v1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        neron(&["decompose", &data("b11.graph"), "--ell", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(neron(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        neron(&["check", "/nonexistent/graph"]).status.code(),
        Some(1)
    );
    let bad = neron(&[
        "fire",
        &data("b11.graph"),
        "--divisor",
        "v1=1/3,v2=-1/3",
        "--at",
        "v1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    let unknown = neron(&["fire", &data("b11.graph"), "--divisor", "v1=0", "--at", "w"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn malformed_graph_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "v a 0\nv b 0\n").unwrap();
    let out = neron(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::write(&path, "v a 0\ne e1 a a zero\n").unwrap();
    assert_eq!(
        neron(&["check", path.to_str().unwrap()]).status.code(),
        Some(1)
    );
}
