use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_germkit")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("germkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn validate_catalog_group() {
    let (code, json, _) = run(&["validate", "catalog:Z2"]);
    assert_eq!(code, 0);
    assert_eq!(json["valid"], true);
}

#[test]
fn steinberg_crossed_dimensions_for_the_two_chain() {
    let (code, json, _) = run(&["verify", "steinberg-crossed", "catalog:munn-chain2", "--ring", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(json["dims"], serde_json::json!({"L": 3, "N": 1, "quotient": 2}));
}

#[test]
fn crossed_product_over_integers_is_a_usage_error() {
    let (code, json, _) = run(&["verify", "steinberg-crossed", "catalog:munn-chain2", "--ring", "Z"]);
    assert_eq!(code, 2);
    assert_eq!(json["error"], "input");
}

#[test]
fn single_loop_fails_condition_l() {
    let (code, json, _) = run(&["graph", "analyze", "catalog:loop"]);
    assert_eq!(code, 0);
    assert_eq!(json["conditionL"], false);
    assert_eq!(json["topPrincipal"], false);
    assert_eq!(json["cycleWithoutExit"], "e");
}

#[test]
fn ragged_table_is_an_input_error_with_position() {
    let p = temp_file("ragged.json", "{\"schema\": \"germkit/semigroup\", \"version\": 1,\n \"elements\": [\"1\", \"g\"],\n \"table\": [[\"1\", \"g\"], [\"g\"]]}");
    let (code, json, err) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(json["message"].as_str().unwrap().contains("line 3"), "{json}");
    assert!(err.starts_with("error:"));
}

#[test]
fn axiom_violation_is_a_math_failure() {
    let p = temp_file("constant.json", r#"{"schema": "germkit/semigroup", "version": 1, "elements": ["1", "g"], "table": [["1", "1"], ["1", "1"]]}"#);
    let (code, json, _) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(json["error"], "math");
}

#[test]
fn unknown_fields_are_rejected_unless_lenient() {
    let p = temp_file("extra.json", r#"{"schema": "germkit/semigroup", "version": 1, "elements": ["a"], "table": [["a"]], "note": 1}"#);
    assert_eq!(run(&["validate", p.to_str().unwrap()]).0, 2);
    let (code, json, _) = run(&["validate", p.to_str().unwrap(), "--lenient"]);
    assert_eq!(code, 0);
    assert_eq!(json["warnings"][0], "ignored unknown field note");
}

#[test]
fn unknown_names_and_rings_are_input_errors() {
    assert_eq!(run(&["validate", "catalog:nope"]).0, 2);
    assert_eq!(run(&["graph", "leavitt", "catalog:vw", "--ring", "Zp:4"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn extracted_coe_verifies_from_a_file() {
    let (code, json, _) = run(&["coe", "extract", "catalog:z2-partial-swap", "catalog:exel-z2-partial-swap"]);
    assert_eq!(code, 0);
    assert_eq!(json["roundTrip"], true);
    let p = temp_file("coe.json", &json["coe"].to_string());
    let (code, json, _) = run(&["coe", "verify", "catalog:z2-partial-swap", "catalog:exel-z2-partial-swap", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["germIdentities"], true);
}

#[test]
fn graph_coe_search_output_feeds_coe_verify() {
    let (code, json, _) = run(&["graph", "coe-search", "catalog:parallel", "catalog:line"]);
    assert_eq!(code, 0);
    assert_eq!(json["verified"], true);
    let p = temp_file("graph-coe.json", &json["data"].to_string());
    let (code, json, _) = run(&["graph", "coe-verify", "catalog:parallel", "catalog:line", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["exact"], true);
}

#[test]
fn leavitt_comparisons_set_the_exit_code() {
    assert_eq!(run(&["graph", "leavitt", "catalog:loop", "--expr", "(* e e*)", "--equals", "v"]).0, 0);
    let (code, json, _) = run(&["graph", "leavitt", "catalog:loop-exit", "--expr", "(* e e*)", "--equals", "v"]);
    assert_eq!(code, 1);
    assert_eq!(json["equal"], false);
    let (code, json, _) = run(&["graph", "leavitt", "catalog:vw", "--ring", "Zp:3"]);
    assert_eq!(code, 0);
    assert_eq!(json["relations"].as_array().unwrap().len(), 4);
}

#[test]
fn catalog_run_is_deterministic_and_reports_the_size_discrepancy() {
    let a = Command::new(env!("CARGO_BIN_EXE_germkit")).args(["catalog", "run", "--seed", "11"]).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_germkit")).args(["catalog", "run", "--seed", "11"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let json: Value = serde_json::from_slice(&a.stdout).unwrap();
    let failing: Vec<u64> =
        json["criteria"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(failing, vec![3]);
    assert_eq!(a.status.code(), Some(1));
}
