use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn graphvn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphvn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), text).unwrap();
    file
}

#[test]
fn validate_accepts_fixture() {
    let out = graphvn(&["validate", &fixture("base_case1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn validate_reports_weight_inconsistency() {
    let doc = r#"{"vertices":["a"],"edges":[{"id":"s","source":"a","target":"a","weight":"2","self_paired":true}]}"#;
    let file = write_temp(doc);
    let out = graphvn(&["validate", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["valid"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_and_malformed_files_are_input_errors() {
    let out = graphvn(&["validate", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
    let file = write_temp("{ not json");
    let out = graphvn(&["classify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_base_case1() {
    let out = graphvn(&["classify", &fixture("base_case1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["group"]["generators"], serde_json::json!(["2/1"]));
    assert_eq!(report["atoms"].as_array().unwrap().len(), 1);
    assert_eq!(report["atoms"][0]["vertex"], "1");
    assert_eq!(report["atoms"][0]["mass"], "3/1");
    assert_eq!(report["diffuse"]["weight"], "4/1");
}

#[test]
fn classify_balanced_and_tracial() {
    let report = json(&graphvn(&["classify", &fixture("balanced_pair.json")]));
    assert_eq!(report["atoms"], serde_json::json!([]));
    let report = json(&graphvn(&["classify", &fixture("tracial_triangle.json")]));
    assert_eq!(report["diffuse"]["kind"], "tracial");
    assert!(report["diffuse"]["is_factor"].is_boolean());
}

#[test]
fn normalized_masses_sum_to_one() {
    let report = json(&graphvn(&[
        "classify",
        "--normalize",
        &fixture("base_case1.json"),
    ]));
    assert_eq!(report["normalized"], true);
    assert_eq!(report["diffuse"]["weight"], "4/7");
    assert_eq!(report["atoms"][0]["mass"], "3/7");
}

#[test]
fn base_override_moves_the_state() {
    let report = json(&graphvn(&[
        "state",
        "--base",
        "1",
        &fixture("base_case1.json"),
    ]));
    assert_eq!(report["base"], "1");
    assert_eq!(report["state"][1]["value"], "1/1");
    let out = graphvn(&["state", "--base", "zz", &fixture("base_case1.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cycle_group_reports_hnf() {
    let report = json(&graphvn(&["cycle-group", &fixture("switcheroo.json")]));
    assert_eq!(report["group"]["rank"], 2);
    assert_eq!(report["trivial"], false);
    let report = json(&graphvn(&[
        "cycle-group",
        &fixture("tracial_triangle.json"),
    ]));
    assert_eq!(report["trivial"], true);
}

#[test]
fn moment_examples() {
    let out = graphvn(&["moment", &fixture("base_case1.json"), "--word", "e1,e1^op"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["moment"]["exact"], "sqrt(6)");
    assert_eq!(report["moment"]["value"].as_f64(), Some(2.449489742783178));
    assert!(report["deviation"].as_f64().unwrap() <= 1e-9);
    assert_eq!(report["agrees"], true);

    let report = json(&graphvn(&[
        "moment",
        &fixture("base_case1.json"),
        "--word",
        "e1,e1^op,e1",
    ]));
    assert_eq!(report["moment"]["exact"], "0");

    let out = graphvn(&[
        "moment",
        &fixture("base_case1.json"),
        "--word",
        "e1,e2,e1,e2,e1,e2,e1,e2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds truncation depth"));
    let out = graphvn(&[
        "moment",
        &fixture("base_case1.json"),
        "--depth",
        "8",
        "--word",
        "e1,e2,e1,e2,e1,e2,e1,e2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn moment_rejects_unknown_edges_and_bad_tolerance() {
    let out = graphvn(&["moment", &fixture("base_case1.json"), "--word", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let out = graphvn(&[
        "moment",
        &fixture("base_case1.json"),
        "--word",
        "e1",
        "--tol",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn basis_cap_is_a_computation_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_graphvn"))
        .args(["moment", &fixture("switcheroo.json"), "--word", "e1,e1^op"])
        .env("GRAPHVN_MAX_BASIS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn dump_basis_writes_index_path_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.txt");
    let out = graphvn(&[
        "moment",
        &fixture("base_case1.json"),
        "--word",
        "e1",
        "--depth",
        "1",
        "--dump-basis",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "0\tp_0");
    assert!(lines.iter().all(|l| l.split('\t').count() == 2));
}

#[test]
fn eigen_check_example() {
    let out = graphvn(&[
        "eigen-check",
        &fixture("base_case1.json"),
        "--edge",
        "e2",
        "--word",
        "e2^op",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["lhs"]["exact"], "2*sqrt(3)");
    assert_eq!(report["eigenvalue"], "2/1");
    assert_eq!(report["holds"], true);
}

#[test]
fn tl_check_calibrates_and_rejects_control() {
    let out = graphvn(&[
        "tl-check",
        &fixture("balanced_single.json"),
        &fixture("balanced_pair.json"),
        "--max-n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["delta"], "5/2");
    assert_eq!(report["calibrated"]["exponent"], "1/2");
    assert_eq!(report["calibrated"]["passed"], true);
    assert_eq!(report["control"]["passed"], false);
    assert_eq!(report["traciality"]["holds"], true);
}

#[test]
fn tl_check_needs_balanced_graphs() {
    let out = graphvn(&[
        "tl-check",
        &fixture("base_case1.json"),
        &fixture("balanced_pair.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not balanced"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "base_case3.json"],
        vec!["state", "switcheroo.json"],
        vec!["tl-check", "balanced_single.json", "balanced_pair.json"],
    ] {
        let resolved: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    fixture(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = resolved.iter().map(String::as_str).collect();
        assert_eq!(graphvn(&refs).stdout, graphvn(&refs).stdout);
    }
}

#[test]
fn selftest_passes() {
    let out = graphvn(&["selftest"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json(&out);
    assert_eq!(report["criteria"].as_array().unwrap().len(), 9);
    assert_eq!(report["passed"], true);
}
