//! End-to-end checks of the command-line interface: JSON contracts,
//! determinism, and exit codes.

use std::process::{Command, Output};

fn cutdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("cutdim-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn fixture_cdim_via_cli() {
    let out = cutdim(&["construct", "fig8"]);
    assert!(out.status.success());
    let path = temp_file("fig8.json", &stdout(&out));
    let out = cutdim(&["cdim", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cdim"], 11);
}

#[test]
fn explicit_pipeline() {
    let out = cutdim(&["construct", "explicit", "--n", "5", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["expected_cdim"], 7);
    assert_eq!(v["expected_lambda"], "1");
    let path = temp_file("explicit.json", &v["graph"].to_string());
    let out = cutdim(&["cdim", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cdim"], 7);
}

#[test]
fn deterministic_output() {
    let a = cutdim(&["construct", "explicit", "--n", "6", "--seed", "3"]);
    let b = cutdim(&["construct", "explicit", "--n", "6", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cap_refusal_exit_code() {
    let out = cutdim(&["construct", "fig8"]);
    let path = temp_file("fig8-cap.json", &stdout(&out));
    let out = cutdim(&["cdim", path.to_str().unwrap(), "--cap", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_input_exit_code() {
    let path = temp_file("garbage.json", "{not json");
    let out = cutdim(&["cdim", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mincuts_of_a_cycle() {
    let out = cutdim(&["construct", "cycle", "--n", "5"]);
    let path = temp_file("c5.json", &stdout(&out));
    let out = cutdim(&["mincuts", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lambda"], "2");
    assert_eq!(v["mincut_shores"].as_array().unwrap().len(), 10);

    let out = cutdim(&["classify", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["structure"], "cycle-case");
}

#[test]
fn near_cuts_at_one_match_mincuts() {
    let out = cutdim(&["construct", "complete", "--n", "4"]);
    let path = temp_file("k4.json", &stdout(&out));
    let min = cutdim(&["mincuts", path.to_str().unwrap()]);
    let near = cutdim(&["near-cuts", path.to_str().unwrap(), "--alpha", "1"]);
    let vm: serde_json::Value = serde_json::from_str(&stdout(&min)).unwrap();
    let vn: serde_json::Value = serde_json::from_str(&stdout(&near)).unwrap();
    assert_eq!(vm["mincut_shores"], vn["cut_shores"]);
}

#[test]
fn separation_of_fig8_matches_fig2() {
    let out = cutdim(&["construct", "fig8"]);
    let path = temp_file("fig8-sep.json", &stdout(&out));
    let out = cutdim(&["sep", path.to_str().unwrap(), "--shore", "4,5,6,7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let fig2 = cutdim(&["construct", "fig2"]);
    let f2: serde_json::Value = serde_json::from_str(&stdout(&fig2)).unwrap();
    assert_eq!(v["g0"], f2);
    assert_eq!(v["g1"], f2);
}

#[test]
fn dot_output_for_graphs() {
    let out = cutdim(&["construct", "cycle", "--n", "4", "--format", "dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("graph {"));
    assert!(text.contains("0 -- 1"));
}

#[test]
fn tree_repr_dot() {
    let family = r#"{"n": 3, "sets": [[1], [2], [1, 2]]}"#;
    let path = temp_file("family.json", family);
    let out = cutdim(&["tree-repr", path.to_str().unwrap(), "--format", "dot"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("digraph {"));
}

#[test]
fn adversary_finds_fooling_pair() {
    let out = cutdim(&["construct", "complete", "--n", "4"]);
    let path = temp_file("k4-adv.json", &stdout(&out));
    // Two star-cut query rows only: plenty of room to fool.
    let queries = r#"{"rows": [
        ["1","1","1","0","0","0"],
        ["1","0","0","1","1","0"]
    ]}"#;
    let qpath = temp_file("queries.json", queries);
    let out = cutdim(&["adversary", path.to_str().unwrap(), qpath.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], true);
}

#[test]
fn perturb_check_reports_rank() {
    let instance = r#"{
        "base": [["2","0"],["0","2"]],
        "w": ["1","1"],
        "c": ["1","0"],
        "p": [["1","0"],["0","0"]]
    }"#;
    let path = temp_file("perturb.json", instance);
    let out = cutdim(&["perturb-check", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["row_slack"][0], "0");
}
