use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn opetope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opetope"))
        .args(args)
        .output()
        .expect("run opetope")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dimension_zero_is_a_point() {
    let o = opetope(&["enumerate", "--dim", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pt\n");
}

#[test]
fn both_routes_print_matching_lists() {
    let o = opetope(&[
        "enumerate",
        "--dim",
        "3",
        "--max-size",
        "5",
        "--route",
        "both",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let sets = v.as_array().unwrap();
    assert_eq!(sets.len(), 2);
    assert_eq!(sets[0]["route"], "bd");
    assert_eq!(sets[1]["route"], "leinster");
    assert_eq!(sets[0]["codes"], sets[1]["codes"]);
    assert_eq!(sets[0]["codes"].as_array().unwrap().len(), 1 + 1 + 1 + 2 + 4 + 9);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(opetope(&["enumerate", "--route", "sideways"]).status.code(), Some(2));
    assert_eq!(opetope(&["check", "nothing"]).status.code(), Some(2));
    assert_eq!(
        opetope(&["check", "laws", "--monad", "/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_opetope"))
        .args(["enumerate", "--dim", "1"])
        .env("OPETOPE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn passing_checks_exit_zero() {
    let o = opetope(&["check", "laws", "--monad", "identity"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(
        opetope(&["check", "equiv", "--dim", "3", "--max-size", "5"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        opetope(&["check", "laws", "--monad", &fixture("cyclic3.json")])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn mutated_signature_fails_associativity() {
    let o = opetope(&["check", "laws", "--monad", &fixture("mutated_cyclic3.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let assoc = checks.iter().find(|c| c["name"] == "associativity").unwrap();
    assert_eq!(assoc["passed"], false);
    assert!(!assoc["counterexamples"].as_array().unwrap().is_empty());
    let left = checks.iter().find(|c| c["name"] == "left-unit").unwrap();
    assert_eq!(left["passed"], true);
}

#[test]
fn slicing_i_lists_arities() {
    let o = opetope(&["slice", "--max-size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["objects"], serde_json::json!(["ar"]));
    let arities: Vec<usize> = v["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["source"].as_array().unwrap().len())
        .collect();
    assert_eq!(arities, vec![0, 1, 2, 3]);
}

#[test]
fn non_tidy_input_is_refused_with_its_witness() {
    let o = opetope(&["slice", "--input", &fixture("non_tidy.json")]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("not tidy"), "{}", err);
    assert!(err.contains("c is fixed by [2,1]"), "{}", err);
    assert!(o.stdout.is_empty());
}

#[test]
fn arrowless_input_slices_to_identities() {
    let o = opetope(&["slice", "--input", &fixture("no_arrows.json"), "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["objects"], serde_json::json!(["1_a", "1_b"]));
}

#[test]
fn free_binary_slice_counts_trees() {
    let o = opetope(&["slice", "--input", &fixture("free_binary.json"), "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["objects"].as_array().unwrap().len(), 1 + 1 + 2 + 5 + 14);
}

#[test]
fn malformed_presentations_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.json");
    std::fs::write(
        &path,
        r#"{"objects": ["a"], "arrows": [], "composition": "free-on-generators", "action": "freely-symmetric", "colour": 3}"#,
    )
    .unwrap();
    let o = opetope(&["slice", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("extra.json"));
}

#[test]
fn ascii_table_has_a_row_per_route() {
    let o = opetope(&["enumerate", "--dim", "3", "--max-size", "5", "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("dim  3 leinster"));
    let cells: Vec<&str> = last.split_whitespace().skip(3).collect();
    assert_eq!(cells, ["1", "1", "1", "2", "4", "9"]);
}
