use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn descent(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .output()
        .expect("descent binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn scenario_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("descent-cli-{}-{name}.json", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path
}

fn run_text(name: &str, text: &str) -> (Run, Option<Value>) {
    let path = scenario_file(name, text);
    let run = descent(&["run", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    let json = serde_json::from_str(&run.stdout).ok();
    (run, json)
}

#[test]
fn empty_scenario() {
    let (run, json) = run_text("empty", r#"{"tasks": []}"#);
    assert_eq!(run.code, 0);
    let json = json.unwrap();
    assert_eq!(json["status"], "ok");
    assert_eq!(json["tasks"].as_array().unwrap().len(), 0);
}

#[test]
fn s3_descent_scenario() {
    let (run, json) = run_text(
        "s3",
        r#"{"tasks": [{"kind": "descent", "section": "canonical",
            "extension": {"kernel": "C3", "quotient": "C2", "action": [[0, 1, 2], [0, 2, 1]]}}]}"#,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let s = &json.unwrap()["tasks"][0]["result"]["sections"][0];
    assert_eq!(s["V"]["order"], 1);
    assert_eq!(s["galois_group"]["isomorphic_to"], "C2");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let (run, json) = run_text("parse", "{\"tasks\": [\n  {\"kind\": \"descent\",}\n]}");
    assert_eq!(run.code, 1);
    assert!(json.is_none());
    assert!(run.stderr.contains("line 2"), "{}", run.stderr);
}

#[test]
fn unknown_kind_is_a_parse_error() {
    let (run, _) = run_text("kind", r#"{"tasks": [{"kind": "fly"}]}"#);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("parse error"));
}

#[test]
fn validation_error_names_task_and_keeps_going() {
    let (run, json) = run_text(
        "s9",
        r#"{"tasks": [{"kind": "classify-models", "G": "S9", "Q": "C2"},
                      {"kind": "classify-models", "G": "S3", "Q": "C2"}]}"#,
    );
    assert_eq!(run.code, 1);
    let json = json.unwrap();
    assert_eq!(json["status"], "failed");
    assert_eq!(json["tasks"][0]["category"], "validation");
    assert!(json["tasks"][0]["error"]
        .as_str()
        .unwrap()
        .contains("task 0"));
    assert_eq!(json["tasks"][1]["result"]["class_count"], 2);
}

#[test]
fn wrong_image_length_is_a_validation_error() {
    let (run, json) = run_text(
        "len",
        r#"{"tasks": [{"kind": "twist-count", "G": "S3", "Q": "C2", "alpha": [0]}]}"#,
    );
    assert_eq!(run.code, 1);
    assert_eq!(json.unwrap()["tasks"][0]["field"], "alpha");
}

#[test]
fn budget_exceeded_exits_3() {
    let (run, json) = run_text(
        "budget",
        r#"{"tasks": [{"kind": "sections", "extension": {"kernel": "S4", "quotient": "S3"}}]}"#,
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(json.unwrap()["tasks"][0]["result"]["count"], 1 + 9 + 24);
    let path = scenario_file(
        "budget-flag",
        r#"{"tasks": [{"kind": "sections", "extension": {"kernel": "S4", "quotient": "S3"}}]}"#,
    );
    let run = descent(&["run", "--max-total-order", "100", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(run.code, 3);
    assert!(run.stdout.contains("\"budget\""));
}

#[test]
fn catalog_listing() {
    let run = descent(&["catalog"]);
    assert_eq!(run.code, 0);
    let row = |name: &str| -> Vec<String> {
        run.stdout
            .lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap()
            .split_whitespace()
            .map(String::from)
            .collect()
    };
    assert_eq!(row("S3")[1..3], ["6", "1"]);
    assert_eq!(row("C2")[3], "1");
    assert_eq!(row("Q8")[2], "2");
}

#[test]
fn verify_variants() {
    let run = descent(&["verify", "--abelian-only"]);
    assert_eq!(run.code, 0);
    let json: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(json["status"], "pass");
    assert_eq!(json["options"]["abelian_only"], true);

    let run = descent(&["verify", "--max-total-order", "6"]);
    assert_eq!(run.code, 0);
    let capped: Value = serde_json::from_str(&run.stdout).unwrap();
    assert!(capped["suites"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["status"] == "pass"));

    let run = descent(&["verify", "--suite", "7"]);
    let json: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(json["suites"].as_array().unwrap().len(), 1);
    assert_eq!(json["suites"][0]["cases"], 4);
}

#[test]
fn verify_budget_and_flag_errors() {
    assert_eq!(descent(&["verify", "--max-hom-search", "10"]).code, 3);
    assert_eq!(descent(&["verify", "--suite", "12"]).code, 1);
    assert_eq!(descent(&["frobnicate"]).code, 1);
    assert_eq!(descent(&["run", "/definitely/not/here.json"]).code, 1);
}

#[test]
fn timings_are_opt_in() {
    let path = scenario_file(
        "timings",
        r#"{"tasks": [{"kind": "classify-models", "G": "S3", "Q": "C2"}]}"#,
    );
    let plain = descent(&["run", path.to_str().unwrap()]);
    let timed = descent(&["run", "--timings", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert!(!plain.stdout.contains("timings_ms"));
    let json: Value = serde_json::from_str(&timed.stdout).unwrap();
    assert_eq!(json["timings_ms"].as_array().unwrap().len(), 1);
}
