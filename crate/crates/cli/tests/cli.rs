use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canonlab"))
        .args(args)
        .env_remove("CANONLAB_WORKERS")
        .output()
        .expect("spawn canonlab")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    stdout(args)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect()
}

#[test]
fn eulerian_text() {
    assert_eq!(stdout(&["poly", "eulerian", "3"]).trim(), "1 + 4*t + t^2");
}

#[test]
fn closed_form_alias_matches() {
    assert_eq!(stdout(&["poly", "sulanke", "3", "2"]), stdout(&["poly", "closed-form", "3", "2"]));
    assert_eq!(stdout(&["poly", "sulanke", "3", "2"]).trim(), "1 + 3*t + t^2");
}

#[test]
fn poly_json_parses() {
    let v = &json_lines(&["--format", "json", "poly", "eulerian", "3"])[0];
    let coeffs: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["c"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "4", "1"]);
}

#[test]
fn stats_text_and_json() {
    let text = stdout(&["stats", "--tableau-word", "1 2 1 2", "--sigma", "2 1"]);
    assert!(text.contains("Des={1,3} des=2"), "{text}");
    assert!(text.contains("Asc={2} asc=1"), "{text}");
    assert!(text.contains("canon: 2 1 2 1"), "{text}");

    let v = &json_lines(&["--format", "json", "stats", "--tableau-word", "1 1 2 2"])[0];
    assert_eq!(v["des"], 1);
    assert_eq!(v["plat"], 2);
    assert_eq!(v["plat_set"], serde_json::json!([1, 3]));
}

#[test]
fn row_swap_applies_and_inverts() {
    let image = stdout(&["bij", "apply", "--map", "f", "--r", "1", "--s", "3", "--tableau-word", "1 2 3 1 2 3"]);
    assert_eq!(image.trim(), "1 2 1 3 2 3");
    let back = stdout(&["bij", "apply", "--map", "f", "--r", "1", "--s", "3", "--tableau-word", image.trim()]);
    assert_eq!(back.trim(), "1 2 3 1 2 3");
}

#[test]
fn word_grid_dyck_round_trip() {
    let word = "1 2 1 3 2 3";
    let grid = stdout(&["convert", "grid", "--tableau-word", word]);
    assert_eq!(stdout(&["convert", "word", "--tableau-grid", grid.trim()]).trim(), word);
    let path = stdout(&["convert", "dyck", "--tableau-word", word]);
    assert_eq!(stdout(&["convert", "word", "--path", path.trim()]).trim(), word);
}

#[test]
fn counterexample_search() {
    let found = stdout(&["bij", "counterexample", "3", "3"]);
    assert!(found.contains("sigma: 1 3 2"), "{found}");
    assert!(stdout(&["bij", "counterexample", "3", "2"]).contains("no counterexample"));
}

#[test]
fn verify_instance_json() {
    let lines = json_lines(&["verify", "--suite", "main", "--instance", "2,2", "--instance", "3,2", "--json"]);
    assert_eq!(lines.len(), 3);
    assert!(lines[..2].iter().all(|l| l["status"] == "pass"));
    let summary = &lines[2];
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["instances"], 2);
    assert_eq!(summary["failed"], 0);
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["poly", "eulerian"][..],
        &["verify", "--suite", "nope"],
        &["stats", "--tableau-word", "2 1"],
        &["stats", "--tableau-word", "1 2 1 2", "--sigma", "21"],
        &["verify", "--suite", "main", "--instance", "2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let args = ["poly", "gen-narayana", "4", "3"];
    let mut seq = vec!["--sequential"];
    seq.extend(args);
    assert_eq!(stdout(&seq), stdout(&args));
}
