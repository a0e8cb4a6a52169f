use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn upword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upword"))
        .args(args)
        .env_remove("UPWORD_BUDGET")
        .env_remove("UPWORD_OVERRIDE_BUDGET")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = upword(&full);
    let doc = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&out)));
    (code(&out), doc)
}

fn assert_valid(schema: &str, doc: &Value) {
    let path = format!("{}/schemas/{schema}.v1.json", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

/// `key: value` lines of a text report.
fn text_fields(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&upword(&["verify", "-a", "2", "-n", "3", "-w", "**0111"])), 0);
    assert_eq!(code(&upword(&["verify", "-a", "2", "-n", "3", "-w", "**011"])), 1);
    assert_eq!(code(&upword(&["verify", "-a", "2", "-n", "3", "-w", "0x1"])), 2);
    assert_eq!(code(&upword(&["verify", "-a", "2", "-n", "3"])), 2);
    assert_eq!(code(&upword(&["verify", "-a", "1", "-n", "3", "-w", "0"])), 2);
    assert_eq!(code(&upword(&["frobnicate"])), 2);
    assert_eq!(code(&upword(&[])), 2);
}

#[test]
fn verify_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_upword"))
        .args(["--json", "verify", "-a", "2", "-n", "4", "-w", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"01*110*001*\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["word"], "01*110*001*");
    assert_eq!(doc["diamondicity"], 1);
}

#[test]
fn verify_json_matches_schema_and_text() {
    for (a, n, w) in [("2", "3", "**0111"), ("2", "3", "**011"), ("2", "4", "001*110*001"), ("3", "4", "21**02"), ("2", "3", "01")] {
        let args = ["verify", "-a", a, "-n", n, "-w", w];
        let (status, doc) = json(&args);
        assert_valid("report", &doc);
        assert_eq!(status == 0, doc["is_universal"].as_bool().unwrap());

        let text = text_fields(&stdout(&upword(&args)));
        for key in ["is_universal", "pseudocyclic", "cyclic", "missing_count", "length"] {
            assert_eq!(text[key], doc[key].to_string(), "{w} {key}");
        }
        let d = doc["diamondicity"].as_u64().map_or("undefined".to_string(), |d| d.to_string());
        assert_eq!(text["diamondicity"], d);
        let rules: Vec<&str> = doc["rules_fired"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
        assert_eq!(text["rules_fired"], if rules.is_empty() { "none".to_string() } else { rules.join(",") });
    }
}

#[test]
fn duplicated_ranks_render_as_integers_or_words() {
    let (_, doc) = json(&["verify", "-a", "3", "-n", "4", "-w", "21**02"]);
    let dup = &doc["duplicated"][0];
    assert_eq!(dup[0], 65); // 2102 in base 3
    assert_eq!(dup[1], 2);
    let (_, doc) = json(&["--expand-ranks", "verify", "-a", "3", "-n", "4", "-w", "21**02"]);
    assert_valid("report", &doc);
    assert_eq!(doc["duplicated"][0][0], "2102");
}

#[test]
fn analyze_reports_structure() {
    let (status, doc) = json(&["analyze", "-a", "2", "-n", "4", "-w", "01*110*001*"]);
    assert_eq!(status, 0);
    assert_valid("analysis", &doc);
    assert_eq!(doc["frame"], "__*___*___*");
    assert_eq!(doc["first_window_root"], "__*_");
    assert_eq!(doc["cyclic"], true);
    let text = text_fields(&stdout(&upword(&["analyze", "-a", "2", "-n", "4", "-w", "01*110*001*"])));
    assert_eq!(text["canonical_form"], doc["canonical_form"].as_str().unwrap());
}

#[test]
fn feasible_reports_rules() {
    let (status, doc) = json(&["feasible", "-a", "3", "-n", "4"]);
    assert_eq!(status, 1);
    assert_valid("feasibility", &doc);
    assert_eq!(doc["rules_fired"], serde_json::json!(["DIVISIBILITY"]));
    assert_eq!(doc["admissible"], serde_json::json!([]));

    let (status, doc) = json(&["feasible", "-a", "4", "-n", "4"]);
    assert_eq!(status, 0);
    assert_valid("feasibility", &doc);
    assert_eq!(doc["admissible"], serde_json::json!([1]));

    let (status, doc) = json(&["feasible", "-a", "4", "-n", "4", "-d", "2"]);
    assert_eq!(status, 1);
    assert_valid("feasibility", &doc);

    let text = text_fields(&stdout(&upword(&["feasible", "-a", "3", "-n", "4"])));
    assert_eq!(text["feasible"], "false");
    assert_eq!(text["rules_fired"], "DIVISIBILITY");
    assert_eq!(code(&upword(&["feasible", "-a", "3", "-n", "4", "-d", "9"])), 2);
}

#[test]
fn constructions() {
    let out = upword(&["construct-n4", "-a", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "001*110*003*112*021*130*023*132*201*310*203*312*221*330*223*332*001");
    let (_, doc) = json(&["construct-n4", "-a", "4"]);
    assert_valid("word", &doc);
    assert_eq!(doc["length"], 67);
    assert_eq!(code(&upword(&["construct-n4", "-a", "3"])), 2);

    assert_eq!(stdout(&upword(&["debruijn", "-a", "2", "-n", "3"])).trim(), "00010111");
    assert_eq!(stdout(&upword(&["universal-word", "-a", "2", "-n", "3"])).trim(), "0001011100");
    let (_, doc) = json(&["debruijn", "-a", "3", "-n", "2"]);
    assert_valid("word", &doc);
    assert_eq!(doc["cyclic_representative"], true);
}

#[test]
fn search_output_and_budget() {
    let out = upword(&["search", "-a", "2", "-n", "2", "--nontrivial"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "*011\n*100\n001*\n110*\n");

    let (status, doc) = json(&["search", "-a", "2", "-n", "3", "--nontrivial", "--max-length", "8"]);
    assert_eq!(status, 0);
    assert_valid("search", &doc);
    assert_eq!(doc["count"].as_u64().unwrap() as usize, doc["words"].as_array().unwrap().len());

    assert_eq!(code(&upword(&["search", "-a", "3", "-n", "2", "--nontrivial"])), 1);
    assert_eq!(code(&upword(&["search", "-a", "2", "-n", "4"])), 2);
    assert_eq!(code(&upword(&["search", "-a", "2", "-n", "4", "--budget", "2000000000", "--limit", "1"])), 0);
    let with_env = Command::new(env!("CARGO_BIN_EXE_upword"))
        .args(["search", "-a", "2", "-n", "4", "--limit", "3"])
        .env("UPWORD_OVERRIDE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&with_env), 0);
    assert_eq!(stdout(&with_env).lines().count(), 3);

    let framed = upword(&["search", "-a", "2", "-n", "4", "--frame", "__*___*___*", "--prune", "--workers", "2"]);
    assert!(stdout(&framed).lines().any(|l| l == "01*110*001*"));
    assert_eq!(code(&upword(&["search", "-a", "2", "-n", "3", "--no-shape-rules"])), 2);
}

#[test]
fn seed_examples_verify_as_listed() {
    let (status, doc) = json(&["--seed-examples"]);
    assert_eq!(status, 0);
    assert_valid("examples", &doc);
    for e in doc["examples"].as_array().unwrap() {
        let (a, n) = (e["alphabet"].to_string(), e["n"].to_string());
        let out = upword(&["verify", "-a", &a, "-n", &n, "-w", e["word"].as_str().unwrap()]);
        assert_eq!(code(&out) == 0, e["universal"].as_bool().unwrap(), "{e}");
    }
}
