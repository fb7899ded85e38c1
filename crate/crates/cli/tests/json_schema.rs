mod common;

use common::{json_lines, parkgame, parkgame_with};
use parkgame_cli::output::ResultDocument;
use parkgame_core::Rational;

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/result_document.schema.json");
    let schema: serde_json::Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn documents() -> Vec<serde_json::Value> {
    let runs: &[&[&str]] = &[
        &["check", "--prefs", "1,4,3,3,1,2,7"],
        &["displacement", "--prefs", "1,1 m=3"],
        &["characteristic", "--prefs", "1,1,2"],
        &["characteristic", "--prefs", "1,1,2", "--coalition", "1,3"],
        &["shapley", "--prefs", "1,4,3,3,1,2,7"],
        &["shapley", "--prefs", "1,1,2", "--method", "brute-subset"],
        &["shapley", "--prefs", "1,1,2", "--method", "brute-perm"],
        &["supermodular", "--prefs", "1,1,2,2"],
        &["supermodular", "--prefs", "1,1,2,2", "--all-pairs"],
        &["leastcore", "--prefs", "1,1,2"],
        &["leastcore", "--prefs", "1,2,1,1"],
        &["enumerate", "--n", "3"],
        &["enumerate", "--n", "3", "--m", "5", "--count-only"],
        &["count", "--n", "12", "--m", "20", "--weakly-increasing"],
        &["check", "--prefs", "2,2"],
    ];
    let mut docs = Vec::new();
    for args in runs {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        docs.extend(json_lines(&parkgame(&args).stdout));
    }
    let batch = parkgame_with(
        &["shapley", "--format", "json"],
        "1,1\n3,3\n1 2 2 m=4\n",
        &[],
    );
    docs.extend(json_lines(&batch.stdout));
    docs
}

#[test]
fn documents_validate_against_schema() {
    let v = validator();
    let docs = documents();
    assert!(docs.len() > 30);
    for doc in &docs {
        let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{doc}: {errors:?}");
        let typed: ResultDocument = serde_json::from_value(doc.clone()).unwrap();
        assert!(typed.timing_ms >= 0.0);
    }
}

#[test]
fn values_are_canonical_rationals() {
    for doc in documents() {
        for value in doc["values"].as_array().unwrap() {
            let text = value.as_str().unwrap();
            let parsed: Rational = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text, "not in lowest terms: {doc}");
        }
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator();
    let good = serde_json::json!({
        "n": 3, "m": 3, "prefs": [1, 1, 2], "command": "shapley", "method": "poly",
        "values": ["5/6", "5/6", "1/3"], "timing_ms": 0.5, "status": "ok"
    });
    assert!(v.is_valid(&good));
    let broken = [
        ("values", serde_json::json!([0.8333])),
        ("values", serde_json::json!(["5/0"])),
        ("timing_ms", serde_json::json!(-1.0)),
        ("command", serde_json::json!("bench")),
        ("extra", serde_json::json!(true)),
    ];
    for (key, value) in broken {
        let mut doc = good.clone();
        doc[key] = value;
        assert!(!v.is_valid(&doc), "{doc}");
    }
    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("status");
    assert!(!v.is_valid(&missing));
}
