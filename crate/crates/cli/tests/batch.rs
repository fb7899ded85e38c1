mod common;

use std::fs;

use common::{json_lines, parkgame, parkgame_with};

const BATCH: &str = "\
# worked example and friends
ex1: 1,4,3,3,1,2,7
1 1 2
2,2          # not a parking function
1,1 m=3
";

#[test]
fn json_batch_keeps_input_order() {
    let out = parkgame_with(&["displacement", "--format", "json"], BATCH, &[]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    let docs = json_lines(&out.stdout);
    let prefs: Vec<_> = docs.iter().map(|d| d["prefs"].clone()).collect();
    assert_eq!(
        prefs,
        [
            serde_json::json!([1, 4, 3, 3, 1, 2, 7]),
            serde_json::json!([1, 1, 2]),
            serde_json::json!([2, 2]),
            serde_json::json!([1, 1]),
        ]
    );
    let values: Vec<_> = docs.iter().map(|d| d["values"].clone()).collect();
    assert_eq!(values[0], serde_json::json!(["7"]));
    assert_eq!(values[1], serde_json::json!(["2"]));
    assert_eq!(values[2], serde_json::json!([]));
    assert_eq!(values[3], serde_json::json!(["1"]));
    assert!(docs[2]["status"]
        .as_str()
        .unwrap()
        .starts_with("error: not a parking function"));
    assert_eq!(docs[3]["m"], 3);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
}

#[test]
fn file_and_stdin_agree() {
    let dir = std::env::temp_dir().join(format!("parkgame-batch-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("profiles.txt");
    fs::write(&path, BATCH).unwrap();
    let path = path.to_str().unwrap();

    let from_file = parkgame(&["check", "--file", path]);
    let from_dash = parkgame_with(&["check", "--file", "-"], BATCH, &[]);
    let from_stdin = parkgame_with(&["check"], BATCH, &[]);
    assert_eq!(from_file.stdout, from_stdin.stdout);
    assert_eq!(from_dash.stdout, from_stdin.stdout);
    assert_eq!(from_file.code, 1);
    assert!(
        from_file.stdout.contains("# line 2 (ex1): 1,4,3,3,1,2,7"),
        "{}",
        from_file.stdout
    );
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn default_spots_flag() {
    let out = parkgame(&[
        "displacement",
        "--prefs",
        "3,3",
        "--m",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = &json_lines(&out.stdout)[0];
    assert_eq!(
        (doc["m"].as_u64(), doc["values"][0].as_str()),
        (Some(4), Some("1"))
    );
}

#[test]
fn enumerate_streams_documents() {
    let out = parkgame(&["enumerate", "--n", "3", "--format", "json"]);
    let docs = json_lines(&out.stdout);
    assert_eq!(docs.len(), 16);
    assert_eq!(docs[0]["prefs"], serde_json::json!([1, 1, 1]));

    let out = parkgame(&["enumerate", "--n", "2", "--m", "3"]);
    assert_eq!(out.stdout, "1,1\n1,2\n1,3\n2,1\n2,2\n2,3\n3,1\n3,2\n");

    let out = parkgame(&[
        "enumerate",
        "--n",
        "4",
        "--weakly-increasing",
        "--count-only",
    ]);
    assert_eq!(out.stdout, "14\n");
}
