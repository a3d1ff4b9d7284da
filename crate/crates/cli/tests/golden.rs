use std::fs;
use std::path::PathBuf;

use sigmaframe_cli::{run, Options, Program};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn records(name: &str) -> String {
    let text = fs::read_to_string(golden_dir().join(format!("{name}.sigma"))).unwrap();
    let program = Program::load(&text).unwrap();
    run(&program, &Options::default()).to_records()
}

#[test]
fn golden_documents_match_stored_records() {
    for name in ["chain", "diamond", "cantor"] {
        let expected = fs::read_to_string(golden_dir().join(format!("{name}.jsonl"))).unwrap();
        assert_eq!(records(name), expected, "{name}");
    }
}

#[test]
fn repeated_runs_are_identical() {
    for name in ["chain", "diamond", "cantor"] {
        assert_eq!(records(name), records(name), "{name}");
    }
}

#[test]
fn every_line_is_a_json_object() {
    for name in ["chain", "diamond", "cantor"] {
        let out = records(name);
        let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        let (last, results) = lines.split_last().unwrap();
        assert_eq!(last["record"], "summary");
        assert_eq!(last["commands"].as_u64().unwrap() as usize, results.len());
        for r in results {
            assert_eq!(r["record"], "result");
            assert!(["pass", "fail", "error"].contains(&r["status"].as_str().unwrap()));
        }
    }
}
