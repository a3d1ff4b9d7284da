use std::io::Write;
use std::process::{Command, Output};

fn sigmaframe(doc: &str, extra: &[&str]) -> Output {
    let dir = std::env::temp_dir().join(format!("sigmaframe-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{:x}.sigma", doc.len() * 31 + extra.len()));
    std::fs::File::create(&path).unwrap().write_all(doc.as_bytes()).unwrap();
    Command::new(env!("CARGO_BIN_EXE_sigmaframe"))
        .arg("--input")
        .arg(&path)
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn passing_document_exits_zero() {
    let out = sigmaframe("check chain(3) lattice\ncheck boolean(2) overlap\n", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn failing_check_exits_one() {
    let out = sigmaframe("check chain(2) overlap\n", &["--format", "records"]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"status\":\"fail\""), "{stdout}");
}

#[test]
fn unknown_within_budget_exits_one() {
    let out = sigmaframe("derive Cantor s0 <| s00 budget 50\n", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = sigmaframe("lattice L {\n  elements a;\n}\n", &[]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains(":2:"), "{stderr}");
}

#[test]
fn missing_input_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_sigmaframe"))
        .arg("--input")
        .arg("/nonexistent/doc.sigma")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
