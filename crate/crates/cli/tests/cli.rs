use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singequiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares the JSON report with a stored copy. `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let body = String::from_utf8(out.stdout).unwrap();
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &body).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(body, expected, "{name} differs; rerun with UPDATE_GOLDEN=1 after checking the change");
}

#[test]
fn golden_basis() {
    golden("basis_e31.json", &["basis", "e31"]);
}

#[test]
fn golden_check() {
    golden("check_a2.json", &["check", "a2", "--ideal", "vertex:2"]);
}

#[test]
fn golden_verify() {
    golden("verify_e32.json", &["verify-example", "e32"]);
}

#[test]
fn json_is_parseable_and_self_consistent() {
    let out = run(&["tor", "dual", "--ideal", "gens:x", "--max", "3", "--json", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "singequiv.report/1");
    let claims = v["claims"].as_array().unwrap();
    let all = claims.iter().all(|c| c["passed"] == true);
    assert_eq!(v["passed"], all);
    assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }));
}

#[test]
fn failed_claim_exits_one() {
    // the corner at the looped vertex is two-dimensional, so there is nothing to peel
    let out = run(&["peel", "dual", "--at", "v"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["basis", "/no/such/file.qa"]).status.code(), Some(2));
    assert_eq!(run(&["basis", "e33:1"]).status.code(), Some(2));
    assert_eq!(run(&["resolve", "a2", "--module", "S:nope"]).status.code(), Some(2));
    assert_eq!(run(&["basis", "a2", "--field", "F4"]).status.code(), Some(2));
}

#[test]
fn malformed_presentation_is_rejected() {
    let dir = std::env::temp_dir().join(format!("singequiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.qa");
    std::fs::write(&path, "field Q\nvertices 1\narrow a: 1 -> 2\nnilpotency 2\n").unwrap();
    let out = run(&["basis", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn harness_is_reproducible() {
    let a = run(&["harness", "--seed", "3", "--count", "4", "--json", "-"]);
    let b = run(&["harness", "--seed", "3", "--count", "4", "--json", "-"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
