//! End-to-end runs of the `quiver-koszul` binary: exit codes, JSON
//! reproducibility and error reporting.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use sha2::{Digest, Sha256};

const COMMUTATIVE_F3: &str = r#"{
  "field": {"kind": "prime", "p": 3},
  "quiver": {"vertices": ["v"], "arrows": [{"name": "x", "src": "v", "tgt": "v"}, {"name": "y", "src": "v", "tgt": "v"}]},
  "relations": [[{"coeff": "1", "path": ["x", "y"]}, {"coeff": "-1", "path": ["y", "x"]}]]
}"#;

const XY_Q: &str = r#"{
  "field": {"kind": "q"},
  "quiver": {"vertices": ["v"], "arrows": [{"name": "x", "src": "v", "tgt": "v"}, {"name": "y", "src": "v", "tgt": "v"}]},
  "relations": [[{"coeff": "1", "path": ["x", "y"]}]]
}"#;

fn input_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write input");
    f
}

fn run(args: &[&str], input: &str) -> Output {
    let f = input_file(input);
    Command::new(env!("CARGO_BIN_EXE_quiver-koszul"))
        .args(args)
        .arg("--input")
        .arg(f.path())
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn definitive_classification_exits_zero() {
    let o = run(&["classify"], COMMUTATIVE_F3);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("piecewise domain: YES"), "{text}");
    assert!(text.contains("domain: YES"), "{text}");
}

#[test]
fn undetermined_primeness_exits_two() {
    let o = run(&["classify"], XY_Q);
    assert_eq!(code(&o), 2);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("piecewise domain: NO"), "{text}");
    assert!(text.contains("prime: UNDETERMINED"), "{text}");
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(code(&run(&["oracle"], COMMUTATIVE_F3)), 0);
    // x·y = 0 is found over the default oracle field
    assert_eq!(code(&run(&["oracle"], XY_Q)), 3);
    // a search cut short by its budget reports partial coverage
    assert_eq!(code(&run(&["oracle", "--budget", "3"], COMMUTATIVE_F3)), 2);
}

#[test]
fn json_is_byte_identical_and_hashes_the_input() {
    let a = run(&["classify", "--format", "json"], COMMUTATIVE_F3);
    let b = run(&["classify", "--format", "json"], COMMUTATIVE_F3);
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
    assert_eq!(doc["schemaVersion"], 1);
    assert_eq!(doc["command"], "classify");
    let sha = format!("{:x}", Sha256::digest(COMMUTATIVE_F3.as_bytes()));
    assert_eq!(doc["inputSha256"], sha.as_str());
    assert_eq!(doc["report"]["piecewiseDomain"]["status"], "yes-up-to-bound");
}

#[test]
fn every_command_runs_on_a_valid_input() {
    for cmd in [
        "dual",
        "classify",
        "cy2",
        "preprojective",
        "hilbert",
        "ext",
        "koszul",
        "syzygy-condition",
        "oracle",
    ] {
        let o = run(&[cmd, "--format", "json", "--max-degree", "4"], COMMUTATIVE_F3);
        assert!([0, 2, 3].contains(&code(&o)), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{cmd}: {e}"));
        assert_eq!(doc["command"], cmd);
    }
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quiver-koszul"))
        .arg("dual")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(XY_Q.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("relation:"));
}

#[test]
fn errors_exit_one_with_a_location() {
    let o = run(&["dual"], "{\"field\": {\"kind\": \"q\"},\n  nope}");
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));

    let bad_arrow = XY_Q.replace(r#""tgt": "v"}]"#, r#""tgt": "w"}]"#);
    let o = run(&["dual"], &bad_arrow);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("quiver.arrows[1].tgt"));

    assert_eq!(code(&run(&["frobnicate"], XY_Q)), 1);
    assert_eq!(code(&run(&["dual", "--field", "p4"], XY_Q)), 1);
}

#[test]
fn field_flag_overrides_the_document() {
    let o = run(&["hilbert", "--format", "json", "--field", "p2"], XY_Q);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["settings"]["field"], "F2");
}
