//! The installed binary: verbs, input sources, exit codes and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const U: &str = r#"{"tail":{"kind":"periodic","period":1,"offsets":[1]}}"#;
const V: &str = r#"{"tail":{"kind":"periodic","period":1,"offsets":[-1]},"exceptions":[[0,0]]}"#;
const PI: &str = r#"{"tail":{"kind":"periodic","period":2,"offsets":[1,-1]}}"#;

fn cofinite(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cofinite"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = cofinite(args, None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn index_reports() {
    assert_eq!(report(&["index", U]), json!({ "index": -1 }));
    assert_eq!(report(&["index", V]), json!({ "index": 1 }));
    assert_eq!(report(&["ind", PI]), json!({ "ind": 0 }));
}

#[test]
fn map_from_stdin_and_file() {
    let out = cofinite(&["index", "-"], Some(V));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        serde_json::from_slice::<Value>(&out.stdout).unwrap(),
        json!({ "index": 1 })
    );

    let path = std::env::temp_dir().join(format!("cofinite-cli-{}.json", std::process::id()));
    std::fs::write(&path, U).unwrap();
    assert_eq!(
        report(&["index", path.to_str().unwrap()]),
        json!({ "index": -1 })
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn repair_certificate() {
    let f = r#"{"tail":{"kind":"periodic","period":1,"offsets":[0]},"exceptions":[[0,1]]}"#;
    let r = report(&["repair", f]);
    assert_eq!(
        r["checks"],
        json!({ "injective": true, "surjective": true, "disagreement_size_equals_range_complement": true })
    );
    assert_eq!(r["range_complement"], json!([0]));
    assert_eq!(r["disagreement"].as_array().unwrap().len(), 1);
}

#[test]
fn compose_and_disagreement() {
    let r = report(&["compose", U, V]);
    assert_eq!(
        r["composite"],
        json!({ "tail": { "kind": "periodic", "period": 1, "offsets": [0] }, "exceptions": [[0, 1]] })
    );
    let d = report(&["disagreement", U, PI]);
    assert_eq!(d["almost_equal"], json!(false));
    assert_eq!(
        d["summary"],
        json!("Infinite disagreement; witness: residue 1 mod 2")
    );
}

#[test]
fn reduce_and_synth() {
    let r = report(&["reduce", "--to", "injection", U]);
    assert_eq!(
        r["checks"],
        json!({ "shape": true, "cardinality": true, "almost_equal": true })
    );
    assert_eq!(
        cofinite(&["reduce", "--to", "injection", V], None)
            .status
            .code(),
        Some(2)
    );
    let s = report(&["synth", V, V]);
    assert_eq!(s["verified"], json!(true));
}

#[test]
fn split_and_classes() {
    assert_eq!(report(&["split", "-1"])["class"], report(&["class", U]));
    assert_eq!(report(&["split", "2"])["class"]["index"], json!(2));
}

#[test]
fn noncentral_demo_text() {
    let r = report(&["demo-noncentral"]);
    assert_eq!(r["summary"], json!("Infinite disagreement; witness: all n"));
    assert_eq!(r["pi_after_u_fixes_evens"], json!(true));
    assert_eq!(r["u_after_pi_fixes_odds"], json!(true));
}

#[test]
fn oracle_verb() {
    let r = report(&["oracle", "--random", "2000", "--representable", "50"]);
    assert_eq!(r["failed"], json!(0));
    let e = report(&[
        "oracle",
        "--map",
        r#"{"n":3,"table":[1,1,2]}"#,
        "--edit",
        "1:0",
    ]);
    assert_eq!(e["edit"]["holds"], json!(true));
    assert_eq!(e["edit"]["report"]["case"], json!("ii"));
}

#[test]
fn exit_codes() {
    let constant = r#"{"tail":{"kind":"constant","value":1}}"#;
    let out = cofinite(&["index", constant], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("monoset complement infinite"));
    assert_eq!(
        cofinite(
            &[
                "index",
                r#"{"tail":{"kind":"periodic","period":2,"offsets":[1]}}"#
            ],
            None
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        cofinite(
            &[
                "index",
                r#"{"tail":{"kind":"periodic","period":1,"offsets":[-1]}}"#
            ],
            None
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(cofinite(&["eval", U], None).status.code(), Some(3));
    assert_eq!(cofinite(&["no-such-verb"], None).status.code(), Some(3));
    assert_eq!(cofinite(&["--help"], None).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let a = cofinite(&["classify", PI], None);
    let b = cofinite(&["classify", PI], None);
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["window_check"]["agrees"], json!(true));
}
