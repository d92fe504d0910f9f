use std::io::Write;
use std::process::{Command, Output, Stdio};

use charq::{CharacterSeries, NiceRational};
use serde_json::Value;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn charq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charq"))
        .args(args)
        .env_remove("CHARQ_ORDER")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn coeffs(v: &Value) -> Vec<i64> {
    v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect()
}

#[test]
fn emitted_series_parses_back() {
    let out = charq(&[
        "--format",
        "json",
        "--order",
        "5",
        "series",
        &data("two_lines.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: CharacterSeries = serde_json::from_slice(&out.stdout).unwrap();
    let text = std::fs::read_to_string(data("two_lines.json")).unwrap();
    let f: NiceRational = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, f.series(5).unwrap());
    for d in 0..=5 {
        assert_eq!(parsed.coeff(d).len(), d + 1);
    }
}

#[test]
fn series_file_feeds_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("free.json");
    let out = charq(&[
        "--format",
        "json",
        "--order",
        "8",
        "series",
        "--free-algebra",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, &out.stdout).unwrap();

    let out = charq(&[
        "--format",
        "json",
        "--order",
        "8",
        "invariants",
        path.to_str().unwrap(),
        &data("sl2.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(coeffs(&json(&out)["series"]), [1, 0, 1, 0, 2, 0, 5, 0, 14]);
}

#[test]
fn torus_invariants_fit() {
    let out = charq(&[
        "--format",
        "json",
        "--order",
        "20",
        "invariants",
        &data("fhl.json"),
        &data("torus.json"),
        "--search",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["fit"]["fit"], Value::Bool(true));
    let num: Vec<i64> = v["fit"]["numerator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect();
    assert_eq!(num, [1, 0, -2, 0, 4, 0, -1]);
}

#[test]
fn stdin_and_env_order() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_charq"))
        .args(["--format", "json", "fit", "-", "--degs", "2"])
        .env("CHARQ_ORDER", "12")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"order":12,"coeffs":[1,0,1,0,1,0,1,0,1,0,1,0,1]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["fit"], Value::Bool(true));
    assert_eq!(v["denominator_degrees"], serde_json::json!([2]));

    let out = Command::new(env!("CARGO_BIN_EXE_charq"))
        .args(["--format", "json", "series", "--free-algebra", "1"])
        .env("CHARQ_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["order"], 3);
}

#[test]
fn order_zero_is_constant_term() {
    let out = charq(&[
        "--format",
        "json",
        "--order",
        "0",
        "series",
        &data("two_lines.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 0);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let missing = charq(&["series", "/nonexistent/input.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    let bad_flag = charq(&["fit", &data("free2.json"), "--degs", "x"]);
    assert_eq!(bad_flag.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalan.json");
    let catalan = r#"{"order":30,"coeffs":[1,0,1,0,2,0,5,0,14,0,42,0,132,0,429,0,1430,0,4862,0,16796,0,58786,0,208012,0,742900,0,2674440,0,9694845]}"#;
    std::fs::write(&path, catalan).unwrap();
    let no_fit = charq(&[
        "--format",
        "json",
        "fit",
        path.to_str().unwrap(),
        "--degs",
        "2,2,2",
    ]);
    assert_eq!(no_fit.status.code(), Some(2));
    assert_eq!(json(&no_fit)["fit"], Value::Bool(false));

    let short = charq(&["fit", path.to_str().unwrap(), "--degs", "40"]);
    assert_eq!(short.status.code(), Some(1));
}

#[test]
fn demos_match() {
    for name in ["nagata", "unipotent", "fhl", "semigroup"] {
        let out = charq(&["--format", "json", "demo", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let v = json(&out);
        assert_eq!(v["match"], Value::Bool(true), "{name}");
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["match"] == Value::Bool(true)));
    }
}

#[test]
fn schur_and_decompose_text() {
    let out = charq(&["schur", &data("square.json")]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(!out.stdout.is_empty());

    let out = charq(&["decompose", &data("fhl.json"), "--substitute"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(!out.stdout.is_empty());
}
