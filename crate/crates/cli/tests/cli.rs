use std::process::Command;

use qmzv::products::HLin;
use qmzv::words::{Composition, LinComb};
use qmzv::{QSeries, Rational};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qmzv").chain(args.iter().copied());
    let code = qmzv_cli::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn expand_example() {
    let (code, out, _) = run(&["expand", "--product", "qshuffle", "p y", "p y"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2*pypy - pyy");
}

#[test]
fn expand_in_value_notation() {
    let (code, out, _) = run(&["expand", "--product", "qstuffle", "z(2)", "z(2)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "z(4) - z(3) + 2*z(2,2) - 2*z(2,1)");
}

#[test]
fn series_example() {
    let (code, out, _) = run(&["series", "--word", "z(0)", "--order", "4", "--pathway", "both"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "coeffs [0,1,1,1,1]"), "{out}");
}

#[test]
fn verify_all_example() {
    let args = ["verify", "--suite", "all", "--order", "20", "--max-depth", "2", "--range", "-2..3", "--seed", "7", "--format", "json"];
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["pass"], Value::Bool(true));
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.len() > 50);
    for r in reports {
        for key in ["name", "params", "pass", "witness", "notes"] {
            assert!(r.get(key).is_some(), "report without {key}: {r}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["series", "--word", "z(2)", "--bogus"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(run(&["verify", "--range", "3..1"]).0, 2);
    assert_eq!(run(&["series", "--word", "z(2"]).0, 2);
    assert_eq!(run(&["series", "--word", "z(2)", "--model", "schlesinger", "--q0", "1/2"]).0, 2);
    assert_eq!(run(&["expand", "--product", "qshuffle", "p y"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    // a wrong target is a failed check, not a usage error
    let (code, out, _) = run(&["limit", "--word", "z(2)", "--target", "3"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAIL limit"), "{out}");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "word-laws", "--seed", "7", "--format", "json"];
    let first = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&args));
}

#[test]
fn series_json_round_trips() {
    let (code, out, _) = run(&["series", "--word", "z(2,-1)", "--order", "12", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let text = serde_json::to_string(&doc["series"]).unwrap();
    let s: QSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&s).unwrap(), text);
}

#[test]
fn expand_json_round_trips() {
    for (product, graded) in [("qshuffle", false), ("qstuffle-graded", true)] {
        let (code, out, _) = run(&["expand", "--product", product, "z(2,-1)", "z(1)", "--format", "json"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        let text = serde_json::to_string(&doc["result"]).unwrap();
        let again = if graded {
            HLin::from_json(&doc["result"]).unwrap().to_json()
        } else {
            LinComb::<Composition, Rational>::from_json(&doc["result"]).unwrap().to_json()
        };
        assert_eq!(serde_json::to_string(&again).unwrap(), text);
    }
}

#[test]
fn binary_reports_exit_code() {
    let bin = env!("CARGO_BIN_EXE_qmzv");
    let ok = Command::new(bin).args(["series", "--word", "z(1)", "--order", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("coeffs [0,1,2,2]"));
    let bad = Command::new(bin).args(["nonsense"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
