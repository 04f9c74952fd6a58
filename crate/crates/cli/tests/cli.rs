use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biquad"))
        .args(args)
        .env_remove("BIQUAD_MAX_PRIME")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn hilbert_tables() {
    assert!(stdout(&["hilbert", "33", "33"]).contains("ramified: {3,11}"));
    assert!(stdout(&["hilbert", "1", "999"]).contains("ramified: {}"));
    assert!(stdout(&["hilbert", "7", "-5", "--place", "5"]).starts_with("(7,-5)_5 = -1"));
    let j = json(&["hilbert", "33", "33"]);
    assert_eq!(
        j["results"]["ramified"]["ramified"],
        serde_json::json!(["3", "11"])
    );
    assert_eq!(j["results"]["symbols"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_first_example() {
    let j = json(&["analyze", "7", "-5", "--support", "3,47,29"]);
    let r = &j["results"];
    assert_eq!(r["dim_s"], 3);
    assert_eq!(r["x_type"], "Zero");
    assert!(r["ranks"]["y0"]["lower"].as_u64().unwrap() >= 1);
    assert!(r["ranks"]["z1"]["lower"].as_u64().unwrap() >= 1);
    assert_eq!(j["witnesses"]["y0"][0]["norm"], 141);
    let text = stdout(&["analyze", "7", "-5", "--support", "3,47,29"]);
    assert!(text.contains("141 = N(1 + √7 + √-5)"));
    for w in j["warnings"].as_array().unwrap() {
        assert!(text.contains(w.as_str().unwrap()));
    }
}

#[test]
fn analyze_third_example() {
    let j = json(&["analyze", "5", "2501", "--support", "19,73,3,13,47,23"]);
    assert_eq!(j["results"]["dim_s"], 0);
    assert_eq!(j["results"]["x_type"], "ConditionalOnEpsilon");
    let j = json(&[
        "analyze",
        "5",
        "2501",
        "--support",
        "19,73,3,13,47,23",
        "--epsilon",
        "0",
    ]);
    assert_eq!(j["results"]["x_type"], "OmegaMinus2");
}

#[test]
fn precondition_failures_exit_two() {
    for args in [
        &["analyze", "4", "9"][..],
        &["analyze", "7", "-5", "--epsilon", "2"],
        &["hilbert", "0", "3"],
        &["embed", "2,8", "--c", "0,1,0"],
        &["embed", "7,-5", "--c", "0,0,0"],
        &["find-prime", "--mod", "4:1", "--mod", "8:3"],
        &["hilbert", "3"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn embedding_problems() {
    assert!(stdout(&["embed", "7,-5", "--c", "0,1,0"]).contains("solvable     no"));
    assert!(stdout(&["embed", "2", "--c", "1"]).contains("solvable     yes"));
    assert_eq!(
        json(&["embed", "-5,7", "--c", "0,1,0"])["results"]["solvable"],
        false
    );
}

#[test]
fn wrappers() {
    assert_eq!(
        stdout(&[
            "find-prime",
            "--mod",
            "5:1,4",
            "--mod",
            "4:1",
            "--mod",
            "7:1,2,4"
        ]),
        "29\n"
    );
    assert_eq!(
        json(&[
            "find-prime",
            "--mod",
            "5:1,4",
            "--mod",
            "4:1",
            "--exclude",
            "29,41",
            "--min",
            "3"
        ])["results"]["prime"],
        61
    );
    assert_eq!(
        json(&["diagram", "7", "-5", "1", "1"])["results"]["solvable"],
        true
    );
    let j = json(&["norm-search", "7", "-5", "--target", "141", "--bound", "2"]);
    assert_eq!(j["results"]["membership"], "member");
    assert_eq!(
        j["witnesses"]["element"],
        serde_json::json!(["1", "1", "1", "0"])
    );
    assert!(
        stdout(&["norm-search", "7", "-5", "--target", "141"]).contains("N(1 + √7 + √-5) = 141")
    );
}

#[test]
fn empty_searches_exit_one() {
    let out = run(&["norm-search", "7", "-5", "--target", "103", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_biquad"))
        .args([
            "find-prime",
            "--mod",
            "5:1,4",
            "--mod",
            "4:1",
            "--mod",
            "7:1,2,4",
            "--json",
        ])
        .env("BIQUAD_MAX_PRIME", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let j: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["results"]["prime"], Value::Null);
    assert_eq!(j["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = [
        "analyze",
        "33",
        "35",
        "--support",
        "3,7,107,421",
        "--eps-bound",
        "1",
        "--json",
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert_eq!(v["command"], args.join(" "));
    for key in ["command", "inputs", "results", "witnesses", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}
