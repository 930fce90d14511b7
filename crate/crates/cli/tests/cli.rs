use std::collections::HashMap;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rosenthal"))
        .args(args)
        .env_remove("RC_PRECISION")
        .env_remove("RC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let h = r.headers().unwrap().clone();
    r.records().map(|rec| h.iter().zip(rec.unwrap().iter()).map(|(k, v)| (k.to_string(), v.to_string())).collect()).collect()
}

fn json_rows(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn num(v: &str) -> f64 {
    v.parse().unwrap()
}

#[test]
fn eval_exact_even_constant() {
    let rows = csv_rows(&stdout(&["eval", "--family", "L", "--p", "6"]));
    assert_eq!(rows[0]["value"], "41");
    assert_eq!(rows[0]["provenance"], "exact");
}

#[test]
fn eval_series_value() {
    let rows = csv_rows(&stdout(&["eval", "--family", "K", "--p", "4.5"]));
    assert!((num(&rows[0]["value"]) - 6.335274660027399).abs() < 1e-14);
    assert_eq!(rows[0]["provenance"], "series");
    assert!(num(&rows[0]["error_estimate"]) < 1e-25);
}

#[test]
fn eval_zeroth_power_is_one() {
    let rows = csv_rows(&stdout(&["eval", "--family", "F3", "--p", "0", "--theta", "1", "--beta", "0"]));
    assert_eq!(num(&rows[0]["value"]), 1.0);
}

#[test]
fn table_layouts() {
    for (which, n) in [("1", 28), ("2", 8), ("3", 6)] {
        let rows = csv_rows(&stdout(&["table", which, "--precision", "15"]));
        assert_eq!(rows.len(), n, "table {which}");
    }
    let t1 = csv_rows(&stdout(&["table", "1", "--precision", "15"]));
    let k9 = t1.iter().find(|r| r["p"] == "9").unwrap();
    assert_eq!(k9["K_suspect"], "true");
    assert_eq!(k9["K_flagged"], "true");
    let t3 = csv_rows(&stdout(&["table", "3"]));
    assert_eq!(t3[0]["t"], "0.45");
    assert_eq!(t3[5]["t"], "0.2");
}

#[test]
fn table_rows_sorted_and_scientific() {
    let rows = csv_rows(&stdout(&["table", "2", "--precision", "15"]));
    let ps: Vec<f64> = rows.iter().map(|r| num(&r["p"])).collect();
    assert!(ps.windows(2).all(|w| w[0] < w[1]));
    assert!(rows.iter().all(|r| r["L"].contains('e')));
}

#[test]
fn csv_and_json_round_trip() {
    for which in ["1", "3"] {
        let c = csv_rows(&stdout(&["table", which]));
        let j = json_rows(&stdout(&["table", which, "--format", "json"]));
        assert_eq!(c.len(), j.len());
        for (cr, jr) in c.iter().zip(&j) {
            for (k, v) in jr["values"].as_object().unwrap().iter().chain(jr["inputs"].as_object().unwrap()) {
                let cell = &cr[k];
                match v {
                    Value::Number(n) => assert_eq!(num(cell), num(&n.to_string()), "{k}"),
                    Value::Bool(b) => assert_eq!(cell, &b.to_string()),
                    Value::Null => assert!(cell.is_empty()),
                    other => assert_eq!(cell, other.as_str().unwrap()),
                }
            }
            assert_eq!(cr["provenance"], jr["provenance"].as_str().unwrap());
        }
    }
}

#[test]
fn constants_rows() {
    let rows = csv_rows(&stdout(&["constants"]));
    let by = |label: &str| rows.iter().find(|r| r["label"] == label).unwrap().clone();
    assert!((num(&by("C3")["value"]) - 1.77638).abs() <= 5e-6);
    assert!((num(&by("C9")["value"]) - 1.53572).abs() <= 5e-5);
    assert_eq!(by("C6")["value"], "34");
    assert!(rows.iter().all(|r| !r["provenance"].is_empty() && !r["error_estimate"].is_empty()));
}

#[test]
fn bounds_bracket_series() {
    let rows = csv_rows(&stdout(&["bounds", "--p", "700"]));
    let ln_l: Vec<_> = rows.iter().filter(|r| r["quantity"] == "ln L").collect();
    let (lo, hi) = (num(&ln_l[0]["lower"]), num(&ln_l[0]["upper"]));
    let v = num(&ln_l[1]["value"]);
    assert!(lo <= v && v <= hi);
}

#[test]
fn seeded_mc_is_deterministic() {
    let args = ["mc", "--p", "5", "--lambda", "0.5", "--mu", "0.5", "--samples", "1e6", "--seed", "42"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let r = &csv_rows(&a)[0];
    assert_eq!(r["provenance"], "monte-carlo");
    assert!(num(&r["z"]).abs() <= 4.0);
}

#[test]
fn seed_from_environment() {
    let with_env = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_rosenthal"))
            .args(["mc", "--p", "3", "--samples", "20000"])
            .env("RC_SEED", seed)
            .output()
            .unwrap();
        String::from_utf8(o.stdout).unwrap()
    };
    assert_eq!(with_env("7"), stdout(&["mc", "--p", "3", "--samples", "20000", "--seed", "7"]));
    assert_ne!(with_env("7"), with_env("8"));
}

#[test]
fn precision_selects_width() {
    let o = Command::new(env!("CARGO_BIN_EXE_rosenthal"))
        .args(["eval", "--family", "K", "--p", "5"])
        .env("RC_PRECISION", "10")
        .output()
        .unwrap();
    let rows = csv_rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(rows[0]["digits"], "15");
    let rows = csv_rows(&stdout(&["eval", "--family", "K", "--p", "5", "--precision", "25"]));
    assert_eq!(rows[0]["digits"], "31");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["eval", "--family", "G3", "--p", "4.5"]), 2);
    assert_eq!(code(&["--precision", "40", "eval", "--family", "K", "--p", "4"]), 2);
    assert_eq!(code(&["eval", "--family", "K", "--p", "1e5", "--max-terms", "1000", "--precision", "15"]), 3);
    assert_eq!(code(&["bounds", "--p", "100"]), 4);
    let o = run(&["bounds", "--p", "100"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("700"));
}
