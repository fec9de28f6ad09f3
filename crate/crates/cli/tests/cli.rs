use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehnword")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

#[test]
fn genus_one_table() {
    let out = run(&["tables", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("7/7 rows pass"));
}

#[test]
fn tables_two_and_three() {
    for (g, total) in [(2, 17), (3, 47)] {
        let (code, v) = json(&["tables", "--genus", &g.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(v["passed"], total);
    }
    // Eleven genus-three words fail as printed.
    let (code, v) = json(&["tables", "--genus", "3", "--printed"]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], 36);
    assert_eq!(run(&["tables", "--genus", "4"]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let ok = run(&["verify", "--word", "T_a1 T_b1 T_c1 T_b2", "--dataset", "(10,0;(1,2),(2,5),(1,10))"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["verify", "--word", "T_a1", "--dataset", "(2,0;((1,2),6))"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--word", "T_q9", "--dataset", "(2,0;((1,2),6))"]).status.code(), Some(2));
    assert_eq!(run(&["genus", "--dataset", "(2,0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_round_trips_through_the_parsers() {
    let (code, v) = json(&["synthesize", "--dataset", "(10,0;(1,2),(2,5),(1,10))", "--no-search"]);
    assert_eq!(code, 0);
    let d: dehnword_core::DataSet = serde_json::from_value(v["dataset"].clone()).unwrap();
    assert_eq!(d, "(10,0;(1,2),(2,5),(1,10))".parse().unwrap());
    let w = dehnword_core::TwistWord::parse(v["word"].as_str().unwrap(), 2).unwrap();
    assert!(dehnword_core::symplectic::lefschetz_certify(&w, &d).strong());
    assert_eq!(v["methodTag"], "chain");
}

#[test]
fn validate_genus_classify_enumerate() {
    assert_eq!(run(&["validate", "--dataset", "(3,0;(1,3))"]).status.code(), Some(1));
    let (_, v) = json(&["genus", "--dataset", "(7,0;(1,7),(2,7),(4,7))"]);
    assert_eq!(v["genus"], 3);
    let (_, v) = json(&["classify", "--dataset", "(2,2,1;)"]);
    assert_eq!(v["class"], "FreeRotation");
    let (_, v) = json(&["enumerate", "--genus", "2"]);
    assert_eq!(v.as_array().unwrap().len(), 17);
}

#[test]
fn search_and_polygon() {
    let (code, v) = json(&["search", "--dataset", "(9,0;(1,3),(1,9),(5,9))", "--timeout", "60"]);
    assert_eq!(code, 0);
    assert_eq!(v["stratum"]["depth"], 1);
    let (code, v) = json(&["polygon", "--dataset", "(7,0;(1,7),(2,7),(4,7))"]);
    assert_eq!(code, 0);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 6);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["synthesize", "--dataset", "(4,1;(1,2),(1,2))", "--json"]);
    let b = run(&["synthesize", "--dataset", "(4,1;(1,2),(1,2))", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
