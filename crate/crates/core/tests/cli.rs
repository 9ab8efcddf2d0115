mod common;

use std::process::{Command, Output};

use serde_json::Value;

use common::{assert_matches_golden, CASES};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carkwork"))
        .args(args)
        .output()
        .expect("carkwork binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn outputs_match_golden_files() {
    for (name, _, _, args) in CASES {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_matches_golden(std::str::from_utf8(&out.stdout).unwrap(), name);
    }
}

#[test]
fn gauss_reduction_lands_in_the_reduced_set() {
    // The reduced forms of discriminant 5.
    let reduced = ["(1,1,-1)", "(-1,1,1)"];
    for form in ["1,-1,-1", "5,5,1", "19,-9,1", "-1,7,-11", "-11,-7,-1"] {
        let out = run(&["reduce", form]);
        assert!(out.status.success(), "{form}");
        let v = stdout_json(&out);
        let end = &v["end"];
        let text = format!(
            "({},{},{})",
            end["a"].as_str().unwrap(),
            end["b"].as_str().unwrap(),
            end["c"].as_str().unwrap()
        );
        assert!(reduced.contains(&text.as_str()), "{form} -> {text}");
    }
}

#[test]
fn solve_gives_a_valid_pair() {
    let v = stdout_json(&run(&["solve", "1,0,-2", "1"]));
    let pair = &v["solutions"][0];
    let x: i64 = pair[0].as_str().unwrap().parse().unwrap();
    let y: i64 = pair[1].as_str().unwrap().parse().unwrap();
    assert_eq!(x * x - 2 * y * y, 1);

    let v = stdout_json(&run(&["solve", "5,11,3", "-1", "--count", "4"]));
    let pairs = v["solutions"].as_array().unwrap();
    assert_eq!(pairs.len(), 4);
    for pair in pairs {
        let x: i128 = pair[0].as_str().unwrap().parse().unwrap();
        let y: i128 = pair[1].as_str().unwrap().parse().unwrap();
        assert_eq!(5 * x * x + 11 * x * y + 3 * y * y, -1);
    }
}

#[test]
fn classification() {
    let class = |t: &str| stdout_json(&run(&["classify", t]))["class"].clone();
    assert_eq!(class("1,0,1"), "positive_definite");
    assert_eq!(class("1,1,-1"), "indefinite");
    assert_eq!(class("2,1,1,1"), "hyperbolic");
    assert_eq!(class("S"), "elliptic");
}

#[test]
fn signatures_are_rotation_invariant() {
    let spine = stdout_json(&run(&["spine", "-14,2,1"]));
    let sig = spine["signature"].clone();
    for f in spine["forms"].as_array().unwrap() {
        let text = format!(
            "{},{},{}",
            f["a"].as_str().unwrap(),
            f["b"].as_str().unwrap(),
            f["c"].as_str().unwrap()
        );
        assert_eq!(stdout_json(&run(&["signature", &text]))["signature"], sig);
    }
}

#[test]
fn exit_codes() {
    let domain = run(&["reduce", "1,0,1"]);
    assert_eq!(domain.status.code(), Some(1));
    assert_eq!(stdout_json(&domain)["code"], "not_indefinite");

    assert_eq!(run(&["solve", "1,0,-2", "0"]).status.code(), Some(1));
    assert_eq!(run(&["geodesic", "S"]).status.code(), Some(1));
    assert_eq!(run(&["sunburst", "--depth", "99"]).status.code(), Some(1));
    assert_eq!(
        run(&["geodesic", "1,0,-2", "--samples", "1"]).status.code(),
        Some(1)
    );

    for args in [
        &["reduce", "1,x,1"][..],
        &["frobnicate"],
        &["reduce", "--method", "euclid", "1,1,-1"],
        &["solve", "1,0,-2"],
        &["solve", "1,0,-2", "1", "--count", "x"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let code = stdout_json(&out)["code"].as_str().unwrap().to_string();
        assert_eq!(code, "usage", "{args:?}");
    }
}

#[test]
fn repeated_runs_are_identical() {
    let a = run(&["cark", "5,11,3", "--depth", "2"]).stdout;
    let b = run(&["cark", "5,11,3", "--depth", "2"]).stdout;
    assert_eq!(a, b);
}
