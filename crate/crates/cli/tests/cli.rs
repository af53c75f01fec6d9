use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(args)
        .env_remove("TOWERLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn check_theorem_on_family_exits_zero() {
    let (code, v) = json(&["check-theorem", "--p", "2", "--F", "(x+1)*(y^3+y)-x^3", "--f", "x"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["result"]["conclusion"], "infinite_genus");
    assert_eq!(v["result"]["witnesses"]["q"]["over_y"]["e"], 3);
    assert_eq!(v["result"]["witnesses"]["q_prime"]["d_bounds"], serde_json::json!([2, 6]));
}

#[test]
fn failing_verdict_exits_one() {
    let (code, v) = json(&["check-theorem", "--p", "5", "--F", "y^2-x^3-x", "--f", "x"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fails");
    assert!(!v["result"]["failed_conditions"].as_array().unwrap().is_empty());
}

#[test]
fn parse_error_is_structured() {
    let (code, v) = json(&["analyze", "--p", "3", "--F", "x+*y"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "Parse");
    assert_eq!(v["error"]["offset"], 2);
}

#[test]
fn bad_family_parameters_name_the_constraint() {
    let (code, v) = json(&["family", "--q", "2", "--g", "x"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("g(a) != 0"));
}

#[test]
fn family_and_genus_examples() {
    let (code, v) = json(&["family", "--q", "3", "--a", "0", "--b", "1", "--g", "x+1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["all_pass"], true);
    let (code, v) = json(&["genus", "--p", "2", "--F", "(x+1)*(y^3+y)-x^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["zeta_genus"], 2);
    assert_eq!(v["result"]["riemann_hurwitz"]["exact"], false);
}

#[test]
fn climb_from_polynomial_matches_explicit_hypotheses() {
    let (c1, a) = json(&["climb", "--p", "2", "--F", "(x+1)*(y^3+y)-x^3", "--f", "x", "--levels", "3"]);
    let (c2, b) = json(&["climb", "--p", "2", "--m", "3", "--n", "1", "--r", "2", "--levels", "3"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["levels"][2]["d_bound"], 10);
    assert!(a["notes"][0].as_str().unwrap().contains("1/2"));
}

#[test]
fn invalid_hypotheses_exit_two() {
    let (code, v) = json(&["climb", "--p", "2", "--m", "4", "--n", "1", "--r", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "InvalidHypotheses");
}

#[test]
fn json_round_trips() {
    let out = run(&["analyze", "--p", "2", "--F", "(x+1)*(y^3+y)-x^3", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn seed_does_not_change_results() {
    let args = ["analyze", "--p", "3", "--F", "(x+1)*(y^4+y)-x^4", "--format", "json"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(args)
        .env("TOWERLAB_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_output_draws_the_pyramid() {
    let out = run(&["climb", "--p", "2", "--m", "3", "--n", "1", "--r", "2", "--levels", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("P_3"));
    assert!(text.contains("2|-"));
}
