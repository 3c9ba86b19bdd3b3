//! End-to-end tests of the binary: JSON contracts and exit codes
//! (0 success/true, 1 predicate false, 2 malformed input, 3 precision).

use std::process::{Command, Output};

fn neron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neron"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn delta_outputs_and_exit_codes() {
    let out = neron(&["delta", "--json", r#"{"2":[2,1]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["delta"], "4");
    assert_eq!(v["delta_prime"], "4");

    let out = neron(&["delta", "--json", "{}"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["delta"], "0");

    let out = neron(&["delta", "--json", r#"{"4":[1]}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn realizable_predicate() {
    let out = neron(&["realizable", "--group", r#"{"3":[2]}"#, "--u", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["realizable"], false);

    let out = neron(&["realizable", "--group", r#"{"3":[2]}"#, "--u", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let out = neron(&["realizable", "--group", r#"{"2":[1]}"#, "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));

    // p dividing the order is an input error
    let out = neron(&[
        "realizable",
        "--group",
        r#"{"5":[1]}"#,
        "--u",
        "1",
        "--p",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn smith_and_coker() {
    let out = neron(&[
        "smith",
        "--json",
        r#"{"rows":2,"cols":2,"entries":[["2","0"],["0","3"]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["divisors"], serde_json::json!(["1", "6"]));

    let out = neron(&[
        "coker",
        "--l",
        "2",
        "--json",
        r#"{"rows":1,"cols":1,"entries":[["-2"]]}"#,
    ]);
    assert_eq!(stdout_json(&out)["partition"], serde_json::json!([1]));

    let out = neron(&[
        "coker",
        "--l",
        "4",
        "--json",
        r#"{"rows":1,"cols":1,"entries":[["-2"]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = neron(&[
        "smith",
        "--json",
        r#"{"rows":2,"cols":1,"entries":[["1"]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn example_feeds_phi_unchanged() {
    let out = neron(&["example", "--name", "ex53", "--l", "3", "--i", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let model = String::from_utf8(out.stdout).unwrap();
    let out = neron(&["phi", "--json", model.trim()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["phi"], serde_json::json!([2]));
    assert_eq!(v["corank"], 0);

    let out = neron(&["example", "--name", "ex52", "--l", "2", "--i", "1"]);
    let model = String::from_utf8(out.stdout).unwrap();
    let v = stdout_json(&neron(&["phi", "--json", model.trim()]));
    assert_eq!(v["phi"], serde_json::json!([2]));
}

#[test]
fn rank_zero_model_has_trivial_phi() {
    let out = neron(&["example", "--name", "trivial"]);
    let model = String::from_utf8(out.stdout).unwrap();
    let v = stdout_json(&neron(&["phi", "--json", model.trim()]));
    assert_eq!(v["phi"], serde_json::json!([]));
}

#[test]
fn phi_precision_exhaustion_is_exit_3() {
    let out = neron(&[
        "example",
        "--name",
        "ex54",
        "--l",
        "2",
        "--r",
        "1",
        "--s",
        "1",
        "--precision",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let model = String::from_utf8(out.stdout).unwrap();
    let out = neron(&["phi", "--json", model.trim()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn phi_rejects_malformed_models() {
    let out = neron(&["phi", "--json", "{\"l\":2}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plan_pipeline() {
    let group = r#"{"2":[2,1],"3":[1]}"#;
    let out = neron(&["plan", "--group", group, "--t", "1", "--u", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let plan = String::from_utf8(out.stdout).unwrap();

    let out = neron(&[
        "verify-plan",
        "--json",
        plan.trim(),
        "--group",
        group,
        "--t",
        "1",
        "--u",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["ok"], true);

    // same plan against the wrong query fails the check
    let out = neron(&[
        "verify-plan",
        "--json",
        plan.trim(),
        "--group",
        group,
        "--t",
        "1",
        "--u",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = neron(&["end-to-end", "--json", plan.trim()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["ok"], true);

    // unrealizable queries yield exit 1 from plan
    let out = neron(&["plan", "--group", r#"{"3":[2]}"#, "--u", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let out = neron(&["verify", "--suite", "lemma411", "--budget", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["suites"][0]["passed"], true);

    // the literal lexicographic monotonicity suite reports its witnesses
    let out = neron(&["verify", "--suite", "lemma43"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["suites"][0]["passed"], false);
    assert!(!v["suites"][0]["failures"].as_array().unwrap().is_empty());

    let out = neron(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = neron(&[
        "verify", "--suite", "lemma45", "--seed", "7", "--budget", "10",
    ]);
    let b = neron(&[
        "verify", "--suite", "lemma45", "--seed", "7", "--budget", "10",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
