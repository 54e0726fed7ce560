use std::process::{Command, Output};

use serde_json::Value;

fn ytwo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ytwo"))
        .args(args)
        .env_remove("YTWO_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn specialize_three_five() {
    let out = ytwo(&["specialize", "--m", "3", "--n", "5", "--enumerate", "--cap", "2000000", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "specialize");
    let c = check(&v, "phi_b_group_order");
    assert_eq!(c["status"], "pass");
    assert_eq!(c["actual"], "4080");
    assert_eq!(check(&v, "eta_b_group_order")["actual"], "4080");
}

#[test]
fn decompose_nine() {
    let out = ytwo(&["decompose", "--rank", "9", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(check(&v, "pairs")["actual"], "3");
    assert_eq!(check(&v, "residual_rank")["actual"], "3");
}

#[test]
fn relations_all_pass() {
    let out = ytwo(&["verify", "relations", "--m", "4", "--kmax", "6", "--rep", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failed"));
}

#[test]
fn json_is_deterministic_across_thread_counts() {
    let args = |t: &'static str| {
        ["verify", "lifting", "--m", "3", "--words", "20", "--json", "--no-timing", "--threads", t]
    };
    let a = ytwo(&args("1"));
    let b = ytwo(&args("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let seq = ytwo(&["verify", "lifting", "--m", "3", "--words", "20", "--json", "--no-timing", "--sequential"]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn seed_changes_words_not_outcome() {
    let out = ytwo(&["verify", "lifting", "--m", "3", "--words", "15", "--seed", "7", "--json"]);
    let v = json(&out);
    assert_eq!(v["params"]["seed"], 7);
    assert_eq!(check(&v, "lift_random_words")["actual"], "15");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ytwo(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(ytwo(&["decompose"]).status.code(), Some(2));
    assert_eq!(ytwo(&["verify", "basis", "--m", "2"]).status.code(), Some(2));
    assert_eq!(ytwo(&["augmentation", "--ns", "4"]).status.code(), Some(2));
}

#[test]
fn cap_exits_three() {
    let out = ytwo(&["specialize", "--m", "6", "--n", "5", "--kmax", "2", "--enumerate", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(check(&v, "q_r")["actual"], "0");
    assert_eq!(check(&v, "phi_b_group_order")["status"], "skip");
}

#[test]
fn augmentation_records_seven() {
    let out = ytwo(&["augmentation", "--ns", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&json(&out), "split_n7")["actual"], "3,3");
}
