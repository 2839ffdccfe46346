use std::process::{Command, Output};

use serde_json::Value;

fn sepnom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepnom")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = sepnom(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn orbits_command() {
    assert_eq!(json(&["orbits", "prod(A,A)"])["orbit_count"], 2);
    assert_eq!(json(&["orbits", "free(prod(A,A))"])["orbit_count"], 3);
    let unit = json(&["orbits", "1"]);
    assert_eq!(unit["orbit_count"], 1);
    assert_eq!(unit["dimension"], 0);
    let cube = json(&["orbits", "prod(prod(A,A),A)"]);
    assert_eq!(cube["orbit_count"], 5);
    assert_eq!(cube["orbits"].as_array().unwrap().len(), 5);
}

#[test]
fn orbits_errors() {
    let out = sepnom(&["orbits", "prod(A,"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 7"));
    let out = sepnom(&["orbits", "words(A)"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("infinitely many orbits"));
}

#[test]
fn reach_command() {
    assert_eq!(json(&["reach", "fifo", "--n", "3", "--mode", "nominal"])["orbit_count"], 10);
    let sep = json(&["reach", "fifo", "--n", "3", "--mode", "separated"]);
    assert_eq!(sep["orbit_count"], 5);
    assert_eq!(sep["sink_free_count"], 4);
    assert_eq!(sep["mode"], "separated");
    assert_eq!(json(&["reach", "fifo", "--n", "0", "--mode", "nominal"])["orbit_count"], 2);
    let out = sepnom(&["reach", "lifo"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown automaton"));
}

#[test]
fn run_command() {
    let run = |word: &str, mode: &str| json(&["run", "fifo", "--n", "3", "--word", word, "--mode", mode])["display"].clone();
    assert_eq!(run("", "nominal"), "⊥");
    assert_eq!(run("Put(1);Put(2);Pop", "nominal"), "2");
    assert_eq!(run("Put(1);Put(2);Pop", "separated"), "2");
    assert_eq!(run("Put(1);Put(1);Pop", "extended"), "1");
    let out = sepnom(&["run", "fifo", "--word", "Put(1);Put(1)", "--mode", "separated"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
}

#[test]
fn verify_command() {
    let out = sepnom(&["verify", "counterexamples", "--seed", "3", "--samples", "100"]);
    assert!(out.status.success());
    let out = sepnom(&["verify", "bogus"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "all", "--seed", "11", "--samples", "80"];
    let (a, b) = (sepnom(&args), sepnom(&args));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let other = sepnom(&["verify", "all", "--seed", "12", "--samples", "80"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn table_command() {
    let out = sepnom(&["table", "fifo", "--n", "1..5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,nominal,separated,separated_sink_free");
    assert_eq!(lines[3], "3,10,5,4");
    assert_eq!(lines[5], "5,77,7,6");
    let table = json(&["table", "fifo", "--n", "1..3"]);
    assert_eq!(table["rows"].as_array().unwrap().len(), 3);
}
