use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn swapnet(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapnet"))
        .args(args)
        .current_dir(dir)
        .env_remove("SWAPNET_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn generate_writes_an_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = swapnet(dir.path(), &["generate", "cycle(4)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "4 4\n0 1\n0 3\n1 2\n2 3\n"
    );

    let out = swapnet(
        dir.path(),
        &["generate", "gnp(12,0.4)", "--seed", "3", "-o", "g.txt"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("12 "));
}

#[test]
fn seed_can_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let by_flag = swapnet(dir.path(), &["generate", "random-tree(15)", "--seed", "11"]);
    let by_env = Command::new(env!("CARGO_BIN_EXE_swapnet"))
        .args(["generate", "random-tree(15)"])
        .env("SWAPNET_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(by_flag.stdout, by_env.stdout);
}

#[test]
fn check_sse_reports_witness_and_costs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let out = swapnet(dir.path(), &["check-sse", "p4.txt", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_equilibrium"], false);
    assert_eq!(v["n"], 4);
    assert_eq!(v["m"], 3);
    assert_eq!(v["costs"], serde_json::json!([6, 4, 4, 6]));
    assert_eq!(v["witness"]["player"], 0);
    assert_eq!(v["witness"]["delta"], -1);

    write(dir.path(), "split.txt", "4 1\n0 1\n");
    let v = json(&swapnet(
        dir.path(),
        &["check-sse", "split.txt", "--json", "--exhaustive"],
    ));
    assert_eq!(v["costs"][0], "inf");
}

#[test]
fn check_local_reports_potential() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "star.txt", "4 3\n0 1\n0 2\n0 3\n");
    let v = json(&swapnet(dir.path(), &["check-local", "star.txt", "--json"]));
    assert_eq!(v["is_equilibrium"], true);
    assert_eq!(v["has_spanning_star"], true);
    assert_eq!(v["potential"], 6);
}

#[test]
fn analyze_reports_every_checker() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = swapnet(dir.path(), &["analyze", "c4.txt", "--json", "--k", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sse"], true);
    assert_eq!(v["theorem1"]["satisfied"], true);
    assert_eq!(v["theorem1"]["pairs_checked"], 2);
    assert_eq!(v["corollary"]["max_meanD"], "1");
    assert_eq!(v["lemma1A"], true);
    assert_eq!(v["lemma1B"], true);
    assert_eq!(v["theorem2"].as_array().unwrap().len(), 2);
    assert_eq!(v["theorem3"]["satisfied"], true);

    write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    let v = json(&swapnet(dir.path(), &["analyze", "p3.txt", "--json"]));
    assert_eq!(v["theorem3"], "n/a");
}

#[test]
fn errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "split.txt", "4 1\n0 1\n");
    write(dir.path(), "bad.txt", "3 2\n0 1\n0 7\n");
    let out = swapnet(dir.path(), &["analyze", "split.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));

    let out = swapnet(dir.path(), &["check-sse", "bad.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(
        swapnet(dir.path(), &["check-sse", "missing.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        swapnet(dir.path(), &["generate", "hexagon(3)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        swapnet(dir.path(), &["generate", "cycle(2)"]).status.code(),
        Some(2)
    );
}

#[test]
fn dynamics_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p6.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let out = swapnet(
        dir.path(),
        &[
            "dynamics", "p6.txt", "--mode", "query", "--c", "2", "--seed", "4", "--trace",
            "t.jsonl", "--json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = json(&out);
    assert_eq!(s["status"], "silence_detected");
    assert_eq!(s["final_is_equilibrium"], true);
    let trace = fs::read_to_string(dir.path().join("t.jsonl")).unwrap();
    let lines: Vec<Value> = trace
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len() as u64, s["steps"].as_u64().unwrap());
    assert_eq!(lines[0]["t"], 1);
    let moves = lines.iter().filter(|l| !l["move"].is_null()).count() as u64;
    assert_eq!(moves, s["applied_moves"].as_u64().unwrap());
    assert!(lines.iter().all(|l| l["queried"].is_array()));
}

#[test]
fn experiment_exit_code_tracks_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = swapnet(
        dir.path(),
        &[
            "experiment",
            "potential-exactness",
            "--instances",
            "50",
            "--no-timings",
            "-o",
            "r.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert!(v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    assert!(v.get("elapsed_ms").is_none_or(Value::is_null));

    // exhaustive equilibria on 3 vertices include an edge plus an isolated vertex
    let out = swapnet(
        dir.path(),
        &[
            "experiment",
            "local-equilibrium-star",
            "--exhaustive-max-n",
            "3",
            "--instances",
            "2",
            "--max-n",
            "6",
            "--json",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let star = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "spanning-star")
        .unwrap();
    assert_eq!(star["passed"], false);
}
