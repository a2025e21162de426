use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turnaround"))
        .args(args)
        .current_dir(dir)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {:?} stderr {:?}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn xi_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, cap, xi) in [("K3", "6", 4), ("star:3", "6", 4), ("P4", "4", 3)] {
        let out = run(dir.path(), &["xi", "--graph", spec, "--cap", cap]);
        assert_eq!(code(&out), 0, "{spec}");
        let r = report(&out);
        assert_eq!(r["result"]["report"]["xi"]["value"], xi, "{spec}");
        assert_eq!(r["result"]["certificates"].as_array().unwrap().len(), 2);
    }
    assert!(dir.path().join("xi_K3_witness_n4.csv").exists());
    assert!(dir.path().join("xi_K3_refutation_n5.json").exists());
}

#[test]
fn xi_certificates_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let certs = certs.to_str().unwrap();
    assert_eq!(code(&run(dir.path(), &["xi", "--graph", "K3", "--cap", "6", "--certs", certs])), 0);
    let w = format!("{certs}/xi_K3_witness_n4.csv");
    let r = format!("{certs}/xi_K3_refutation_n5.json");
    assert_eq!(code(&run(dir.path(), &["verify", "--polychromatic", &w, "--graph", "K3"])), 0);
    assert_eq!(code(&run(dir.path(), &["verify", "--refutation", &r])), 0);
}

#[test]
fn xi_bracket_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["xi", "--graph", "K4", "--cap", "10", "--mode", "backtracking", "--budget", "1"]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["result"]["report"]["xi"]["kind"], "bracket");
}

#[test]
fn spec_examples() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["verify", "--builder", "triangle5", "--n", "5", "--target", "K3"])), 0);
    let out = run(dir.path(), &["bounds", "--double-star-threshold"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["threshold"], 76);
    assert_eq!(code(&run(dir.path(), &["construct", "--balanced", "9", "--out", "c.csv"])), 0);
    assert_eq!(code(&run(dir.path(), &["verify", "--balanced", "c.csv"])), 0);
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["xi", "--graph", "Q3", "--cap", "4"][..],
        &["xi", "--graph", "K3"],
        &["estimate", "--n", "4", "--graph", "K3"],
        &["play", "--n", "4", "--graph", "K3", "--painter", "random"],
        &["verify", "--builder", "triangle5", "--n", "6", "--graph", "K3"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(dir.path(), args)), 64, "{args:?}");
    }
    assert_eq!(code(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn counterexamples_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["verify", "--builder", "sequential", "--n", "5", "--graph", "K3", "--out", "a.json"],
        &["verify", "--ramsey", "--n", "5", "--graph", "K3", "--out", "b.json"],
        &["verify", "--matching", "9", "--out", "c.json"],
        &["primitive", "--graph", "K3", "--out", "d.json"],
        &["verify", "--polychromatic", "s.csv", "--graph", "K3", "--out", "e.json"],
    ];
    assert_eq!(code(&run(dir.path(), &["construct", "--split", "5", "2", "--out", "s.csv"])), 0);
    for (args, file) in cases.iter().zip(["a.json", "b.json", "c.json", "d.json", "e.json"]) {
        let out = run(dir.path(), args);
        assert_eq!(code(&out), 1, "{args:?}");
        let again = run(dir.path(), &["verify", "--counterexample", file]);
        assert_eq!(code(&again), 1, "{file}");
        assert_eq!(report(&again)["result"]["detail"]["confirmed"], true);
    }
}

#[test]
fn tampered_counterexample_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["verify", "--ramsey", "--n", "5", "--graph", "K3", "--out", "r.json"])), 1);
    let path = dir.path().join("r.json");
    let mut art: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    art["coloring"]["edges"] = serde_json::json!([[0,1,"R"],[0,2,"R"],[0,3,"R"],[0,4,"R"],[1,2,"R"],[1,3,"R"],[1,4,"R"],[2,3,"R"],[2,4,"R"],[3,4,"R"]]);
    std::fs::write(&path, art.to_string()).unwrap();
    let out = run(dir.path(), &["verify", "--counterexample", "r.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["detail"]["confirmed"], false);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["estimate", "--n", "5", "--graph", "P3", "--trials", "5000", "--seed", "9", "--report", "rep.json"];
    let strip = |out: &Output| {
        let mut r = report(out);
        r.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&r).unwrap()
    };
    let a = run(dir.path(), &args);
    let first = std::fs::read_to_string(dir.path().join("rep.json")).unwrap();
    let b = run(dir.path(), &[&args[..], &["--threads", "1"]].concat());
    assert_eq!(code(&a), 0);
    let ra = strip(&a);
    let mut rb: Value = serde_json::from_str(&strip(&b)).unwrap();
    rb["config"]["threads"] = report(&a)["config"]["threads"].clone();
    assert_eq!(ra, serde_json::to_string(&rb).unwrap());
    assert_eq!(serde_json::from_str::<Value>(&first).unwrap()["result"], report(&a)["result"]);
    let r = report(&a);
    for key in ["tool", "version", "command", "config", "exit_code", "result", "timing"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert!(r["timing"]["wall_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn play_transcript_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["play", "--n", "5", "--graph", "K3", "--builder", "triangle5", "--painter", "random", "--seed", "3", "--transcript", "t.json"],
    );
    assert_eq!(code(&out), 0);
    let played = report(&out)["result"].clone();
    assert_eq!(played["winner"], "builder");
    let again = run(dir.path(), &["play", "--n", "5", "--graph", "K3", "--replay", "t.json"]);
    assert_eq!(code(&again), 0);
    let replayed = report(&again)["result"].clone();
    assert_eq!(played["transcript"], replayed["transcript"]);
    assert_eq!(played["final"], replayed["final"]);
}

#[test]
fn interactive_painter_session() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_turnaround"))
        .args(["play", "--n", "3", "--graph", "K3", "--interactive", "painter"])
        .env("NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"G\nR\n{\"chosen\":\"R\"}\n\"R\"\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["winner"], "painter");
    assert_eq!(r["result"]["rounds"], 3);
    let prompts = String::from_utf8_lossy(&out.stderr);
    assert!(prompts.contains("that colour is forbidden"));
    assert!(prompts.contains("round 2 on K_3"));
}

#[test]
fn interactive_builder_session() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_turnaround"))
        .args(["play", "--n", "3", "--graph", "K3", "--interactive", "builder", "--painter", "two-color"])
        .env("NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1 R\n{\"edge\":[0,2],\"forbidden\":\"B\"}\n1 2 G\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["winner"], "builder");
}

#[test]
fn solve_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["solve", "--n", "3", "--graph", "star:2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["winner"], "painter");
    let out = run(dir.path(), &["solve", "--f", "--graph", "K3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["lower"], 6);
    let out = run(dir.path(), &["bounds", "--shared-leaf-threshold"]);
    assert_eq!(report(&out)["result"]["threshold"], 122);
    assert_eq!(code(&run(dir.path(), &["bounds", "--appendix", "1000000", "2", "10"])), 2);
    let out = run(dir.path(), &["bounds", "--appendix", "1000000", "2", "10", "--unchecked"]);
    assert_eq!(report(&out)["result"]["report"]["steps"].as_array().unwrap().len(), 7);
    assert_eq!(code(&run(dir.path(), &["bounds", "--appendix", "10000000000", "2", "10"])), 0);
}
