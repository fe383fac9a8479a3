use std::process::{Command, Output};

use serde_json::Value;

const F: &str = "16,8,164,80,230,100";
const G1: &str = "4.66,6.4,6.62,8.96,6.4,6.17";
const G2: &str = "4.5,10,4.75,5.5,1,1";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env_remove("HURWITZ_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn check_examples() {
    assert_eq!(code(&["check", F]), 0);
    assert_eq!(code(&["check", "1,1,1,1"]), 1);
    assert_eq!(code(&["check", "1,1,1,1", "--quasi"]), 0);
    assert_eq!(code(&["check", "1,0"]), 2);
    assert_eq!(code(&["check", "1,abc"]), 2);
    assert_eq!(code(&["check", "7"]), 2);
    assert_eq!(code(&["check", "-1,2"]), 1);
    assert_eq!(code(&["check", "100,230,80,164,8,16", "--descending"]), 0);
}

#[test]
fn check_json_reports_index_and_classes() {
    let (c, v) = json(&["check", "1,1,1,1", "--quasi", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["stability_index"], 1);
    assert_eq!(v["quasi_stable"], true);
    assert_eq!(v["stable"], false);
    assert_eq!(v["hermite_biehler"]["case"], "one_neg_rest_imaginary");
    assert_eq!(v["root_oracle"]["verdict"], "quasi_stable");
    assert_eq!(v["oracle_consistent"], true);
}

#[test]
fn json_output_round_trips() {
    for poly in [
        F,
        "1,1,1,1",
        "74.56,51.2,1085.68,716.8,1472,617",
        "1/3,2,5/7",
    ] {
        let (c1, first) = json(&["check", poly, "--json"]);
        let fed = first.to_string();
        let (c2, second) = json(&["check", &fed, "--json"]);
        assert_eq!(c1, c2);
        assert_eq!(first["coeffs"], second["coeffs"]);
        assert_eq!(first["agt"], second["agt"]);
        assert_eq!(first["routh_hurwitz"], second["routh_hurwitz"]);
    }
}

#[test]
fn hadamard_examples() {
    let (c, v) = json(&["hadamard", F, G1, "--json"]);
    assert_eq!(c, 1);
    assert_eq!(
        v["product"]["coeffs"],
        serde_json::json!(["74.56", "51.2", "1085.68", "716.8", "1472", "617"])
    );
    assert_eq!(v["minors"][3], "-36860871.08608");
    assert_eq!(code(&["hadamard", F, "1,1,1,1,1,1"]), 0);
    let (c, v) = json(&["hadamard", "1,2,3", "1,1,1,1,1", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["degree"], 2);
    assert!(v["note"].as_str().unwrap().contains("truncated"));
    assert_eq!(code(&["hadamard", "1,2", "x"]), 2);
}

#[test]
fn idealizer_examples() {
    assert_eq!(code(&["idealizer", G2, "--family", "Y", "--n", "5"]), 0);
    let (c, v) = json(&["idealizer", G1, "--family", "Y", "--n", "5", "--json"]);
    assert_eq!(c, 1);
    assert_eq!(v["witness"]["k"], 5);
    assert_eq!(v["witness"]["m"], 0);
    assert_eq!(
        code(&["idealizer", "1,1,1,1,1", "--family", "W", "--n", "4"]),
        1
    );
    assert_eq!(
        code(&["idealizer", "1,1,1,1,1", "--family", "Wbar", "--n", "4"]),
        0
    );
    assert_eq!(code(&["idealizer", G2, "--family", "Y5"]), 0);
    assert_eq!(code(&["idealizer", "1,0,2,0,1", "--family", "Ystar"]), 0);
    assert_eq!(code(&["idealizer", G2, "--family", "Y", "--n", "4"]), 2);
    assert_eq!(code(&["idealizer", G2, "--family", "Q"]), 2);
}

#[test]
fn verify_suites() {
    for suite in ["lemmas", "theorems", "gw", "hb", "lemma3", "criteria"] {
        assert_eq!(
            code(&["verify", suite, "--samples", "40", "--seed", "7"]),
            0,
            "{suite}"
        );
    }
    assert_eq!(code(&["verify", "nonsense"]), 2);
}

#[test]
fn seed_from_environment() {
    let with_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_hurwitz"))
            .args(["verify", "gw", "--samples", "20", "--json"])
            .env("HURWITZ_SEED", seed)
            .output()
            .unwrap()
    };
    let a: Value = serde_json::from_slice(&with_env("11").stdout).unwrap();
    let b: Value = serde_json::from_slice(&with_env("11").stdout).unwrap();
    assert_eq!(a["seed"], 11);
    assert_eq!(a, b);
}

#[test]
fn search_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.jsonl");
    let out_s = out.to_str().unwrap();
    assert_eq!(
        code(&[
            "search",
            "--n",
            "6",
            "--samples",
            "30",
            "--seed",
            "1",
            "--out",
            out_s
        ]),
        0
    );
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("f.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["config"]["n"], 6);
    assert_eq!(manifest["config"]["samples"], 30);
    let lines = std::fs::read_to_string(&out).unwrap().lines().count();
    assert_eq!(manifest["counts"]["records"], lines);
    assert_eq!(
        code(&["search", "--n", "5", "--samples", "50", "--seed", "1"]),
        0
    );
    assert_eq!(code(&["search", "--n", "2"]), 2);
    assert_eq!(code(&["search"]), 2);
}

#[test]
fn examples_and_help() {
    let out = run(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("-36860871.08608"));
    assert!(text.contains("-1.9375"));
    assert!(!text.contains("MISMATCH"));
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["frobnicate"]), 2);
}
