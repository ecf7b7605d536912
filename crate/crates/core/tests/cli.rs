use std::path::Path;

use ldlab::cli::{run, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use ldlab::code::load_gen;
use ldlab::experiment::{read_csv, CSV_HEADER};
use serde_json::Value;

fn ldlab(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("ldlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_random_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.gen"), dir.path().join("b.gen"));
    for path in [&a, &b] {
        let (code, out, _) = ldlab(&["gen", "random", "--q", "3", "--k", "2", "--n", "7", "--seed", "5", "--out", p(path)]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(json(&out)["n"], 7);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("3 2 7\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn missing_seed_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.gen");
    let (code, _, err) = ldlab(&["gen", "random", "--q", "2", "--k", "2", "--n", "4", "--out", p(&out)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--seed"));
    assert!(!out.exists());
}

#[test]
fn reed_muller_then_check_ld() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rm.gen");
    assert_eq!(ldlab(&["gen", "rm", "--r", "1", "--m", "3", "--out", p(&path)]).0, EXIT_OK);
    let code = load_gen(&path).unwrap();
    assert_eq!((code.q(), code.k(), code.n()), (2, 4, 8));

    // unique decoding below half the minimum distance
    let (exit, out, _) = ldlab(&["check-ld", "--code", p(&path), "--t", "1", "--L", "1"]);
    assert_eq!(exit, EXIT_OK);
    assert_eq!(json(&out)["max_list"], 1);

    let (exit, out, _) = ldlab(&["check-ld", "--code", p(&path), "--t", "4", "--L", "1", "--method", "exhaustive"]);
    assert_eq!(exit, EXIT_DOMAIN);
    let report = json(&out);
    assert_eq!(report["decodable"], false);
    assert_eq!(report["method"], "exhaustive");
}

#[test]
fn certificates_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full.gen");
    std::fs::write(&path, "2 2 2\n1 0\n0 1\n").unwrap();

    let (exit, out, _) = ldlab(&["cert", "l1", "--code", p(&path), "--L", "2", "--epsilon", "0.6"]);
    assert_eq!(exit, EXIT_OK);
    let report = json(&out);
    for key in ["kind", "L", "value", "threshold", "verdict", "witness", "mode", "tolerance"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["verdict"], "holds");

    let (exit, out, _) = ldlab(&["cert", "l1", "--code", p(&path), "--L", "2", "--epsilon", "0.3"]);
    assert_eq!(exit, EXIT_DOMAIN);
    assert_eq!(json(&out)["verdict"], "fails");

    let (exit, out, _) = ldlab(&["cert", "l1", "--code", p(&path), "--L", "2", "--epsilon", "0.6", "--mode", "greedy"]);
    assert_eq!(exit, EXIT_DOMAIN);
    assert_eq!(json(&out)["verdict"], "inconclusive");

    // 00 and 11 are antipodal in the simplex encoding
    let (exit, out, _) = ldlab(&["cert", "rip", "--code", p(&path), "--s", "2"]);
    assert_eq!(exit, EXIT_DOMAIN);
    let report = json(&out);
    assert_eq!(report["kind"], "rip");
    assert!((report["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let (exit, out, _) = ldlab(&["cert", "avgdist", "--code", p(&path), "--L", "4"]);
    assert_eq!(exit, EXIT_DOMAIN);
    assert_eq!(json(&out)["details"]["vacuous"], true);

    let (exit, _, err) = ldlab(&["--max-subsets", "1", "cert", "l1", "--code", p(&path), "--L", "2", "--epsilon", "0.6"]);
    assert_eq!(exit, EXIT_BUDGET);
    assert!(!err.is_empty());
}

#[test]
fn malformed_gen_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.gen");
    std::fs::write(&path, "2 2 3\n1 0 1\n").unwrap();
    let (exit, _, err) = ldlab(&["check-ld", "--code", p(&path), "--t", "1", "--L", "2"]);
    assert_eq!(exit, EXIT_USAGE);
    assert!(err.contains("rows"));
    let missing = dir.path().join("missing.gen");
    assert_eq!(ldlab(&["cert", "rip", "--code", p(&missing), "--s", "2"]).0, EXIT_USAGE);
}

#[test]
fn plan_reports_margin() {
    let (exit, out, _) = ldlab(&["plan", "--epsilon", "0.5", "--q", "2", "--c0", "1", "--k", "10"]);
    assert_eq!(exit, EXIT_OK);
    let plan = json(&out);
    assert_eq!(plan["L"], 16);
    assert_eq!(plan["n"], 111);
    assert_eq!(plan["satisfied"], true);
}

#[test]
fn experiment_outputs_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rank_config.json");
    std::fs::write(&config, r#"{"q": 2, "k": 2, "n": 3, "trials": 200, "master_seed": 99}"#).unwrap();
    let csv = dir.path().join("rank.csv");
    let (exit, out, _) = ldlab(&["--jobs", "4", "exp", "rank", "--config", p(&config), "--seed", "7", "--out", p(&csv)]);
    assert_eq!(exit, EXIT_OK);
    let summary = json(&out);
    assert_eq!(summary["config_echo"]["master_seed"], 7);

    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert!(!text.contains('\r'));
    let records = read_csv(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 200);
    let sidecar: Value = json(&std::fs::read_to_string(csv.with_extension("json")).unwrap());
    assert_eq!(sidecar["cells"][0]["n_trials"], 200);

    // the same seed at one thread gives the same file
    let again = dir.path().join("again.csv");
    assert_eq!(ldlab(&["exp", "rank", "--config", p(&config), "--seed", "7", "--out", p(&again)]).0, EXIT_OK);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());

    let svg = dir.path().join("rank.svg");
    let (exit, out, _) = ldlab(&["plot", "--csv", p(&csv), "--out", p(&svg)]);
    assert_eq!(exit, EXIT_OK);
    assert_eq!(json(&out)["records"], 200);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
}

#[test]
fn experiment_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    std::fs::write(&config, r#"{"q": 2, "k": 2}"#).unwrap();
    assert_eq!(ldlab(&["exp", "rank", "--config", p(&config), "--seed", "1"]).0, EXIT_USAGE);
    std::fs::write(&config, r#"{"q": 2, "k": 2, "n": 3, "trials": 10}"#).unwrap();
    assert_eq!(ldlab(&["exp", "rank", "--config", p(&config)]).0, EXIT_USAGE);
}

#[test]
fn summary_may_not_replace_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rank.json");
    let text = r#"{"q": 2, "k": 2, "n": 3, "trials": 20}"#;
    std::fs::write(&config, text).unwrap();
    let csv = dir.path().join("rank.csv");
    let (exit, _, err) = ldlab(&["exp", "rank", "--config", p(&config), "--seed", "1", "--out", p(&csv)]);
    assert_eq!(exit, EXIT_USAGE);
    assert!(err.contains("overwrite"));
    assert_eq!(std::fs::read_to_string(&config).unwrap(), text);
}
