use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use robustci::gibbs::FunctionalModalities;
use robustci::model::StateSpace;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robustci"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn model(dir: &Path, name: &str, d0: u32, d: &[u32], k: usize) -> String {
    let body = format!(r#"{{"d0": {d0}, "d": {d:?}, "spec": {{"uniform_k": {k}}}}}"#);
    write(dir, name, &body).to_str().unwrap().to_string()
}

#[test]
fn graph_of_cube_and_complete_models() {
    let dir = tempfile::tempdir().unwrap();
    let cube = model(dir.path(), "cube.json", 2, &[2, 2, 2], 2);
    let out = run(&["graph", "--model", &cube]);
    assert_eq!(out.status.code(), Some(0));
    let g = json(&out);
    assert_eq!(g["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(g["edges"].as_array().unwrap().len(), 12);

    let complete = model(dir.path(), "k0.json", 2, &[2, 3], 0);
    let g = json(&run(&["graph", "--model", &complete]));
    assert_eq!(g["edges"].as_array().unwrap().len(), 15);
}

#[test]
fn malformed_model_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"d0\": 2, \"d\": [2,");
    let out_path = dir.path().join("graph.json");
    let out = run(&["graph", "--model", bad.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert!(!out_path.exists());
}

#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cube = model(dir.path(), "cube.json", 2, &[2, 2, 2], 2);
    let out_path = dir.path().join("nested.json");
    let direct = run(&["graph", "--model", &cube]);
    let written = run(&["graph", "--model", &cube, "--out", out_path.to_str().unwrap()]);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), direct.stdout);
}

#[test]
fn structures_listing() {
    let dir = tempfile::tempdir().unwrap();
    let k0 = model(dir.path(), "k0.json", 2, &[2, 2, 2], 0);
    let s = json(&run(&["structures", "--model", &k0, "--maximal-only"]));
    assert_eq!(s["count"], 1);
    assert_eq!(s["structures"][0]["blocks"].as_array().unwrap().len(), 1);

    let cube = model(dir.path(), "cube.json", 2, &[2, 2, 2], 2);
    let s = json(&run(&["structures", "--model", &cube, "--maximal-only", "--classify-complements"]));
    assert_eq!(s["count"], 17);
    for row in s["structures"].as_array().unwrap() {
        assert_ne!(row["complement_class"], "unclassified");
    }

    let square = model(dir.path(), "sq.json", 2, &[2, 2], 1);
    let s = json(&run(&["structures", "--model", &square, "--maximal-only"]));
    assert!(s["structures"].as_array().unwrap().iter().all(|r| r["product_form"] == true));
    let all = json(&run(&["structures", "--model", &square]));
    assert_eq!(all["count"], 16);
}

#[test]
fn structures_over_cap_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cube = model(dir.path(), "cube.json", 2, &[2, 2, 2], 2);
    let out = run(&["structures", "--model", &cube, "--cap-vertices", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_reports_robustness() {
    let dir = tempfile::tempdir().unwrap();
    let m = model(dir.path(), "m.json", 2, &[2, 2], 1);
    let mut entries = Vec::new();
    for x1 in 1..=2 {
        for x2 in 1..=2 {
            entries.push(format!(r#"{{"x0": {x1}, "x": [{x1}, {x2}], "p": "1/4"}}"#));
        }
    }
    let copy = write(dir.path(), "copy.json", &format!(r#"{{"entries": [{}]}}"#, entries.join(",")));
    let out = run(&["check", "--model", &m, "--dist", copy.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["robust"], false);
    assert!(r["failing_statement"]["witness_minor"].is_object());

    let mut uniform = Vec::new();
    for x0 in 1..=2 {
        for x1 in 1..=2 {
            for x2 in 1..=2 {
                uniform.push(format!(r#"{{"x0": {x0}, "x": [{x1}, {x2}], "p": "1/8"}}"#));
            }
        }
    }
    let uni = write(dir.path(), "uni.json", &format!(r#"{{"entries": [{}]}}"#, uniform.join(",")));
    let out = run(&["check", "--model", &m, "--dist", uni.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["structure"].as_array().unwrap().len(), 1);

    let neg = write(
        dir.path(),
        "neg.json",
        r#"{"entries": [{"x0": 1, "x": [1, 1], "p": "-1/2"}, {"x0": 2, "x": [1, 1], "p": "3/2"}]}"#,
    );
    let out = run(&["check", "--model", &m, "--dist", neg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative"));
}

#[test]
fn groebner_single_edge_and_example() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(
        dir.path(),
        "edge.json",
        r#"{"d": [2], "vertices": [[1], [2]], "edges": [{"u": [1], "v": [2], "witness": null}]}"#,
    );
    let out = run(&["groebner", "--graph", edge.to_str().unwrap(), "--d0", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let b = json(&out);
    assert_eq!(b["elements"].as_array().unwrap().len(), 3);
    assert_eq!(b["verification"]["all_pass"], true);

    let three = write(
        dir.path(),
        "three.json",
        r#"{"d": [3], "vertices": [[1], [2], [3]], "edges": [{"u": [1], "v": [3], "witness": null}, {"u": [2], "v": [3], "witness": null}]}"#,
    );
    let out = run(&["groebner", "--graph", three.to_str().unwrap(), "--verify", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p[2;2]*p[1;3]*p[1;1] - p[2;1]*p[1;3]*p[1;2]"), "{text}");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn groebner_batch_on_four_vertices() {
    let out = run(&["groebner", "--all-graphs", "4", "--d0", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["graphs"], 64);
    assert_eq!(r["passed"], 64);
}

#[test]
fn groebner_literal_range_fails_verification() {
    let out = run(&["groebner", "--all-graphs", "3", "--d0", "3", "--antitone", "literal"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn decompose_models() {
    let dir = tempfile::tempdir().unwrap();
    let edge = model(dir.path(), "edge.json", 2, &[2], 0);
    let out = run(&["decompose", "--model", &edge, "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["legs"]["intersection_equality"], true);
    assert!(r["counterexamples"].as_array().unwrap().is_empty());

    let cube = model(dir.path(), "cube.json", 2, &[2, 2, 2], 2);
    let r = json(&run(&["decompose", "--model", &cube, "--trials", "50"]));
    assert_eq!(r["legs"]["intersection_equality"], "skipped");
    assert_eq!(r["legs"]["non_containment"], true);
    assert_eq!(r["admissible_Y"].as_array().unwrap().len(), 17);

    let edgeless = model(dir.path(), "none.json", 2, &[2, 2], 2);
    let r = json(&run(&["decompose", "--model", &edgeless, "--trials", "20"]));
    assert_eq!(r["admissible_Y"].as_array().unwrap().len(), 1);
}

#[test]
fn decompose_is_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let m = model(dir.path(), "m.json", 2, &[2, 3], 1);
    let go = |threads: &str| {
        bin()
            .args(["decompose", "--model", &m, "--trials", "200", "--seed", "9"])
            .env("ROBUSTCI_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = go("1");
    assert_eq!(one, go("4"));
    assert_eq!(one, go("1"));
}

#[test]
fn gibbs_neuron_and_modalities() {
    let out = run(&["gibbs", "--neuron", "1,-2", "--alpha", "2,1,1", "--alpha", "3,3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["round_trip_error"].as_f64().unwrap() <= 1e-9);
    assert_eq!(r["alpha"][0]["alpha"], "-1/2");
    assert_eq!(r["alpha"][1]["alpha"], "1/1");

    let dir = tempfile::tempdir().unwrap();
    let diag = write(dir.path(), "diag.json", &FunctionalModalities::diagonal_example().to_json());
    let r = json(&run(&["gibbs", "--modalities", diag.to_str().unwrap()]));
    for row in r["robustness"].as_array().unwrap() {
        if row["S"].as_array().unwrap().len() == 1 {
            let x = row["x"].as_array().unwrap();
            assert_eq!(row["robust"].as_bool().unwrap(), x[0] == x[1], "{row}");
        }
        assert_eq!(row["robust"], row["potential_criterion"]);
    }

    let uniform = write(dir.path(), "uni.json", &FunctionalModalities::uniform(&StateSpace::binary(2)).to_json());
    let r = json(&run(&["gibbs", "--modalities", uniform.to_str().unwrap(), "--k", "1"]));
    assert!(r["robustness"].as_array().unwrap().iter().all(|row| row["robust"] == true));
    assert!(r["k_interaction"]["reconstruction_error"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn gibbs_rejects_zero_kernels() {
    let space = StateSpace::binary(1);
    let mods = FunctionalModalities::from_fn(&space, |_, _| vec![1.0, 0.0]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "zero.json", &mods.to_json());
    let out = run(&["gibbs", "--modalities", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
