use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graphconf::graph::{is_sufficiently_subdivided, Graph};
use serde_json::Value;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn graph(name: &str) -> String {
    corpus_dir()
        .join("graphs")
        .join(format!("{name}.edges"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphconf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_examples() {
    for (name, n, order) in [("k5", "2", 4), ("c6", "3", 1), ("y", "2", 2)] {
        let out = run(&["classify", "--graph", &graph(name), "--n", n]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["order"], order, "{name}");
        assert_eq!(json(&out)["stable_order"], order);
    }
    let out = run(&["classify", "--graph", &graph("k33"), "--n", "2"]);
    let v = json(&out);
    assert_eq!(v["case"], "nonplanar");
    assert_eq!(v["planarity"], "nonplanar");
    assert_eq!(v["kuratowski"]["kind"], "K33");
}

#[test]
fn input_and_argument_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edges");
    fs::write(&bad, "V 3\n0 7\n").unwrap();
    let out = run(&["classify", "--graph", bad.to_str().unwrap(), "--n", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.edges");
    assert_eq!(
        code(&run(&[
            "classify",
            "--graph",
            missing.to_str().unwrap(),
            "--n",
            "2"
        ])),
        1
    );
    assert_eq!(
        code(&run(&["classify", "--graph", &graph("k5"), "--n", "0"])),
        2
    );
    assert_eq!(code(&run(&["classify", "--graph", &graph("k5")])), 2);
    assert_eq!(
        code(&run(&[
            "homology",
            "--graph",
            &graph("k5"),
            "--n",
            "2",
            "--ordered",
            "--unordered"
        ])),
        2
    );
}

#[test]
fn homology_examples() {
    let out = run(&["homology", "--graph", &graph("k5"), "--n", "2", "--ordered"]);
    let v = json(&out);
    assert_eq!(v["homology"][1]["betti"], 12);
    assert_eq!(v["euler_characteristic"], -10);

    let v = json(&run(&[
        "homology",
        "--graph",
        &graph("k33"),
        "--n",
        "2",
        "--unordered",
    ]));
    assert_eq!(v["homology"][1]["betti"], 4);
    assert_eq!(v["homology"][1]["torsion"], serde_json::json!([2]));

    let v = json(&run(&["homology", "--graph", &graph("y"), "--n", "2"]));
    assert_eq!(v["homology"][1]["betti"], 1);
    assert_eq!(v["cell_counts"], serde_json::json!([6, 6]));

    let v = json(&run(&[
        "homology",
        "--graph",
        &graph("c3"),
        "--n",
        "3",
        "--no-subdivide",
    ]));
    assert_eq!(v["sufficient"], false);
}

#[test]
fn bundle_examples() {
    let v = json(&run(&["bundle", "--graph", &graph("k33"), "--n", "2"]));
    assert_eq!(v["evidence"]["sq1_nonzero"], true);
    let v = json(&run(&["bundle", "--graph", &graph("c5"), "--n", "2"]));
    assert_eq!(v["evidence"]["w1_nonzero"], true);
    assert_eq!(v["evidence"]["sq1_nonzero"], false);
    let v = json(&run(&["bundle", "--graph", &graph("p3"), "--n", "2"]));
    assert_eq!(v["evidence"]["w1_nonzero"], false);
    assert_eq!(v["evidence"]["consistent"], true);
}

#[test]
fn budget_overruns_exit_4() {
    let out = run(&[
        "bundle",
        "--graph",
        &graph("k5"),
        "--n",
        "2",
        "--budget",
        "10",
    ]);
    assert_eq!(code(&out), 4);
    let v = json(&out);
    assert_eq!(v["order"], 4);
    assert!(v["evidence"].is_null());
    assert_eq!(
        code(&run(&[
            "homology",
            "--graph",
            &graph("k6"),
            "--n",
            "2",
            "--budget",
            "10"
        ])),
        4
    );
}

#[test]
fn subdivide_examples() {
    let out = run(&["subdivide", "--graph", &graph("k5"), "--n", "3"]);
    assert_eq!(code(&out), 0);
    let g = Graph::parse_edge_list(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(is_sufficiently_subdivided(&g, 3).ok);

    let out = run(&["subdivide", "--graph", &graph("c4"), "--n", "2"]);
    assert_eq!(
        Graph::parse_edge_list(&String::from_utf8(out.stdout).unwrap()).unwrap(),
        Graph::cycle(4)
    );

    let out = run(&["subdivide", "--graph", &graph("loop"), "--n", "2"]);
    let g = Graph::parse_edge_list(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(g.is_simple() && g.edge_count() >= 3 && is_sufficiently_subdivided(&g, 2).ok);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "--graph", "K33", "--n", "2"],
        vec!["bundle", "--graph", "K33", "--n", "2"],
        vec!["export-complex", "--graph", "K33", "--n", "2"],
        vec!["homology", "--graph", "K33", "--n", "2", "--ordered"],
    ] {
        let path = graph("k33");
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "K33" { path.as_str() } else { a })
            .collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn shipped_corpus_passes() {
    let out = run(&["--json", "verify", corpus_dir().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    let names: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn wrong_expectation_is_named() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("graphs")).unwrap();
    fs::copy(graph("y"), dir.path().join("graphs/y.edges")).unwrap();
    fs::write(
        dir.path().join("y-wrong.json"),
        r#"{"name": "y-wrong", "graph": "graphs/y.edges", "n": 2, "expected": {"order": 4}}"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("y-right.json"),
        r#"{"name": "y-right", "graph": "graphs/y.edges", "n": 2, "expected": {"order": 2}}"#,
    )
    .unwrap();
    let out = run(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("y-wrong") && stderr.contains("order"),
        "{stderr}"
    );
    assert_eq!(json(&out)["failed"], 1);
}

#[test]
fn malformed_corpus_entries_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("a.json"),
        r#"{"name": "a", "graph": "nowhere.edges", "n": 2}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["verify", dir.path().to_str().unwrap()])), 1);
    fs::write(
        dir.path().join("a.json"),
        r#"{"name": "a", "graph": "x", "n": 2, "bogus": 1}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["verify", dir.path().to_str().unwrap()])), 1);
}

#[test]
fn empty_corpus_warns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
