use std::process::{Command, Output};

use serde_json::Value;

fn spreadlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spreadlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = spreadlab(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn spectrum_of_k4_from_graph6() {
    let o = spreadlab(&["spectrum", "--g6", "C~"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("spectrum  3.0000, -1.0000^[3]"), "{text}");
    assert!(text.contains("spread    4.0000"), "{text}");

    let v = json(&["spectrum", "--g6", "C~", "--matrix", "dsl"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "spectrum");
    assert_eq!(v["vertex_labels"], "0-based");
    assert!((v["result"]["spread"].as_f64().unwrap() - 4.0).abs() < 1e-9);
}

#[test]
fn edge_file_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g1.txt");
    let g = spreadlab::builtin("G1").unwrap();
    let mut text = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        text += &format!("{u} {v}\n");
    }
    std::fs::write(&path, text).unwrap();
    let expected = spreadlab::spectral::spectrum(&g, spreadlab::MatrixKind::Distance).unwrap();
    let v = json(&["spectrum", "--edges", path.to_str().unwrap()]);
    let got: Vec<f64> = v["result"]["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(got.len(), expected.len());
    // serde_json's default float parser may be off by one ulp
    assert!(got.iter().zip(expected.values()).all(|(a, b)| (a - b).abs() < 1e-12));
}

#[test]
fn csv_has_header_and_rows() {
    let o = spreadlab(&["spectrum", "--family", "path:4", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,eigenvalue");
    assert_eq!(lines.len(), 5);
}

#[test]
fn bound_report_is_one_based_in_plain_text() {
    let o = spreadlab(&["bound", "--builtin", "Ki53", "--method", "clique"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("bound        10.6158"), "{text}");
    assert!(text.contains("v1"), "{text}");
    assert!(!text.contains("v0"), "{text}");
}

#[test]
fn legacy_quotients_differ() {
    let o = spreadlab(&["bound", "--builtin", "G1", "--method", "legacy-2012", "--vertex", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("9/2"), "{text}");
    assert!(text.contains("equal   false"), "{text}");
    let v = json(&["bound", "--builtin", "G1", "--method", "legacy-2012"]);
    assert_eq!(v["result"]["b1"]["entries"][1], "19/4");
    assert_eq!(v["result"]["b2"]["entries"][1], "25/4");
}

#[test]
fn verify_tables_selection() {
    let v = json(&["verify-tables", "--only", "bipartite-distance:G2"]);
    let cells = v["result"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert!(cells.iter().all(|c| c["pass"] == true));

    let o = spreadlab(&["verify-tables", "--only", "order-four"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("9/9 cells within tolerance"));
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(spreadlab(&["spectrum"]).status.code(), Some(1));
    assert_eq!(spreadlab(&["spectrum", "--g6", "C~", "--builtin", "G1"]).status.code(), Some(1));
    assert_eq!(spreadlab(&["conjecture", "--n", "11"]).status.code(), Some(1));
    assert_eq!(spreadlab(&["spectrum", "--g6", "!!"]).status.code(), Some(1));
    assert_eq!(spreadlab(&["--help"]).status.code(), Some(0));
    // domain errors
    let disconnected = spreadlab(&["spectrum", "--g6", "A?"]);
    assert_eq!(disconnected.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&disconnected.stderr).contains("disconnected"));
    assert_eq!(spreadlab(&["bound", "--builtin", "Ki53", "--method", "bipartite-dsl"]).status.code(), Some(2));
    assert_eq!(spreadlab(&["bound", "--family", "path:5", "--method", "cactus"]).status.code(), Some(2));
    // verification failure: published cells that do not reproduce
    assert_eq!(spreadlab(&["verify-tables", "--only", "diameter"]).status.code(), Some(3));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    let o = spreadlab(&["monotonicity", "--n", "8", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("strictly decreasing: true"));
}

#[test]
fn conjecture_resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("n7.ck");
    let ck = ck.to_str().unwrap();
    let args = ["conjecture", "--n", "7", "--chunk-size", "256", "--checkpoint", ck];

    let mut first = args.to_vec();
    first.extend(["--stop-after", "3"]);
    let stopped = spreadlab(&first);
    assert_eq!(stopped.status.code(), Some(1));

    let resumed = json(&args);
    let fresh = json(&["conjecture", "--n", "7", "--chunk-size", "256", "--sequential"]);
    assert!(resumed["result"]["stats"]["chunks_resumed"].as_u64().unwrap() >= 3);
    for key in ["graphs_checked", "classes_by_split", "minimizer", "runner_up", "verdict", "counterexamples", "minimizer_is_reference"] {
        assert_eq!(resumed["result"][key], fresh["result"][key], "{key}");
    }
    assert_eq!(fresh["result"]["verdict"], "holds");
    assert_eq!(fresh["result"]["graphs_checked"], 44);
}
