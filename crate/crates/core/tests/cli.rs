use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tame_analysis::base_r::equality_automaton;

fn tame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tame")).args(args).output().expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn read_json(path: &Path) -> Value {
    json(&std::fs::read(path).unwrap())
}

#[test]
fn certify_square() {
    let out = tame(&["certify", "--fn", "poly:[1,0,0] on (0,1)", "--k", "2"]);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["tool"], "tame");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["subcommand"], "certify");
    assert_eq!(v["config"]["k"], 2);
    assert_eq!(v["report"]["coverage"], 1.0);
}

#[test]
fn encode_half_gives_two_words() {
    let out = tame(&["encode", "--x", "0.5"]);
    assert!(out.status.success());
    let r = &json(&out.stdout)["report"];
    let words = r["words"].as_array().unwrap();
    assert_eq!(words.len(), 2);
    assert!(words[0].as_str().unwrap().starts_with("0⋆1000"));
    assert!(words[1].as_str().unwrap().starts_with("0⋆0111"));
    assert_eq!(r["decoded"], serde_json::json!([0.5, 0.5]));
    assert_eq!(r["r_adic"], true);
}

#[test]
fn negative_x_is_accepted() {
    let out = tame(&["encode", "--x", "-1", "--base", "3", "--precision", "6"]);
    assert!(out.status.success());
    assert_eq!(json(&out.stdout)["report"]["decoded"][0], -1.0);
}

#[test]
fn classify_affine() {
    let out = tame(&["classify", "--fn", "affine:9,9 on (0,1)"]);
    assert!(out.status.success());
    assert_eq!(json(&out.stdout)["report"]["verdict"], "generically_affine");
}

#[test]
fn parse_error_exits_2() {
    let out = tame(&["certify", "--fn", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let e = json(&out.stderr);
    assert_eq!(e["error"], "ParseError");
    assert!(e["detail"].as_str().unwrap().contains("nonsense"));
}

#[test]
fn output_plot_and_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    std::fs::write(&grid, "x,fx\n0,0\n0.5,0.25\n1,1\n").unwrap();
    let report = dir.path().join("report.json");
    let plot = dir.path().join("plot.csv");
    let out = tame(&[
        "certify",
        "--input",
        grid.to_str().unwrap(),
        "--k",
        "1",
        "--output",
        report.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // The report goes to the file; stdout carries a summary line.
    assert!(String::from_utf8(out.stdout).unwrap().contains("coverage"));
    let v = read_json(&report);
    assert_eq!(v["config"]["input_path"], grid.to_str().unwrap());
    assert!(v["report"]["coverage"].as_f64().unwrap() > 0.9);
    let plot = std::fs::read_to_string(plot).unwrap();
    assert!(plot.starts_with("x,value\n"));
    assert!(plot.lines().count() > 100);
}

#[test]
fn seqset_from_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    let body: String = (1..=200).map(|n| format!("{}\n", 2f64.powi(-n / 5 - 1) / n as f64)).collect();
    std::fs::write(&pts, body).unwrap();
    let out = tame(&["seqset", "--input", pts.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out.stdout)["report"].is_object());
}

#[test]
fn missing_input_file_is_an_error() {
    let out = tame(&["seqset", "--input", "/nonexistent/points.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out.stderr)["error"].is_string());
}

#[test]
fn recognize_with_automaton_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.json");
    std::fs::write(&path, serde_json::to_string(equality_automaton(2).spec()).unwrap()).unwrap();
    let run = |a: &str, b: &str| {
        let out = tame(&["recognize", "--automaton", path.to_str().unwrap(), "--word", a, "--word", b]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        json(&out.stdout)["report"]["membership"]["accepted"].as_bool().unwrap()
    };
    assert!(run("0*10", "0*10"));
    assert!(!run("0*10", "0*01"));
}

#[test]
fn recognize_trend_on_graph() {
    let out = tame(&["recognize", "--fn", "affine:0.5,0 on (-1,2)", "--p-min", "3", "--p-max", "6"]);
    assert!(out.status.success());
    let t = &json(&out.stdout)["report"]["trend"];
    assert_eq!(t["verdict"], "bounded");
    assert_eq!(t["label"], "empirical evidence");
}

#[test]
fn synth_field_and_identities() {
    let out = tame(&["synth-field", "--fn", "poly:[1,0,0] on (0,1)", "--trials", "100"]);
    assert!(out.status.success());
    let r = &json(&out.stdout)["report"];
    assert!((r["b"].as_f64().unwrap() - 0.25).abs() < 1e-9);
    assert_eq!(r["axiom_report"]["passed"], true);

    let out = tame(&["identities", "--fn", "sin on (0,2)", "--k", "3", "--trials", "50"]);
    assert!(out.status.success());
}

#[test]
fn dimension_of_cantor_points() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("cantor.csv");
    let mut ivs = vec![(0.0f64, 1.0f64)];
    for _ in 0..10 {
        ivs = ivs.into_iter().flat_map(|(a, b)| [(a, a + (b - a) / 3.0), (b - (b - a) / 3.0, b)]).collect();
    }
    let body: String = ivs.iter().map(|(a, _)| format!("{a}\n")).collect();
    std::fs::write(&pts, body).unwrap();
    let out = tame(&["dimension", "--input", pts.to_str().unwrap(), "--j-max", "30"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &json(&out.stdout)["report"];
    assert!((r["box"]["estimate"].as_f64().unwrap() - 0.63).abs() < 0.1);
}
