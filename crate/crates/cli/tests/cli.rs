use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tc-graphs"))
}

fn graph(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../graphs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn field<'a>(out: &'a Output, key: &str) -> &'a str {
    let text = std::str::from_utf8(&out.stdout).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

#[test]
fn stats_of_k6() {
    let out = run(&["stats", graph("k6.graph").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(field(&out, "essential"), "6");
    assert_eq!(field(&out, "beta"), "10");
    assert_eq!(field(&out, "nu"), "2");
    assert_eq!(field(&out, "nu_exact"), "true");
}

#[test]
fn stats_of_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("path.graph");
    std::fs::write(&p, "graph 3\nedge 0 1\nedge 1 2\n").unwrap();
    let out = run(&["stats", p.to_str().unwrap()]);
    assert_eq!((field(&out, "essential"), field(&out, "beta"), field(&out, "nu")), ("0", "0", "0"));
}

#[test]
fn malformed_edge_names_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.graph");
    std::fs::write(&p, "# header\ngraph 3\nedge 0 x\n").unwrap();
    let out = run(&["stats", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn homology_of_y() {
    let out = run(&["homology", graph("y.graph").to_str().unwrap(), "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "betti_morse"), "1,1,0");
    assert_eq!(field(&out, "betti_cellular"), "1,1,0");
    assert_eq!(field(&out, "agreement"), "true");
    assert_eq!(field(&out, "morse_boundaries_zero"), "true");
}

#[test]
fn ordered_counts_scale_by_n_factorial() {
    let path = graph("two_triangles.graph");
    let u = run(&["homology", path.to_str().unwrap(), "--n", "3"]);
    let o = run(&["homology", path.to_str().unwrap(), "--n", "3", "--ordered"]);
    let parse = |s: &str| s.split(',').map(|x| x.parse::<usize>().unwrap()).collect::<Vec<_>>();
    let (u, o) = (parse(field(&u, "cells")), parse(field(&o, "cells")));
    assert_eq!(o, u.iter().map(|k| 6 * k).collect::<Vec<_>>());
}

#[test]
fn tc_reports() {
    let out = run(&["tc", graph("four_triangles.graph").to_str().unwrap(), "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(field(&out, "exact"), "5");
    assert_eq!(field(&out, "method"), "vertex_disjoint_cycles");

    let out = run(&["tc", graph("looped_chain2.graph").to_str().unwrap(), "--n", "4"]);
    assert_eq!(field(&out, "exact"), "5");
    assert_eq!(field(&out, "method"), "s_graph");
    assert_eq!(field(&out, "witness.factors"), "0,1,2,3");

    let out = run(&["tc", graph("y.graph").to_str().unwrap(), "--n", "2"]);
    assert_eq!((field(&out, "lower"), field(&out, "upper")), ("2", "3"));
    assert_eq!(field(&out, "exact"), "none");
}

#[test]
fn tc_output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = graph("ordering.graph");
    let mut texts = Vec::new();
    for (i, threads) in ["1", "4"].iter().enumerate() {
        let out = dir.path().join(format!("r{i}.txt"));
        let status = bin()
            .env("TC_GRAPHS_THREADS", threads)
            .args(["tc", g.to_str().unwrap(), "--n", "2", "--out", out.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(status.success());
        texts.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    assert!(texts[0].starts_with(b"# tc-graphs tc"));
}

#[test]
fn budget_flag_sets_exit_code() {
    let out = run(&["tc", graph("ordering.graph").to_str().unwrap(), "--n", "2", "--budget", "0"]);
    assert_eq!(field(&out, "budget_exhausted"), "true");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn disconnected_graph_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("two.graph");
    std::fs::write(&p, "graph 4\nedge 0 1\nedge 2 3\n").unwrap();
    let out = run(&["tc", p.to_str().unwrap(), "--n", "1"]);
    assert_eq!(field(&out, "status"), "not_connected");
    assert_eq!(out.status.code(), Some(1));
}
