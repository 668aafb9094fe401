use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isingbench"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn gen_maxcut_names_and_sizes() {
    let doc: Value = serde_json::from_str(&ok(&[
        "gen", "maxcut", "--n", "28", "--d", "3", "--seed", "102",
    ]))
    .unwrap();
    assert_eq!(doc["name"], "(28,3,102,u)");
    assert_eq!(doc["family"], "maxcut");
    assert_eq!(doc["edges"].as_array().unwrap().len(), 42);
    let again = ok(&["gen", "maxcut", "--n", "28", "--d", "3", "--seed", "102"]);
    assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), doc);
}

#[test]
fn gen_rejects_infeasible_regular_graph() {
    let out = run(&["gen", "maxcut", "--n", "5", "--d", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn gen_hoso_on_eagle() {
    let dir = TempDir::new().unwrap();
    let f = path(&dir, "h.json");
    ok(&[
        "--out",
        s(&f),
        "gen",
        "hoso",
        "--topology",
        "eagle127",
        "--seed",
        "4",
    ]);
    let doc = json(&f);
    assert_eq!(doc["num_spins"], 127);
    assert_eq!(doc["linear"].as_array().unwrap().len(), 127);
    assert_eq!(doc["quadratic"].as_array().unwrap().len(), 144);
    assert_eq!(doc["cubic"].as_array().unwrap().len(), 197);
    assert_eq!(doc["provenance"]["triple_rule"], "length2_paths");
}

#[test]
fn gen_planar_glass_on_heron() {
    let doc: Value = serde_json::from_str(&ok(&[
        "gen",
        "planar-sg",
        "--topology",
        "heron133",
        "--seed",
        "2",
    ]))
    .unwrap();
    assert_eq!(doc["num_spins"], 133);
    let q = doc["quadratic"].as_array().unwrap();
    assert_eq!(q.len(), 150);
    assert!(q.iter().all(|t| t[2].as_f64().unwrap().abs() <= 1.0));
    let bad = run(&["gen", "planar-sg", "--topology", "falcon"]);
    assert_eq!(bad.status.code(), Some(1));
}

fn small_maxcut(dir: &TempDir) -> PathBuf {
    let f = path(dir, "mc.json");
    ok(&[
        "--out",
        s(&f),
        "gen",
        "maxcut",
        "--n",
        "12",
        "--d",
        "3",
        "--seed",
        "5",
    ]);
    f
}

#[test]
fn bench_reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    small_maxcut(&dir);
    let hoso = path(&dir, "frag.json");
    ok(&[
        "--out",
        s(&hoso),
        "gen",
        "hoso",
        "--nodes",
        "18,14,0,1,2,3",
        "--seed",
        "1",
    ]);
    let mut reports = Vec::new();
    for (threads, format) in [("1", "rows"), ("2", "rows"), ("2", "structured")] {
        let out = bin()
            .current_dir(dir.path())
            .args([
                "--seed",
                "9",
                "--threads",
                threads,
                "--format",
                format,
                "--out",
                "r",
                "bench",
                "mc.json",
            ])
            .args([
                "frag.json",
                "--reads",
                "200",
                "--t-sample-ms",
                "0.5",
                "--histograms",
                "h",
            ])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let read = |f: &str| fs::read_to_string(dir.path().join(f)).unwrap();
        reports.push((read("r"), read("h")));
    }
    assert!(reports[0] == reports[1], "output depends on thread count");
    let rows = &reports[0].0;
    assert!(rows.starts_with("# format_version=1\n# seed=9\n# params="));
    let header = rows.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "instance,family,opt,p_gs_raw,p_gs_post,t_sample_ms,tts_raw_ms,tts_post_ms,n_samples,ci_low,ci_high");
    assert_eq!(rows.lines().filter(|l| !l.starts_with('#')).count(), 3);
    assert!(reports[0].1.contains("series,bin_low,count\n"));

    let doc: Value = serde_json::from_str(&reports[2].0).unwrap();
    assert_eq!(doc["body"]["kind"], "bench");
    let row = &doc["body"]["rows"][0];
    assert_eq!(row["instance"], "(12,3,5,u)");
    assert_eq!(row["t_sample_ms"], 0.5);
    assert!(row["p_gs_post"].as_f64().unwrap() >= row["p_gs_raw"].as_f64().unwrap());
}

#[test]
fn bench_refuses_unverifiable_optimum() {
    let dir = TempDir::new().unwrap();
    let big = path(&dir, "big.json");
    ok(&[
        "--out",
        s(&big),
        "gen",
        "planar-sg",
        "--topology",
        "eagle127",
    ]);
    let out = run(&["bench", s(&big), "--reads", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("optimum"));
}

#[test]
fn anneal_sim_sweep_rows() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "sg.json");
    ok(&[
        "--out",
        s(&inst),
        "gen",
        "planar-sg",
        "--nodes",
        "0,1,2,3,4,5,6,7,14,18",
        "--seed",
        "5",
    ]);
    let rows = ok(&["anneal-sim", s(&inst), "--times", "0,1,8", "--shots", "500"]);
    let data: Vec<Vec<&str>> = rows
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(data.len(), 3);
    for r in &data {
        let slices: f64 = r[1].parse().unwrap();
        let digitized: f64 = r[2].parse().unwrap();
        assert!((digitized - 0.336 * slices).abs() < 1e-9);
    }
    assert_eq!(data[2][1], "32");
    let first: f64 = data[0][3].parse().unwrap();
    let last: f64 = data[2][3].parse().unwrap();
    assert!(last < first);
    assert!(rows.contains("# note: residual_energy is per spin"));
}

#[test]
fn report_merges_structured_outputs() {
    let dir = TempDir::new().unwrap();
    let inst = small_maxcut(&dir);
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    for (seed, out) in [("1", &a), ("2", &b)] {
        ok(&[
            "--seed",
            seed,
            "--format",
            "structured",
            "--out",
            s(out),
            "bench",
            s(&inst),
            "--reads",
            "50",
            "--t-sample-ms",
            "1",
        ]);
    }
    let merged = ok(&["--format", "structured", "report", s(&a), s(&b)]);
    let doc: Value = serde_json::from_str(&merged).unwrap();
    assert_eq!(doc["body"]["rows"].as_array().unwrap().len(), 2);
    assert!(doc["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n == "merged report from seed 2"));
    let sim = path(&dir, "sim.json");
    let sg = path(&dir, "sg.json");
    ok(&[
        "--out",
        s(&sg),
        "gen",
        "planar-sg",
        "--nodes",
        "0,1,2,3",
        "--seed",
        "1",
    ]);
    ok(&[
        "--format",
        "structured",
        "--out",
        s(&sim),
        "anneal-sim",
        s(&sg),
        "--times",
        "0,1",
    ]);
    assert_eq!(run(&["report", s(&a), s(&sim)]).status.code(), Some(1));
}

#[test]
fn import_edge_list_and_solve() {
    let dir = TempDir::new().unwrap();
    let edges = path(&dir, "ring.txt");
    fs::write(&edges, "# 5-cycle\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let inst = path(&dir, "ring.json");
    ok(&["--out", s(&inst), "import", s(&edges), "--opt", "4"]);
    let doc = json(&inst);
    assert_eq!(doc["name"], "ring");
    assert_eq!(doc["source"], "imported");
    assert_eq!(doc["opt_value"], 4.0);
    let rows = ok(&["solve", s(&inst), "--reads", "20"]);
    assert!(rows.lines().any(|l| l == "config,energy,multiplicity"));
    let exact: Value = serde_json::from_str(&ok(&["solve", s(&inst), "--exact"])).unwrap();
    assert_eq!(exact["ground_energy"], -3.0);
    assert_eq!(exact["ground_count"], 10);

    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "0 1\n1 one\n").unwrap();
    let out = run(&["import", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn reduce_with_gadget_libraries() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "h.json");
    ok(&[
        "--out",
        s(&inst),
        "gen",
        "hoso",
        "--nodes",
        "18,14,0,1,2,3,4",
        "--seed",
        "3",
    ]);
    let red = path(&dir, "r.json");
    ok(&[
        "--out",
        s(&red),
        "reduce",
        s(&inst),
        "--gadgets",
        "baseline",
    ]);
    let doc = json(&red);
    assert_eq!(doc["num_spins"], 12);
    assert!(doc.get("cubic").is_none());
    assert_eq!(doc["reduction"]["original_num_spins"], 7);

    let lib = path(&dir, "lib.json");
    fs::write(
        &lib,
        r#"{"format_version": 1, "kind": "gadget_library", "name": "broken", "gadgets": [
            {"target_coeff": 1.0, "offset": 0.0, "linear": [[0, 1.0]], "quadratic": []},
            {"target_coeff": -1.0, "offset": 0.0, "linear": [[0, -1.0]], "quadratic": []}]}"#,
    )
    .unwrap();
    let out = run(&["reduce", s(&inst), "--gadgets", s(&lib)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("exact"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
