use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn netdense(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netdense")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = netdense(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn err(args: &[&str]) -> String {
    let out = netdense(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    String::from_utf8(out.stderr).unwrap()
}

fn data_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_named_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c4.edges");
    let stdout = ok(&["generate", "--model", "named", "--name", "cycle", "--size", "4", "--out", p(&out)]);
    assert_eq!(data_lines(&out), ["0 1", "0 3", "1 2", "2 3"]);
    assert!(stdout.contains("n=4 |E|=4"));
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.edges");
    let b = dir.path().join("b.edges");
    let args = |o: &Path| {
        vec!["generate", "--model", "ba", "--n", "1000", "--m", "2", "--seed", "7", "--out"]
            .into_iter()
            .map(String::from)
            .chain([p(o).to_string()])
            .collect::<Vec<_>>()
    };
    let run = |o: &Path| ok(&args(o).iter().map(String::as_str).collect::<Vec<_>>());
    run(&a);
    run(&b);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn generate_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.edges");
    let msg = err(&["generate", "--model", "ba", "--n", "5", "--m", "5", "--out", p(&out)]);
    assert!(msg.contains("m"), "{msg}");
    let msg = err(&["generate", "--model", "copying", "--n", "5", "--out", p(&out)]);
    assert!(msg.contains("--p"), "{msg}");
}

#[test]
fn densify_triangle_gives_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = dir.path().join("k3.edges");
    fs::write(&k3, "0 1\n1 2\n0 2\n").unwrap();
    let out = dir.path().join("d.edges");
    let prov = dir.path().join("d.prov");
    ok(&["transform", "--op", "densify", "--in", p(&k3), "--out", p(&out), "--provenance", p(&prov)]);
    let lines = data_lines(&out);
    assert_eq!(lines.len(), 6);
    let report = ok(&["analyze", "--in", p(&out)]);
    assert!(report.contains("n=6 |E|=6"), "{report}");
    assert!(report.contains("diameter: 3"), "{report}");
    assert_eq!(data_lines(&prov).len(), 6);
}

#[test]
fn subdivide_doubles_edges_and_empty_input_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.edges");
    fs::write(&g, "0 1\n1 2\n2 3\n").unwrap();
    let out = dir.path().join("s.edges");
    ok(&["transform", "--op", "subdivide", "--in", p(&g), "--out", p(&out)]);
    assert_eq!(data_lines(&out).len(), 6);

    let empty = dir.path().join("empty.edges");
    fs::write(&empty, "# nothing here\n").unwrap();
    err(&["transform", "--op", "line", "--in", p(&empty), "--out", p(&out)]);
}

#[test]
fn edge_budget_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.edges");
    ok(&["generate", "--model", "named", "--name", "star", "--size", "50", "--out", p(&g)]);
    let out = dir.path().join("l.edges");
    let msg = err(&["transform", "--op", "line", "--in", p(&g), "--out", p(&out), "--max-edges", "100"]);
    assert!(msg.contains("1176"), "{msg}");
}

#[test]
fn analyze_cycle_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = dir.path().join("c4.edges");
    ok(&["generate", "--model", "named", "--name", "cycle", "--size", "4", "--out", p(&c4)]);
    let json = dir.path().join("r.json");
    let text = ok(&["analyze", "--in", p(&c4), "--json", p(&json), "--community"]);
    assert!(text.contains("<k>=2.000000"));
    assert!(text.contains("r=undefined"));
    assert!(text.contains("avg_local=0.000000"));
    assert!(text.contains("diameter: 2"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["diameter"]["diameter"], 2);
    assert!(v["community"].is_object());
}

#[test]
fn analyze_rejects_unknown_metric() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.edges");
    fs::write(&g, "0 1\n").unwrap();
    let msg = err(&["analyze", "--in", p(&g), "--metrics", "nonsense"]);
    for name in ["moments", "powerlaw", "assortativity", "clustering", "diameter"] {
        assert!(msg.contains(name), "{msg}");
    }
    err(&["analyze", "--in", p(&dir.path().join("missing.edges"))]);
}

#[test]
fn sweep_writes_csv_and_json_mirror() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let json = dir.path().join("s.json");
    ok(&[
        "sweep-assortativity", "--n-list", "100,200", "--m-list", "1,2", "--seeds", "2",
        "--out", p(&csv), "--json", p(&json),
    ]);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("model,n,m,replicate,seed,r_seed,r_densified"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let json_rows = v["rows"].as_array().unwrap();
    assert_eq!(json_rows.len(), 8);
    for (line, row) in rows.iter().zip(json_rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], row["n"].to_string());
        assert_eq!(fields[4], row["seed"].to_string());
        let r: f64 = fields[6].parse().unwrap();
        assert_eq!(r, row["r_densified"].as_f64().unwrap());
    }

    let csv2 = dir.path().join("s2.csv");
    ok(&["sweep-assortativity", "--n-list", "100,200", "--m-list", "1,2", "--seeds", "2", "--out", p(&csv2)]);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&csv2).unwrap());
}

#[test]
fn sweep_rejects_empty_m_list() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    err(&["sweep-assortativity", "--n-list", "100", "--m-list", "", "--out", p(&csv)]);
}

#[test]
fn scaling_study_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = ok(&["scaling-study", "--n-list", "300,600", "--m", "2", "--seeds", "2", "--out", p(&csv)]);
    assert!(out.contains("rows=4"));
    assert!(out.contains("slope="));

    let g = dir.path().join("g.edges");
    ok(&["generate", "--model", "ba", "--n", "3000", "--m", "3", "--seed", "1", "--out", p(&g)]);
    let fit = ok(&["fit", "--in", p(&g)]);
    assert!(fit.starts_with("gamma="), "{fit}");
}
