use std::path::Path;
use std::process::{Command, Output};

fn monodec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn list_names_families() {
    let out = monodec(&["catalog", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["G1", "G10", "chain2", "ordered_two_layer"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn emitted_structure_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = monodec(&["catalog", "emit", "--family", "G2", "--size", "5", "--out", path(&a)]);
    assert!(out.status.success());
    let parsed = monodec::Structure::from_json(&std::fs::read_to_string(&a).unwrap()).unwrap();
    std::fs::write(&b, format!("{}\n", parsed.to_json())).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn decompose_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g1.json");
    monodec(&["catalog", "emit", "--family", "G1", "--size", "4", "--out", path(&f)]);
    let out = monodec(&["decompose", "--in", path(&f)]);
    assert!(out.status.success());
    let p: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(p["blocks"].as_array().unwrap().len(), 4);
    let oracle = monodec(&["decompose", "--in", path(&f), "--oracle"]);
    assert_eq!(out.stdout, oracle.stdout);
}

#[test]
fn profile_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.json");
    let csv = dir.path().join("c.csv");
    monodec(&["catalog", "emit", "--family", "chain2", "--size", "24", "--out", path(&f)]);
    let out = monodec(&["profile", "--in", path(&f), "--nmax", "9", "--csv", path(&csv)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("n,phi"));
    assert_eq!(text.lines().last(), Some("9,10"));
    let out = monodec(&["classify", "--csv", path(&csv)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "quasi_polynomial");
    assert_eq!(v["degree"], 1);
    assert_eq!(v["period"], 1);
}

#[test]
fn bounds_of_matching() {
    let out = monodec(&["bounds", "--family", "G1", "--size", "8", "--nmax", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "graph");
    let sizes: Vec<u64> = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [3, 3]);
}

#[test]
fn witness_and_extract_on_ordered_matching() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.json");
    monodec(&["catalog", "emit", "--family", "ordered_two_layer", "--size", "6", "--out", path(&f)]);
    let out = monodec(&["witness", "--in", path(&f), "--target", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witness"]["kind"], "single");
    assert!(v["transcript"].as_array().unwrap().iter().all(|l| l.as_str().unwrap().ends_with("ok")));

    let out = monodec(&["extract", "--in", path(&f), "--target", "4", "--extend", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["extension"]["n"], 14);
}

#[test]
fn exit_codes_follow_error_class() {
    assert_eq!(monodec(&["catalog", "emit", "--family", "nope", "--size", "3"]).status.code(), Some(1));
    assert_eq!(monodec(&["decompose"]).status.code(), Some(1));
    assert_eq!(monodec(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.json");
    monodec(&["catalog", "emit", "--family", "ordered_two_layer", "--size", "4", "--out", path(&f)]);
    assert_eq!(monodec(&["extract", "--in", path(&f), "--target", "30"]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"signature\":[2],\"n\":2,\"ordered\":false,\"relations\":[[[0,5]]]}").unwrap();
    assert_eq!(monodec(&["decompose", "--in", path(&bad)]).status.code(), Some(1));
}

#[test]
fn random_is_seeded() {
    let a = monodec(&["catalog", "random", "--n", "7", "--seed", "9", "--ordered"]);
    let b = monodec(&["catalog", "random", "--n", "7", "--seed", "9", "--ordered"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_writes_csv() {
    let out = monodec(&["sweep", "--family", "G1", "--sizes", "3..4", "--nmax", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,k,n,phi,components");
    assert_eq!(lines.len(), 1 + 4 + 4);
    assert!(lines.contains(&"G1,4,3,2,4"));
}

#[test]
fn verify_table() {
    let out = monodec(&["verify", "--suite", "lemma4", "--samples", "10", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lemma4") && text.contains("pass"));
}
