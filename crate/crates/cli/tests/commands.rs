use std::fs;
use std::process::{Command, Output};

fn permcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcode")).args(args).arg("-q").output().unwrap()
}

fn out(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.code", "n=4 d=3 s=2\n1 2 3 4\n2 3 4 1\n");
    let b = write(&dir, "b.code", "n=4 d=3 s=2\n1 2 3 4\n2 1 4 3\n");
    let bad = write(&dir, "bad.code", "n=4 d=3 s=2\n1 2 3 4\n1 2 4 3\n");
    assert_eq!(permcode(&["isometric", &a, &a]).status.code(), Some(0));
    assert_eq!(permcode(&["isometric", &a, &b, "--oracle"]).status.code(), Some(1));
    assert_eq!(permcode(&["isometric", &a, &bad]).status.code(), Some(2));
    assert_eq!(permcode(&["mu", "-n", "4"]).status.code(), Some(2));
    assert_eq!(permcode(&["enumerate", "-n", "4", "-d", "5"]).status.code(), Some(2));
    let capped = dir.path().join("capped");
    let o = permcode(&["enumerate", "-n", "5", "-d", "4", "--max-nodes", "10", "--out", capped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let manifest = fs::read_to_string(capped.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"aborted\""));
}

#[test]
fn isometric_prints_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.code", "n=4 d=3 s=2\n1 2 3 4\n2 3 4 1\n");
    let same = out(&permcode(&["isometric", &a, &a]));
    assert_eq!(same.trim(), "isometric: alpha=1 2 3 4; beta=1 2 3 4; inv=0");
}

#[test]
fn canon_agrees_on_isometric_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.code", "n=5 d=4 s=3\n1 2 3 4 5\n2 3 4 5 1\n3 1 2 5 4\n");
    // symbols renamed by (1 2), then every row inverted
    let b = write(&dir, "b.code", "# renamed\nn=5 d=4 s=3\n2 1 3 4 5\n1 5 2 3 4\n3 2 1 5 4\n");
    let first_line = |f: &str| out(&permcode(&["canon", f])).lines().next().unwrap().to_string();
    assert!(first_line(&a).starts_with("certificate: 01"));
    assert_eq!(first_line(&a), first_line(&b));
}

#[test]
fn orbit_search_rebuilds_the_size_20_code() {
    let o = permcode(&[
        "orbit-search",
        "-n",
        "5",
        "-d",
        "4",
        "--gens",
        "(2 3 4 5 1)",
        "--mode",
        "left",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 20);
    assert_eq!(v["admissible"], 24);
}

#[test]
fn enumerate_reports_and_formats() {
    let text = out(&permcode(&["enumerate", "-n", "4", "-d", "3", "--alg", "canaug"]));
    assert!(text.starts_with("classes: 62, maximal: 4\n"));
    let csv =
        out(&permcode(&["enumerate", "-n", "4", "-d", "3", "--alg", "list", "--maximal-only", "--format", "csv"]));
    assert_eq!(csv, "size,count\n4,1\n5,1\n7,1\n12,1\n");
    let dir = tempfile::tempdir().unwrap();
    let klein = write(&dir, "k.code", "n=4 d=4 s=4\n1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n");
    let inv = out(&permcode(&["invariants", "--format", "json", &klein]));
    let v: serde_json::Value = serde_json::from_str(&inv).unwrap();
    assert_eq!(v["balanced_r"], 1);
    assert_eq!(v["distance_enumerator"], serde_json::json!([4, 0, 0, 0, 12]));
}
