use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn fixture() -> String {
    tests_dir()
        .join("fixtures/workspace.cmp")
        .display()
        .to_string()
}

fn compalg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_compalg"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(tests_dir().join("golden").join(name)).unwrap()
}

/// Writes a workspace plus assignment file into a scratch directory.
fn scratch(name: &str, dsl: &str, json: &str) -> String {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("a.json"), json).unwrap();
    std::fs::write(dir.join("w.cmp"), dsl).unwrap();
    dir.join("w.cmp").display().to_string()
}

const TWO: &str = "elements GN = {n1, n2}
elements GM = {m1, m2}
measurement N over GN = {{n1}, {n2}}
measurement M over GM = {{m1}, {m2}}
sequence s = [N, M]
path p over s = [{n1}, {m1}]
";

#[test]
fn verify_algebra_golden() {
    let (code, out, _) = compalg(&["verify-algebra", "O"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("verify_algebra_O.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["checks"]["associativity"], false);
    assert_eq!(v["checks"]["composition"], true);
    assert!(v["witnesses"]["associativity"]
        .as_str()
        .unwrap()
        .contains(" but "));
}

#[test]
fn classify_golden() {
    let (code, out, _) = compalg(&["-w", &fixture(), "classify", "loop"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("classify_loop.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["cyclic"].as_bool(), v["symmetric"].as_bool()),
        (Some(true), Some(false))
    );
}

#[test]
fn enumerate_golden() {
    let (code, out, _) = compalg(&[
        "-w",
        &fixture(),
        "enumerate",
        "partitions",
        "G3",
        "--count-only",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("enumerate_partitions_G3.txt"));
    assert_eq!(out.trim(), "5");
}

#[test]
fn path_operations() {
    let w = fixture();
    let (_, out, _) = compalg(&["-w", &w, "--format", "text", "reverse", "loop"]);
    assert_eq!(out, "[N{n1}, delta{m'}, O{o1}, alpha{m'}, N{n1}]\n");
    let (_, out, _) = compalg(&["-w", &w, "--format", "text", "factorize", "loop"]);
    assert_eq!(out.lines().count(), 3);
    let (_, out, _) = compalg(&["-w", &w, "igps", "B"]);
    assert_eq!(out, "{\"igps\":[[0,1],[2,3]]}\n");
    let (_, out, _) = compalg(&["-w", &w, "--format", "text", "normalize", "A"]);
    assert_eq!(out, "[alpha{m'}, alpha{m'}]\n");
    let (_, out, _) = compalg(&["-w", &w, "enumerate", "paths", "repeat", "--count-only"]);
    assert_eq!(out, "36\n");
}

#[test]
fn probabilities() {
    let w = fixture();
    let (code, out, _) = compalg(&["-w", &w, "prob", "heads", "--assignment", "u"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"path\":\"[N{n1}, M{m1}]\",\"algebra\":\"C\",\"amplitude\":[\"1/2\",\"1/2\"],\"probability\":\"1/2\"}\n");
    let (_, out, _) = compalg(&[
        "-w",
        &w,
        "--format",
        "text",
        "prob",
        "B",
        "--assignment",
        "u",
    ]);
    assert!(out.ends_with("probability: 0\n"), "{out}");
    let (code, out, _) = compalg(&[
        "-w",
        &w,
        "--format",
        "text",
        "sum-rule",
        "coin",
        "--assignment",
        "u",
        "--source",
        "{n2}",
    ]);
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn sampling_is_stable_across_workers() {
    let w = fixture();
    let base = [
        "-w",
        w.as_str(),
        "sample",
        "coin",
        "--assignment",
        "u",
        "--source",
        "n1",
        "-n",
        "100000",
        "--seed",
        "5",
    ];
    let (code, one, _) = compalg(&[&base[..], &["--workers", "1"]].concat());
    assert_eq!(code, 0);
    let (_, four, _) = compalg(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one, four);
    let mut rdr = csv::Reader::from_reader(one.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    let total: u64 = rows.iter().map(|r| r[1].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 100_000);
    assert!(rows.iter().all(|r| &r[2] == "1/2"));
}

#[test]
fn exit_codes() {
    let w = fixture();
    // 1: usage, parse and unknown names.
    assert_eq!(compalg(&["frobnicate"]).0, 1);
    assert_eq!(compalg(&["-w", &w, "classify", "nowhere"]).0, 1);
    assert_eq!(compalg(&["verify-algebra", "Q"]).0, 1);
    let bad = scratch(
        "parse",
        "elements G = {a}\nmeasurement M over G = {{b}}\n",
        "{}",
    );
    let (code, _, err) = compalg(&["-w", &bad, "classify", "p"]);
    assert_eq!(code, 1);
    assert!(err.contains("w.cmp:2:26-27: semantic error"), "{err}");

    // 2: operation errors.
    let (code, out, err) = compalg(&["-w", &w, "chain", "loop", "A"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("chain mismatch"), "{err}");
    assert_eq!(compalg(&["-w", &w, "normalize", "B"]).0, 2);
    assert_eq!(compalg(&["-w", &w, "refine", "A", "B"]).0, 2);

    // 3: validation.
    let heavy = r#"{"algebra":"R","steps":[{"from":"N","to":"M","matrix":[[[1],[1]],[[0],[1]]]}]}"#;
    let dsl = format!("{TWO}assignment a over s algebra R from \"a.json\"\n");
    let ws = scratch("heavy", &dsl, heavy);
    let (code, out, _) = compalg(&["-w", &ws, "validate", "s", "--assignment", "a"]);
    assert_eq!(code, 3);
    assert!(out.contains("row_not_normalized"));
    assert_eq!(
        compalg(&[
            "-w",
            &ws,
            "sum-rule",
            "s",
            "--assignment",
            "a",
            "--source",
            "n1"
        ])
        .0,
        3
    );

    let split = r#"{"algebra":"C'","steps":[{"from":"N","to":"M","matrix":[[[1,0],[1,0]],[[0,1],[1,0]]]}]}"#;
    let dsl = format!("{TWO}assignment a over s algebra SplitC from \"a.json\"\n");
    let ws = scratch("split", &dsl, split);
    let (code, _, err) = compalg(&[
        "-w",
        &ws,
        "sample",
        "s",
        "--assignment",
        "a",
        "--source",
        "n1",
        "-n",
        "10",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("not a distribution"), "{err}");
}
