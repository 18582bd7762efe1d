//! Runs the built binary. Outputs are compared byte for byte with the files
//! in `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite them. Every golden
//! comparison is paired with direct assertions on the values that matter.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_jordan-workbench"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str, text: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(
        expected == text,
        "output differs from {}:\n{text}",
        path.display()
    );
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.join(name);
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", p.to_str().unwrap()]);
    let r = run(&all);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    p
}

#[test]
fn construct_catalog_entries() {
    let r = run(&["construct", "--form", "d", "--N", "5"]);
    assert_eq!(r.code, 0);
    golden("construct_d5.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["ambient"], serde_json::json!([8, 8]));
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);

    let r = run(&["construct", "--form", "a", "--r", "1"]);
    golden("construct_a1.json", &r.stdout);
    assert_eq!(
        json(&r.stdout)["basis"][0]["entries"],
        serde_json::json!([["1"]])
    );

    let r = run(&[
        "construct",
        "--form",
        "e",
        "--N",
        "6",
        "--s1",
        "1",
        "--s2",
        "1",
    ]);
    assert_eq!(r.code, 0);
    golden("construct_e6.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["ambient"], serde_json::json!([16, 16]));
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
}

#[test]
fn construct_from_label_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let label = write(dir.path(), "label.json", r#"{"form":"b","r":2}"#);
    let a = run(&["construct", "--label", label.to_str().unwrap()]);
    let b = run(&[
        "construct",
        "--form",
        "b",
        "--r",
        "2",
        "--multiplicity",
        "1",
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scrambled_construction_is_seeded_and_classifies_back() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["construct", "--form", "d", "--N", "5", "--seed", "4"]);
    let b = run(&["construct", "--form", "d", "--N", "5", "--seed", "4"]);
    let c = run(&["construct", "--form", "d", "--N", "5", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let p = write(dir.path(), "scrambled.json", &a.stdout);
    for engine in ["modular", "exact"] {
        let r = run(&[
            "classify",
            "--algebra",
            p.to_str().unwrap(),
            "--engine",
            engine,
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let v = json(&r.stdout);
        assert_eq!(v["components"][0]["labels"][0]["name"], "d(N=5, k=1)");
        assert_eq!(v["complete"], false);
    }
}

#[test]
fn analyze_spin_factor() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "s5.json", &["--form", "d", "--N", "5"]);
    let r = run(&[
        "analyze",
        "--algebra",
        p.to_str().unwrap(),
        "--mults",
        "classical",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    golden("analyze_d5.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["closed"], true);
    assert_eq!(v["complete"], false);
    assert_eq!(v["completionDim"], 6);
    assert_eq!(v["chains"]["3-chain"]["ok"], true);
    assert_eq!(v["chains"]["4-chain"]["ok"], false);
    assert_eq!(
        v["classification"]["components"][0]["completeByCriterion"],
        false
    );
}

#[test]
fn analyze_symmetric_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "sym3.json", &["--form", "a", "--r", "3"]);
    let r = run(&["analyze", "--algebra", p.to_str().unwrap()]);
    golden("analyze_a3.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["complete"], true);
    assert_eq!(v["completionDim"], 6);
    assert!(v.get("completion").is_none());
}

const DIAG: &str = r#"{"ambient":[2,2],"ring":"real","basis":[{"rows":2,"cols":2,"ring":"real","entries":[["1","0"],["0","-1"]]}]}"#;

#[test]
fn analyze_reports_a_closure_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "diag.json", DIAG);
    let r = run(&["analyze", "--algebra", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    golden("analyze_not_closed.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["closed"], false);
    assert_eq!(v["violation"]["xIndex"], 0);
    assert_eq!(
        v["violation"]["product"]["entries"],
        serde_json::json!([["1", "0"], ["0", "1"]])
    );
    // Classification needs a Jordan algebra.
    let r = run(&["classify", "--algebra", p.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("precondition"), "{}", r.stderr);
}

#[test]
fn analyze_with_a_multiplication_file() {
    let dir = tempfile::tempdir().unwrap();
    // Diagonal 2×2 matrices with 𝒜 = span{diag(1, −1)}: closed and complete.
    let pi = write(
        dir.path(),
        "diag2.json",
        r#"{"ambient":[2,2],"ring":"real","basis":[
            {"rows":2,"cols":2,"ring":"real","entries":[["1","0"],["0","0"]]},
            {"rows":2,"cols":2,"ring":"real","entries":[["0","0"],["0","1"]]}]}"#,
    );
    let mults = write(dir.path(), "mults.json", DIAG);
    let r = run(&[
        "analyze",
        "--algebra",
        pi.to_str().unwrap(),
        "--mults",
        mults.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["classical"], false);
    assert_eq!(v["complete"], true);
    assert!(v.get("classification").is_none());
    let r = run(&[
        "chains",
        "--algebra",
        pi.to_str().unwrap(),
        "--mults",
        mults.to_str().unwrap(),
        "--length",
        "3",
    ]);
    let v = json(&r.stdout);
    assert_eq!(v["3-chain"]["ok"], true);
    assert!(v.get("4-chain").is_none());
}

#[test]
fn chains_report_witness_indices() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "s5.json", &["--form", "d", "--N", "5"]);
    let r = run(&["chains", "--algebra", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    golden("chains_d5.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["4-chain"]["ok"], false);
    assert_eq!(
        v["4-chain"]["witness"]["kIndices"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
}

#[test]
fn counterexample_scenario() {
    let r = run(&["counterexample"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    golden("counterexample.txt", &r.stdout);
    assert!(r.stdout.contains("14/14 checks passed"));

    let r = run(&["counterexample", "--json"]);
    assert_eq!(r.code, 0);
    golden("counterexample.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["exitCode"], 0);
    let witness = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"].as_str().unwrap().starts_with("3-chain witness"))
        .unwrap();
    assert_eq!(
        witness["detail"]["value"]["entries"][0][0],
        serde_json::json!({"re": "2", "im": "0"})
    );
    assert_eq!(witness["detail"]["c"], "i");

    // A reshuffled basis gives the same verdicts.
    let plain: Vec<(Value, Value)> = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["check"].clone(), c["pass"].clone()))
        .collect();
    for seed in ["1", "7"] {
        let s = json(&run(&["counterexample", "--json", "--seed", seed]).stdout);
        let seeded: Vec<(Value, Value)> = s["verdicts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["check"].clone(), c["pass"].clone()))
            .collect();
        assert_eq!(seeded, plain);
    }
}

#[test]
fn counterexample_pair_file_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("pair.json");
    let r = run(&["counterexample", "--out", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    golden(
        "counterexample_pair.json",
        &std::fs::read_to_string(&p).unwrap(),
    );
    let r = run(&["analyze", "--algebra", p.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["twoD"]["closed"], true);
    assert_eq!(v["twoD"]["3-chain"], false);
    assert_eq!(v["twoD"]["dims"], serde_json::json!([3, 2]));
    assert_eq!(v["closed"], true);
    assert_eq!(v["complete"], false);
    assert_eq!(v["completionDim"], 6);
    assert_eq!(v["chains"]["3-chain"]["ok"], false);
}

#[test]
fn eckmann_reports() {
    let r = run(&["eckmann", "--p", "9"]);
    assert_eq!(r.code, 0);
    golden("eckmann_9.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(v["d"], 16);
    assert_eq!(v["relations"]["ok"], true);
    assert_eq!(v["classes"], 257);
    assert_eq!(v["fs"], 1);
    assert_eq!(v["type"], "real");

    let plus = json(&run(&["eckmann", "--p", "8", "--variant", "plus"]).stdout);
    let minus = json(&run(&["eckmann", "--p", "8", "--variant", "minus"]).stdout);
    assert_eq!(plus["productSign"], 1);
    assert_eq!(minus["productSign"], -1);
    assert_eq!(plus["relations"]["ok"], true);
    assert_eq!(minus["relations"]["ok"], true);

    let r = run(&["eckmann", "--p", "6"]);
    golden("eckmann_6.json", &r.stdout);
    let v = json(&r.stdout);
    assert_eq!(
        (
            v["fs"].clone(),
            v["commutantDim"].clone(),
            v["type"].clone()
        ),
        (0.into(), 2.into(), "complex".into())
    );
}

#[test]
fn so3_scenario() {
    let r = run(&["so3", "--json"]);
    assert_eq!(r.code, 0);
    golden("so3.json", &r.stdout);
    assert!(json(&r.stdout)["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn usage_and_input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<String>, &str)> = vec![
        (
            vec![
                "construct".into(),
                "--form".into(),
                "d".into(),
                "--N".into(),
                "6".into(),
            ],
            "form d needs N",
        ),
        (
            vec!["construct".into(), "--form".into(), "q".into()],
            "unknown form",
        ),
        (vec!["construct".into()], "--form"),
        (vec!["eckmann".into(), "--p".into(), "13".into()], "2..=12"),
        (
            vec!["eckmann".into(), "--p".into(), "8".into()],
            "--variant",
        ),
        (
            vec![
                "eckmann".into(),
                "--p".into(),
                "5".into(),
                "--variant".into(),
                "plus".into(),
            ],
            "not valid",
        ),
        (vec!["frobnicate".into()], "unrecognized"),
    ];
    let bad_syntax = write(
        dir.path(),
        "bad.json",
        "{\n  \"ambient\": [2, 2],\n  \"ring\": real\n}",
    );
    let bad_entry = write(
        dir.path(),
        "entry.json",
        r#"{"ambient":[1,1],"ring":"real","basis":[{"rows":1,"cols":1,"ring":"real","entries":[["1/0"]]}]}"#,
    );
    let bad_shape = write(
        dir.path(),
        "shape.json",
        r#"{"ambient":[2,2],"ring":"real","basis":[{"rows":1,"cols":1,"ring":"real","entries":[["1"]]}]}"#,
    );
    let missing = dir.path().join("missing.json");
    let mut cases = cases;
    cases.push((
        vec![
            "analyze".into(),
            "--algebra".into(),
            bad_syntax.display().to_string(),
        ],
        "line 3",
    ));
    cases.push((
        vec![
            "analyze".into(),
            "--algebra".into(),
            bad_entry.display().to_string(),
        ],
        "basis[0].entries[0][0]",
    ));
    cases.push((
        vec![
            "analyze".into(),
            "--algebra".into(),
            bad_shape.display().to_string(),
        ],
        "ambient is 2x2",
    ));
    cases.push((
        vec![
            "analyze".into(),
            "--algebra".into(),
            missing.display().to_string(),
        ],
        "missing.json",
    ));
    cases.push((
        vec![
            "chains".into(),
            "--algebra".into(),
            bad_shape.display().to_string(),
            "--length".into(),
            "5".into(),
        ],
        "3 or 4",
    ));
    for (args, needle) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(r.stderr.contains(needle), "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
}
