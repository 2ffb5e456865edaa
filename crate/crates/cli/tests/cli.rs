use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn novikov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(args)
        .env_remove("NOVIKOV_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const FAMILY_TWO: &str = r#"{"dim": 2, "products": [{"left": 1, "right": 2, "terms": [[2, "1"]]}]}"#;

#[test]
fn check_family_two_passes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f2.json", FAMILY_TWO);
    let out = novikov(&["check", "--input", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "left-symmetric: true\nfermionic: true\nnovikov: true\n");
}

#[test]
fn check_idempotent_unit_fails_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unit.json", r#"{"dim": 1, "products": [{"left": 1, "right": 1, "terms": [[1, "1"]]}]}"#);
    let out = novikov(&["check", "--input", p(&f), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["fermionic"], false);
    assert_eq!(report["left_symmetric"], true);
}

#[test]
fn input_errors_exit_two_with_distinct_kinds() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("{\"dim\": 2,\n  \"products\": [", "error[syntax]: syntax error at line 2"),
        (r#"{"dim": 2, "products": [{"left": 1, "right": 1, "terms": [[2, "1/0"]]}]}"#, "error[zero-denominator]"),
        (r#"{"dim": 2, "products": [{"left": 1, "right": 1, "terms": [[3, "1"]]}]}"#, "error[index-out-of-range]"),
        (r#"{"dim": 2, "products": [], "form": [["1", "2"], ["3", "1"]]}"#, "error[non-symmetric-form]"),
        (r#"{"dim": 2, "products": [{"left": 1, "right": 1, "terms": [[2, "x"]]}]}"#, "error[invalid-rational]"),
        (r#"{"dim": "2", "products": []}"#, "error[schema]"),
    ];
    for (i, (text, expected)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("bad{i}.json"), text);
        let out = novikov(&["check", "--input", p(&f)]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(stderr(&out).starts_with(expected), "{text}: {}", stderr(&out));
    }
    let out = novikov(&["check", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[read]"));
}

#[test]
fn degenerate_form_is_its_own_error() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "degenerate.json",
        r#"{"dim": 2, "products": [{"left": 1, "right": 1, "terms": [[2, "1"]]}], "form": [["1", "0"], ["0", "0"]]}"#,
    );
    let out = novikov(&["canon", "--input", p(&f), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[degenerate-form]"));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["error"]["kind"], "degenerate-form");
}

#[test]
fn non_invariant_form_is_a_property_failure() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "identity.json",
        r#"{"dim": 2, "products": [{"left": 1, "right": 1, "terms": [[2, "1"]]}], "form": [["1", "0"], ["0", "1"]]}"#,
    );
    let out = novikov(&["canon", "--input", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "form is not invariant\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(novikov(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(novikov(&["check"]).status.code(), Some(2));
    assert_eq!(novikov(&["gen", "--variant", "9", "--dim", "3"]).status.code(), Some(2));
    assert_eq!(novikov(&["gen", "--variant", "3", "--dim", "2"]).status.code(), Some(2));
    assert_eq!(novikov(&["gen", "--variant", "k2", "--dim", "4"]).status.code(), Some(2));
    assert_eq!(novikov(&["--help"]).status.code(), Some(0));
}

#[test]
fn gen_scramble_classify_round_trip() {
    let dir = TempDir::new().unwrap();
    for variant in ["1", "2", "3"] {
        let base = dir.path().join(format!("f{variant}.json"));
        let moved = dir.path().join(format!("f{variant}s.json"));
        let out = novikov(&["gen", "--variant", variant, "--dim", "5", "--output", p(&base)]);
        assert_eq!(out.status.code(), Some(0));
        let out = novikov(&["scramble", "--input", p(&base), "--seed", "3", "--output", p(&moved)]);
        assert_eq!(out.status.code(), Some(0));
        for file in [&base, &moved] {
            let out = novikov(&["classify", "--input", p(file)]);
            assert_eq!(out.status.code(), Some(0));
            assert_eq!(stdout(&out), format!("k: 1\nclass: variant {variant}\n"));
            let out = novikov(&["canon", "--input", p(file)]);
            assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        }
    }
}

#[test]
fn classify_reports_k_zero_and_k_two() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.json", r#"{"dim": 3, "products": []}"#);
    assert_eq!(stdout(&novikov(&["classify", "--input", p(&zero)])), "k: 0\nclass: k=0\n");
    let k2 = dir.path().join("k2.json");
    novikov(&["gen", "--variant", "k2", "--dim", "6", "--seed", "4", "--output", p(&k2)]);
    let out = novikov(&["classify", "--input", p(&k2), "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["class"], "k>=2");
    assert_eq!(report["k2_condition"], true);
}

#[test]
fn forms_reports_space_dimension() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f1.json", r#"{"dim": 2, "products": [{"left": 1, "right": 1, "terms": [[2, "1"]]}]}"#);
    let out = novikov(&["forms", "--input", p(&f), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["space_dimension"], 2);
    assert_eq!(report["form_type"], serde_json::json!([1, 1]));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("k2.json");
    novikov(&["gen", "--variant", "k2", "--dim", "5", "--seed", "8", "--output", p(&f)]);
    for args in [
        vec!["verify", "--seed", "7", "--count", "6", "--json"],
        vec!["canon", "--input", p(&f), "--seed", "2", "--json"],
        vec!["forms", "--input", p(&f), "--json"],
    ] {
        let a = novikov(&args);
        let b = novikov(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert!(!stdout(&a).contains("time"));
    }
}

#[test]
fn seed_comes_from_environment_unless_given() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_novikov"));
        c.args(args).env_remove("NOVIKOV_SEED");
        if let Some(v) = env {
            c.env("NOVIKOV_SEED", v);
        }
        c.output().unwrap().stdout
    };
    let base = ["gen", "--variant", "k2", "--dim", "6"];
    let with = |s: &'static str| [&base[..], &["--seed", s]].concat();
    assert_eq!(run(Some("5"), &base), run(None, &with("5")));
    assert_eq!(run(Some("5"), &with("6")), run(None, &with("6")));
    assert_ne!(run(None, &with("5")), run(None, &with("6")));
}

#[test]
fn verify_small_corpus() {
    let out = novikov(&["verify", "--seed", "7", "--count", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.ends_with("8/8 pass\n"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(["check", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(FAMILY_TWO.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
