use std::path::Path;
use std::process::Command;

use twist_cli::formats::{self, Source};
use twist_core::algebra::GroupAlgebra;
use twist_core::groups::library::abelian;
use twist_core::scalars::Field;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hopf-twist").chain(args.iter().copied());
    let code = twist_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

const PAULI: &str = r#"format = "hopf-twist.rep/1"
field = "Q(z_1)"
dim = 2

[group]
name = "V4"
labels = ["e", "a", "b", "ab"]
table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]

[[matrix]]
element = "e"
rows = [["1", "0"], ["0", "1"]]

[[matrix]]
element = "a"
rows = [["0", "1"], ["1", "0"]]

[[matrix]]
element = "b"
rows = [["1", "0"], ["0", "-1"]]

[[matrix]]
element = "ab"
rows = [["0", "-1"], ["1", "0"]]
"#;

#[test]
fn cocycle_pipeline_builds_and_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let (c, j) = (p(dir.path(), "c.toml"), p(dir.path(), "j.toml"));
    assert_eq!(run(&["find-1cocycles", "--G", "V4", "--A", "2,2", "--pick", "0", "--out", &c]).0, 0);
    assert_eq!(run(&["build-twist", "--from-1cocycle", &c, "--out", &j]).0, 0);
    let (code, out, _) = run(&["verify-twist", "--twist", &j]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("format = \"hopf-twist.report/1\""));
    for cmd in ["r-matrix", "drinfeld", "minimal", "movshev"] {
        assert_eq!(run(&[cmd, "--twist", &j]).0, 0, "{cmd}");
    }
    assert_eq!(run(&["verify-eq2345", &c]).0, 0);
    assert_eq!(run(&["--field", "fp:13", "verify-twist", "--twist", &j]).0, 0);
}

#[test]
fn projective_rep_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (rep, j) = (p(dir.path(), "pauli.toml"), p(dir.path(), "j.toml"));
    std::fs::write(&rep, PAULI).unwrap();
    assert_eq!(run(&["build-twist", "--from-rep", &rep, "--out", &j]).0, 0);
    let (code, out, _) = run(&["match-rep", "--twist", &j, "--rep", &rep]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("end_v.bijective"));
    let (code, out, _) = run(&["movshev", "--grouplikes", "--twist", &j]);
    assert_eq!(code, 0);
    let report = formats::read_report(&Source::from_text("out", &out)).unwrap();
    assert!(report.passed());
    assert!(out.contains("value = \"4\""));
}

#[test]
fn identity_twist_trivializes_and_symmetric_precondition_holds() {
    let dir = tempfile::tempdir().unwrap();
    let j = p(dir.path(), "one.toml");
    let alg = GroupAlgebra::new(abelian(&[2, 2]), Field::rationals());
    std::fs::write(&j, formats::write_tensor(&alg, &alg.unit(2)).unwrap()).unwrap();
    let (code, out, _) = run(&["trivialize", "--twist", &j]);
    assert_eq!(code, 0, "{out}");
    let x = formats::read_tensor(&Source::from_text("x", &out), None).unwrap();
    assert_eq!(x.legs, 1);

    let (c, k) = (p(dir.path(), "c.toml"), p(dir.path(), "k.toml"));
    run(&["find-1cocycles", "--G", "V4", "--A", "2,2", "--pick", "0", "--out", &c]);
    run(&["build-twist", "--from-1cocycle", &c, "--out", &k]);
    let (code, _, err) = run(&["trivialize", "--twist", &k]);
    assert_eq!(code, 2);
    assert!(err.contains("not symmetric"), "{err}");
}

#[test]
fn classify_order_two_has_two_rows() {
    let (code, out, _) = run(&["classify", "--order", "2"]);
    assert_eq!(code, 0);
    let doc: toml::Value = toml::from_str(&out).unwrap();
    assert_eq!(doc["format"].as_str(), Some(formats::CLASSIFY));
    assert_eq!(doc["row"].as_array().unwrap().len(), 2);
}

#[test]
fn catalog_lists_groups() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    let doc: toml::Value = toml::from_str(&out).unwrap();
    let groups = doc["group"].as_array().unwrap();
    assert!(groups.iter().any(|g| g["name"].as_str() == Some("S3")));
    assert!(groups.iter().all(|g| g["order"].as_integer().unwrap() <= 32));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let rep = p(dir.path(), "pauli.toml");
    std::fs::write(&rep, PAULI).unwrap();
    let a = run(&["--seed", "7", "build-twist", "--from-rep", &rep]).1;
    let b = run(&["--seed", "7", "build-twist", "--from-rep", &rep]).1;
    assert_eq!(a, b);
    let a = run(&["classify", "--order", "4", "--dedup"]).1;
    let b = run(&["classify", "--order", "4", "--dedup"]).1;
    assert_eq!(a, b);
}

#[test]
fn written_twist_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (c, j) = (p(dir.path(), "c.toml"), p(dir.path(), "j.toml"));
    run(&["find-1cocycles", "--G", "Z4", "--A", "4", "--pick", "0", "--out", &c]);
    assert_eq!(run(&["build-twist", "--from-1cocycle", &c, "--out", &j]).0, 0);
    let text = std::fs::read_to_string(&j).unwrap();
    let data = formats::read_tensor(&Source::from_text("j", &text), None).unwrap();
    let again = formats::write_tensor(&data.algebra, &data.tensor).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(again.trim_end(), body.trim_end());
}

#[test]
fn errors_exit_with_two() {
    let (code, _, err) = run(&["verify-twist", "--twist", "/nonexistent/j.toml"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["find-1cocycles", "--G", "nosuch", "--A", "2"]).0, 2);
}

#[test]
fn binary_writes_summary_when_out_is_given() {
    let dir = tempfile::tempdir().unwrap();
    let c = p(dir.path(), "c.toml");
    let out = Command::new(env!("CARGO_BIN_EXE_hopf-twist"))
        .args(["find-1cocycles", "--G", "Z2", "--A", "2", "--pick", "0", "--out", &c])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("find_1cocycles: PASS"), "{stdout}");
    assert!(std::fs::read_to_string(&c).unwrap().starts_with("format = \"hopf-twist.cocycle1/1\""));
}
