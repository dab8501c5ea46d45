use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn linarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linarr")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = linarr(args);
    let code = out.status.code().expect("exit code");
    (code, String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn file(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn lattice_reports_points_at_infinity() {
    let (code, out, _) = run(&["lattice", &file("B_inf.arr"), "--projective"]);
    assert_eq!(code, 0);
    assert!(out.contains("  inf: 4, 4\n"), "{out}");
    assert!(out.contains("betti: b1 = 9, b2 = 27"));

    let (code, out, _) = run(&["lattice", &file("B_inf.arr"), "--projective", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let on_inf = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["multiplicity"] == 4 && p["lines"].as_array().unwrap().iter().any(|l| l == "inf"))
        .count();
    assert_eq!(on_inf, 2);
}

#[test]
fn lattice_of_two_lines() {
    let (code, out, _) = run(&["lattice", &file("two-lines.arr")]);
    assert_eq!(code, 0);
    assert!(out.contains("(0, 0)  [L1 L2]  multiplicity 2"), "{out}");
    assert!(out.contains("betti: b1 = 2, b2 = 1"));
}

#[test]
fn parse_errors_exit_2() {
    let (code, _, err) = run(&["lattice", &file("malformed.arr")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 13") && err.contains('$'), "{err}");
    let (code, _, _) = run(&["lattice", &file("missing.arr")]);
    assert_eq!(code, 2);
}

#[test]
fn pi1_presentations() {
    let (code, out, _) = run(&["pi1", &file("pencil3.arr"), "--simplified", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    assert_eq!(v["relators"].as_array().unwrap().len(), 2);
    assert_eq!(v["abelianization"]["free_rank"], 3);

    let (code, out, _) = run(&["pi1", &file("A.arr"), "--simplified"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("generators (6):") && out.contains("relators (9):"), "{out}");

    let (code, out, _) = run(&["pi1", &file("two-lines.arr"), "--raw"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("generators (4):") && out.contains("relators (3):"), "{out}");
}

#[test]
fn complex_lines_are_domain_errors() {
    let (code, _, err) = run(&["pi1", &file("complex.arr"), "--simplified"]);
    assert_eq!(code, 3);
    assert!(err.contains("L2"), "{err}");
}

#[test]
fn compare_pi1() {
    let (code, out, _) = run(&["compare-pi1", &file("B_H1.arr"), &file("B_inf.arr")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("MATCH") && out.contains("g -> H1"), "{out}");

    let (code, out, _) = run(&["compare-pi1", &file("pencil3.arr"), &file("generic3.arr")]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NO-MATCH"), "{out}");
}

#[test]
fn verify_paper_example() {
    let (code, out, _) = run(&["verify", "--paper-example"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("9 generators, 27 relators"));
    assert!(out.contains("cones NOT isomorphic"));
    assert!(out.ends_with("PASS\n"));

    let (code, out, _) = run(&["verify", "--paper-example", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["main"]["g_image"], "H1");
    assert_eq!(v["main"]["witness_inf"], serde_json::json!(["inf"]));
}

#[test]
fn verify_all_lines() {
    let (code, out, _) =
        run(&["verify", "--arrangement", &file("A.arr"), "--line", "L1", "--mult", "4", "--all-lines", "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["arb"]["lemma"].as_array().unwrap().len(), 6);
    let pairs = v["arb"]["pairwise"].as_array().unwrap();
    assert_eq!(pairs.len(), 15);
    assert!(pairs.iter().all(|p| p["match"] == true));
}

#[test]
fn usage_errors_exit_64() {
    let (code, _, _) = run(&["verify", "--arrangement", &file("A.arr"), "--line", "L1", "--mult", "2"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&["pi1", &file("A.arr")]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&["verify", "--arrangement", &file("A.arr"), "--line", "nope", "--mult", "4"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn isotopy_check() {
    let (code, out, _) = run(&["isotopy-check", &file("g1-family.fam")]);
    assert_eq!(code, 0);
    assert_eq!(out, "constant across 6 samples\n");

    let (code, out, _) = run(&["isotopy-check", &file("degenerate.fam"), "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness"]["t"], "1/2");
}

#[test]
fn build_round_trips_through_compare() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("B.arr");
    let out_s = out.to_str().unwrap();
    let (code, _, _) = run(&["build", "--pencil", &file("A.arr"), "--line", "L1", "--mult", "4", "-o", out_s]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("C1: factor 3x+y+1\nC2: factor 4x+y+1\nC3: factor 5x+y+1\n"), "{text}");

    let (code, out, _) = run(&["compare-pi1", out_s, &file("B_inf.arr")]);
    assert_eq!(code, 0, "{out}");

    let (code, text, _) = run(&["build", "--parallel", &file("A.arr"), "--mult", "4"]);
    assert_eq!(code, 0);
    assert!(text.contains("D1: factor 3x+y+3\n"), "{text}");
}

#[test]
fn svg_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.svg");
    let (code, _, _) = run(&["svg", &file("B_inf.arr"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches(r#"class="arrangement-line""#).count(), 9);
    assert_eq!(svg.matches(r#"data-multiplicity="3""#).count(), 3);
}
