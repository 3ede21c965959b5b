use std::process::{Command, Output};

use gt_core::word::{loops_from_json, tensor_from_json, wedge_from_json, CombJson, TensorJson, WedgeJson};
use gt_core::{GroupWord, LoopCombo};

fn gt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gt")).args(args).output().expect("gt runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn ok(args: &[&str]) -> String {
    let o = gt(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn graded_bracket_example() {
    assert_eq!(ok(&["-p", "3", "bracket", "graded", "x1 x2^2", "x2 x3^2"]), "|x1 x2^2 x3^2| - |x1 x3^2 x2^2|");
}

#[test]
fn disjoint_petals_have_zero_bracket() {
    assert_eq!(ok(&["-p", "2", "bracket", "geometric", "g1", "g2"]), "0");
    assert_eq!(ok(&["-p", "2", "bracket", "skein", "g1", "g2"]), "0");
}

#[test]
fn skein_and_geometric_brackets_print_the_same_terms() {
    let args = |m| ["-p", "2", "bracket", m, "g1 g2^-1", "g1^2 g2"];
    assert_eq!(ok(&args("geometric")), ok(&args("skein")));
    assert_ne!(ok(&args("geometric")), "0");
}

#[test]
fn skein_mu_differs_from_geometric_mu_by_the_unit_term() {
    let p = 2;
    for w in ["g1", "g1 g2^-1 g1", "g2 g1 g2 g1^-1"] {
        let parse = |m: &str| {
            let out = ok(&["-p", "2", "--format", "json", "mu", m, w]);
            let j: TensorJson = serde_json::from_str(&out).unwrap();
            tensor_from_json(&j, p).unwrap()
        };
        let word = GroupWord::parse(w, p).unwrap();
        assert_eq!(parse("skein").plus(&gt_core::skein::unit_tensor(&word)), parse("geometric"), "{w}");
    }
}

#[test]
fn json_outputs_read_back() {
    let out = ok(&["-p", "2", "--format", "json", "bracket", "geometric", "2 |g1 g2^-1|", "g2 g1^-1"]);
    let j: CombJson = serde_json::from_str(&out).unwrap();
    let x: LoopCombo = loops_from_json(&j, 2).unwrap();
    assert_eq!(gt_core::word::render_loops(&x), ok(&["-p", "2", "bracket", "geometric", "2 |g1 g2^-1|", "g2 g1^-1"]));

    let out = ok(&["-p", "2", "--format", "json", "cobracket", "skein", "g1 g2 g1^-1 g2^-1"]);
    let j: WedgeJson = serde_json::from_str(&out).unwrap();
    let d = wedge_from_json(&j, 2).unwrap();
    assert_eq!(gt_core::word::render_wedge(&d), ok(&["-p", "2", "cobracket", "geometric", "g1 g2 g1^-1 g2^-1"]));
}

#[test]
fn crosschecks_pass() {
    assert_eq!(ok(&["crosscheck", "bracket", "--max-len", "3", "-p", "2"]), "PASS (325 cases)");
    assert_eq!(ok(&["crosscheck", "mu", "--max-len", "3", "-p", "2"]), "PASS (78 cases)");
    assert_eq!(ok(&["crosscheck", "bracket", "--max-len", "0", "-p", "2"]), "PASS (trivial corpus)");
}

#[test]
fn property_suites_pass() {
    assert_eq!(ok(&["check", "epsilon", "--trials", "500", "--seed", "7"]), "PASS (500 cases)");
    assert!(ok(&["check", "conway-exp", "-N", "4"]).ends_with("PASS"));
    assert_eq!(ok(&["check", "jacobi", "--max-len", "3", "-p", "2"]), "PASS (220 cases)");
    assert!(ok(&["check", "cocycle", "--max-len", "3", "-p", "2"]).starts_with("PASS"));
    assert!(ok(&["check", "division", "--trials", "10"]).lines().all(|l| l.contains("PASS")));
    assert!(ok(&["check", "representatives", "--trials", "5"]).lines().all(|l| l.contains("PASS")));
}

#[test]
fn runs_are_deterministic() {
    let args = ["check", "representatives", "--trials", "5", "--seed", "9", "--format", "json"];
    assert_eq!(gt(&args).stdout, gt(&args).stdout);
}

#[test]
fn parse_errors_exit_with_two() {
    let o = gt(&["-p", "2", "bracket", "geometric", "g1 h", "g1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
    assert_eq!(gt(&["-p", "2", "mu", "geometric", "g3"]).status.code(), Some(2));
    let o = gt(&["-p", "2", "--format", "json", "mu", "graded", "x1^-1"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn oversized_corpora_are_rejected() {
    assert_eq!(gt(&["crosscheck", "bracket", "--max-len", "9"]).status.code(), Some(2));
}

#[test]
fn graded_mu_closes_to_graded_cobracket() {
    assert_eq!(ok(&["-p", "2", "mu", "graded", "x1 x1"]), "- |1| ⊗ x1 + |x1| ⊗ 1");
    assert_eq!(ok(&["-p", "2", "cobracket", "graded", "x1 x1"]), "- 2 |1| ∧ |x1|");
}

#[test]
fn residual_has_one_line_per_degree() {
    let out = ok(&["-p", "2", "-N", "4", "residual", "|g1 g2 g1 g2| - 2 |g1 g2| + |1|"]);
    assert_eq!(out.lines().count(), 4);
    assert!(out.starts_with("degree 0: 0\ndegree 1: 0"));
}
