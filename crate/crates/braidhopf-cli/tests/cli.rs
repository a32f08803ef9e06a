//! End-to-end checks of the command-line interface: exit codes, exact
//! output fragments, and JSON stability, all through the compiled binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidhopf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn check_passes_on_both_shipped_instances() {
    for inst in ["a2", "taft"] {
        let out = run(&["check", "--instance", inst]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        assert!(stdout(&out).lines().all(|l| l.starts_with("ok ")));
    }
}

#[test]
fn purity_reports_the_violated_constraint_exactly() {
    let out = run(&["purity", "--lambda", "1,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("PURE (violates λ₁·(λ₁₂+2q₁₂λ₁λ₂)=0)"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn purity_covers_all_three_verdicts() {
    let trivial = run(&["purity", "--lambda", "0,0,0"]);
    assert_eq!(trivial.status.code(), Some(0));
    assert!(stdout(&trivial).contains("TRIVIAL"));
    let exp = run(&["purity", "--lambda", "0,0,1"]);
    assert_eq!(exp.status.code(), Some(0));
    let text = stdout(&exp);
    assert!(text.contains("EXPONENTIAL"), "got: {text}");
    assert!(text.contains("eta ="), "got: {text}");
    assert!(text.contains("alpha"), "got: {text}");
}

#[test]
fn cocycle_table_json_is_stable_and_has_the_expected_entries() {
    let out = run(&["cocycle-table", "--q12", "-1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let mut reser = serde_json::to_string_pretty(&value).unwrap();
    reser.push('\n');
    assert_eq!(text, reser, "json must re-serialize byte for byte");
    let keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(|k| k.as_str())
        .collect();
    assert_eq!(keys, ["basis", "instance", "q12", "table"]);
    assert_eq!(value["instance"], "a2");
    assert_eq!(value["q12"], -1);
    assert_eq!(value["basis"][6], "x12*x1");
    // sigma(x2, x12 x1) = 2 q12 l1 l2 at q12 = -1
    assert_eq!(value["table"][2][6], "-2*l1*l2");
    // sigma(x12 x1, x2) differs by l12
    assert_eq!(value["table"][6][2], "l12 - 2*l1*l2");
}

#[test]
fn cocycle_table_accepts_numeric_parameters() {
    let out = run(&["cocycle-table", "--q12", "-1", "--lambda", "1,2,3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["table"][2][6], "-4");
    assert_eq!(value["table"][6][2], "-1");
}

#[test]
fn section_emits_gamma_and_its_inverse() {
    let out = run(&["section", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(",gamma,gamma_inv"));
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("x12,x12,x12 + -2*x2*x1"));
}

#[test]
fn hochschild_reports_the_invariant_dimensions() {
    let out = run(&["hochschild", "--invariant"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "dim Z2 = 9",
        "dim B2 = 6",
        "dim H2 = 3",
        "dim Z2_invariant = 5",
        "dim B2_invariant = 2",
        "dim H2_invariant = 3",
    ] {
        assert!(text.contains(line), "missing `{line}` in: {text}");
    }
}

#[test]
fn exp_reports_the_separating_witness() {
    let out = run(&["exp", "--eta", "1,0,1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "conm1: false",
        "conm2: false",
        "in C: false",
        "in C-bar: true",
        "e^eta is a Hopf cocycle: true",
    ] {
        assert!(text.contains(line), "missing `{line}` in: {text}");
    }
}

#[test]
fn exp_symbolic_shows_both_membership_obstructions() {
    let out = run(&["exp"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("in C: false"));
    assert!(text.contains("in C-bar: false"));
    assert!(text.contains("obstructions (commutation):"));
    assert!(text.contains("obstructions (cocycle):"));
}

#[test]
fn deform_prints_the_relation_values() {
    let out = run(&["deform"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ok a1*a1"));
    assert!(text.contains("ok a2*a2"));
    assert!(text.contains("ok a12*a12"));
    let taft = run(&["deform", "--instance", "taft"]);
    assert_eq!(taft.status.code(), Some(0));
    assert!(stdout(&taft).contains("ok x*x = 0"));
}

#[test]
fn golden_runs_both_signs_and_the_rank_one_instance() {
    let out = run(&["golden"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("ok golden a2 q12=-1 cocycle table"));
    assert!(text.contains("ok golden a2 q12=+1 cocycle table"));
    assert!(text.contains("ok golden taft exponential table"));
}

#[test]
fn input_errors_exit_with_code_two() {
    let short = run(&["purity", "--lambda", "1,0"]);
    assert_eq!(short.status.code(), Some(2));
    assert!(stderr(&short).starts_with("error:"));
    let missing = run(&["check", "--instance", "nosuch.alg"]);
    assert_eq!(missing.status.code(), Some(2));
    let sign = run(&["cocycle-table", "--q12", "2"]);
    assert_eq!(sign.status.code(), Some(2));
    let golden_sign = run(&["golden", "--q12", "-1"]);
    assert_eq!(golden_sign.status.code(), Some(2));
}

#[test]
fn a_consistent_grammar_with_inconsistent_dimension_fails_at_build() {
    let path = std::env::temp_dir().join("braidhopf_cli_bad_instance.alg");
    std::fs::write(
        &path,
        "algebra bad {\n  generators x1[1];\n  braiding [[-1]];\n  relations {\n    x1^3 = 0;\n  }\n  dimension 2;\n}\n",
    )
    .unwrap();
    let out = run(&["check", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stderr(&out).starts_with("error:"));
    std::fs::remove_file(&path).ok();
}
