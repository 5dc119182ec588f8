//! End-to-end tests against the compiled binary: golden outputs for the
//! pinned examples, the exit-code contract, and byte-level determinism.

use std::process::Command;

fn apoly() -> Command {
    Command::new(env!("CARGO_BIN_EXE_apoly"))
}

/// Runs the binary and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let output = apoly().args(args).output().expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
        String::from_utf8(output.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn edgepoly_reports_the_slope_4_1_edges_of_the_catalog_knot() {
    let (code, stdout, _) = run(&["edgepoly", "--poly", "fig8", "--vars", "L,M", "--slope", "4/1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""poly":"1 - t""#), "stdout: {stdout}");
    assert!(
        stdout.contains(r#""basis":{"p":4,"q":1,"a":3,"b":1}"#),
        "stdout: {stdout}"
    );
    // Both parallel edges carry the same edge polynomial here.
    assert_eq!(stdout.matches(r#""poly":"1 - t""#).count(), 2);
}

#[test]
fn amalgam_with_check_roots_reports_multiplicity_five() {
    let (code, stdout, _) = run(&["amalgam", "--n", "5", "--method", "resultant", "--check-roots"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""num_terms":27"#), "stdout: {stdout}");
    assert!(stdout.contains(r#""multiplicity":5"#), "stdout: {stdout}");
    assert!(stdout.contains(r#""vertical_edge_found":true"#));
    // Spot-check two golden coefficients of the eliminated polynomial.
    assert!(stdout.contains(r#"{"coeff":"98","exps":{"A":100,"B":4}}"#));
    assert!(stdout.contains(r#"{"coeff":"1","exps":{"A":200}}"#));
}

#[test]
fn resultant_of_two_linear_polynomials_is_their_root_difference() {
    let (code, stdout, _) = run(&["resultant", "--var", "x", "--", "x - 3", "x - 7"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""poly":"-4""#), "stdout: {stdout}");
}

#[test]
fn newton_lists_the_catalog_polygon_counterclockwise() {
    let (code, stdout, _) = run(&["newton", "--poly", "fig8", "--vars", "L,M"]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains(r#""vertices":[[0,4],[1,0],[2,4],[1,8]]"#),
        "stdout: {stdout}"
    );
    assert!(stdout.contains(r#""slope":"4/1""#));
    assert!(stdout.contains(r#""slope":"-4/1""#));
}

#[test]
fn usage_errors_exit_1() {
    let (code, _, _) = run(&["--definitely-not-a-flag"]);
    assert_eq!(code, 1);
    let (code, _, stderr) = run(&["newton", "--poly", "fig8", "--vars", "L"]);
    assert_eq!(code, 1, "stderr: {stderr}");
    let (code, _, _) = run(&["edgepoly", "--poly", "fig8", "--vars", "L,M", "--slope", "4/0"]);
    assert_eq!(code, 1);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, _, stderr) = run(&["parse", "--poly", "x +"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1, column 4"), "stderr: {stderr}");
}

#[test]
fn mathematical_preconditions_exit_3() {
    // Normalizing the zero polynomial has no canonical answer.
    let (code, _, _) = run(&["normalize", "--poly", "x - x"]);
    assert_eq!(code, 3);
    // check-roots wants a polynomial in t alone.
    let (code, _, stderr) = run(&["check-roots", "--poly", "1 - x", "--n", "2"]);
    assert_eq!(code, 3, "stderr: {stderr}");
    // A gluing with determinant != +/-1 is rejected.
    let (code, _, _) = run(&["amalgam", "--n", "2", "--gluing", "2,0,0,2"]);
    assert_eq!(code, 3);
    // Divergent trace schedules are rejected up front.
    let (code, _, _) = run(&["trace", "--n", "2", "--ratio", "1.5"]);
    assert_eq!(code, 3);
}

#[test]
fn term_budget_overflow_exits_3() {
    let output = apoly()
        .args(["amalgam", "--n", "5"])
        .env("APOLY_MAX_TERMS", "10")
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("APOLY_MAX_TERMS"), "stderr: {stderr}");
    // The guard must not leak a raw panic report.
    assert!(!stderr.contains("panicked"), "stderr: {stderr}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = run(&["amalgam", "--n", "3", "--check-roots"]);
    let second = run(&["amalgam", "--n", "3", "--check-roots"]);
    assert_eq!(first, second);
    let first = run(&["trace", "--n", "3", "--steps", "3"]);
    let second = run(&["trace", "--n", "3", "--steps", "3"]);
    assert_eq!(first, second);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("apoly-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig8.json");
    let path_str = path.to_str().unwrap();

    let (code, stdout, _) = run(&["parse", "--poly", "fig8"]);
    assert_eq!(code, 0);
    let (code, piped, _) = run(&["parse", "--poly", "fig8", "--out", path_str]);
    assert_eq!(code, 0);
    assert!(piped.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn file_inputs_parse_like_inline_expressions() {
    let dir = std::env::temp_dir().join("apoly-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poly.txt");
    std::fs::write(&path, "1 + x*y^2 - x^2\n").unwrap();
    let (code, from_file, _) = run(&["parse", "--poly", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, inline, _) = run(&["parse", "--poly", "1 + x*y^2 - x^2"]);
    assert_eq!(from_file, inline);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn pretty_flag_changes_layout_but_not_content() {
    let (code, compact, _) = run(&["parse", "--poly", "1 - t"]);
    assert_eq!(code, 0);
    let (code, pretty, _) = run(&["parse", "--poly", "1 - t", "--pretty"]);
    assert_eq!(code, 0);
    assert_ne!(compact, pretty);
    let a: serde_json::Value = serde_json::from_str(&compact).unwrap();
    let b: serde_json::Value = serde_json::from_str(&pretty).unwrap();
    assert_eq!(a, b);
}

#[test]
fn parse_echoes_canonical_form_and_round_trips() {
    let (code, stdout, _) = run(&[
        "parse",
        "--poly",
        "M^4 - L + L*M^2 + 2*L*M^4 + L^2*M^4 + L*M^6 - L*M^8",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let printed = value["poly"].as_str().unwrap();
    let (code, again, _) = run(&["parse", "--poly", printed]);
    assert_eq!(code, 0);
    assert_eq!(again, stdout);
}

#[test]
fn zero_polynomial_parses_to_zero_terms() {
    let (code, stdout, _) = run(&["parse", "--poly", "3*x - 3*x"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""num_terms":0"#), "stdout: {stdout}");
}

#[test]
fn vertical_edges_are_selectable() {
    let (code, stdout, _) = run(&[
        "edgepoly",
        "--poly",
        "1 + x + y",
        "--vars",
        "x,y",
        "--slope",
        "vertical",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""poly":"1 + t""#), "stdout: {stdout}");
}

#[test]
fn subst_method_emits_the_seven_term_family() {
    let (code, stdout, _) = run(&["amalgam", "--n", "2", "--method", "subst"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(r#""num_terms":7"#), "stdout: {stdout}");
    assert!(stdout.contains(r#""vars":["A","p"]"#), "stdout: {stdout}");
}
