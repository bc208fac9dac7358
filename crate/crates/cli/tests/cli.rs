//! End-to-end tests of the `cyceq` binary: exit codes, output, and the
//! certificate document round trip.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyceq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// The certificate document for 123/132, computed by hand from the
/// construction: the identity fixed point 0 and the transposition (1 2) give
/// m = 2 words of length 9, interleaved to 18 letters with offset 8.
const GOLDEN_123_132: &str = "cyceq certificate
schema_version 1
u 1 2 3
v 1 3 2
u_expanded 1 2 1 2 1 2 1 3 1 2 1 2 1 2 1 3 1 3
v_expanded 1 2 1 2 1 2 1 3 1 3 1 2 1 2 1 2 1 3
distinguished 0 9 15
offset 8
expanded_length 18
segments 4
segment 0
segment 1 2 1 2 1 2 1 3 1
segment 2 1 2 1 2 1
segment 3 1 3
n 3
m 2
p 4
cycle 0
cycle 1 2
end
";

#[test]
fn check_answers_yes_for_equal_parikh_vectors() {
    let output = run(&["check", "12344", "42431", "--chars"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("YES"));
    assert!(text.contains("4=2"));
}

#[test]
fn check_answers_no_for_unequal_parikh_vectors() {
    let output = run(&["check", "01", "11", "--chars"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout(&output).contains("NO"));
}

#[test]
fn check_accepts_empty_words() {
    let output = run(&["check", "", ""]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("YES"));
}

#[test]
fn parse_failures_exit_two_with_positions() {
    let output = run(&["check", "a,,b", "a"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("position 2"));

    let output = run(&["check", "a b", "ab", "--chars"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("position 2"));
}

#[test]
fn usage_errors_exit_two() {
    let output = run(&["frobnicate"]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&["check", "only-one-word"]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&["check", "a", "b", "--chars", "--tokens"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn equalize_renders_the_single_cycle_tables() {
    let output = run(&["equalize", "0 1 2 3 4", "3 0 4 2 1", "--tables"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("cycle 1: (0 3 2 4 1)"));

    // the u-row of the block view carries the expanded word of the worked
    // example
    let row = text.lines().find(|line| line.starts_with("u[1]")).unwrap();
    let cells: String = row
        .chars()
        .filter(|c| c.is_ascii_digit())
        .skip(1)
        .collect();
    assert_eq!(cells, "0114233114233014433014423");

    // the document follows the tables
    assert!(text.contains("offset 6"));
    assert!(text.contains("expanded_length 25"));
}

#[test]
fn equalize_single_letter_word() {
    let output = run(&["equalize", "0", "0"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("offset 0"));
    assert!(text.contains("expanded_length 1"));
}

#[test]
fn equalize_two_cycle_example_sizes() {
    let output = run(&["equalize", "0 1 2 3 4", "3 4 0 2 1"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("expanded_length 50"));
    assert!(text.contains("offset 12"));
}

#[test]
fn equalize_reports_the_negative_decision() {
    let output = run(&["equalize", "0 1", "1 1"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout(&output).contains("Parikh vectors differ at letter 0"));
}

#[test]
fn equalize_rejects_unequal_lengths_as_usage() {
    let output = run(&["equalize", "0 1", "0 1 1"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("equal length"));
}

#[test]
fn equalize_document_is_byte_stable() {
    let output = run(&["equalize", "1 2 3", "1 3 2"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout(&output), GOLDEN_123_132);
    let again = run(&["equalize", "1 2 3", "1 3 2"]);
    assert_eq!(stdout(&again), GOLDEN_123_132);
}

#[test]
fn equalize_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certificate.txt");
    let path_str = path.to_str().unwrap();

    let output = run(&["equalize", "a c b c a c", "c b a a c c", "--json", path_str]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("certificate written to"));

    let output = run(&["verify", path_str]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("valid"));
}

#[test]
fn verify_flags_a_perturbed_offset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certificate.txt");
    let path_str = path.to_str().unwrap();
    run(&["equalize", "1 2 3", "1 3 2", "--json", path_str]);

    let text = fs::read_to_string(&path).unwrap();
    let perturbed = text.replace("offset 8", "offset 9");
    fs::write(&path, perturbed).unwrap();

    let output = run(&["verify", path_str]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout(&output).contains("shift mismatch"));
}

#[test]
fn verify_rejects_truncated_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certificate.txt");
    let path_str = path.to_str().unwrap();
    run(&["equalize", "1 2 3", "1 3 2", "--json", path_str]);

    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    fs::write(&path, lines[..lines.len() - 3].join("\n")).unwrap();

    let output = run(&["verify", path_str]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("malformed"));

    let output = run(&["verify", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn oracle_finds_the_minimal_insertion() {
    let output = run(&["oracle", "123", "132", "--chars", "--max-insert", "2"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("minimal total insertion length 1"));
    assert!(text.contains("u_expanded 1 2 1 3"));
    assert!(text.contains("v_expanded 1 3 1 2"));
}

#[test]
fn oracle_handles_already_conjugate_words() {
    let output = run(&["oracle", "01", "10", "--chars", "--max-insert", "0"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("minimal total insertion length 0"));
}

#[test]
fn oracle_reports_absence() {
    let output = run(&["oracle", "01", "11", "--chars", "--max-insert", "3"]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout(&output).contains("not found"));
}

#[test]
fn oracle_rejects_infeasible_budgets() {
    let output = run(&[
        "oracle",
        "0 1 2 3 4 5 6 7 8 9",
        "9 8 7 6 5 4 3 2 1 0",
        "--max-insert",
        "8",
        "--node-limit",
        "1000",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("infeasible"));
}

#[test]
fn oracle_accepts_an_explicit_alphabet() {
    let output = run(&[
        "oracle", "0 1", "1 0", "--max-insert", "1", "--alphabet", "0, 1",
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("minimal total insertion length 0"));
}

#[test]
fn oracle_documents_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.txt");
    let output = run(&["oracle", "123", "132", "--chars", "--max-insert", "2"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    let document: String = text
        .lines()
        .skip_while(|line| !line.starts_with("cyceq certificate"))
        .map(|line| format!("{line}\n"))
        .collect();
    fs::write(&path, document).unwrap();
    let output = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
}

#[test]
fn chars_and_tokens_modes_agree() {
    let chars = run(&["check", "231", "123", "--chars"]);
    let tokens = run(&["check", "2 3 1", "1 2 3"]);
    assert_eq!(exit_code(&chars), 0);
    assert_eq!(exit_code(&tokens), 0);
    assert_eq!(stdout(&chars), stdout(&tokens));
}
