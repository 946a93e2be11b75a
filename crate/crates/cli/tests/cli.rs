//! End-to-end tests of the binary: exit codes, exact outputs, and the file
//! formats, run against temporary working directories.

use std::path::Path;
use std::process::Command;

const ZECKENDORF_AUTOMATON: &str = "alphabet: 0,1\ninitial: i\ni 1 p\np 0 q\nq 0 q\nq 1 p\n";
const FIBONACCI_MORPHISM: &str = "alphabet: 0,1\nstart: 0\n0 -> 0 1\n1 -> 0\n";

fn run(args: &[&str]) -> (i32, String, String) {
    run_in(Path::new("."), args)
}

fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_sigtree"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
        String::from_utf8(output.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn demo_fibonacci_passes() {
    let (code, stdout, _) = run(&["demo-fibonacci"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "signature: 2122121221221\nlabelling: 0100101001001\n\
         ε\n1\n10\n100\n101\n1000\n1001\n1010\n\
         PASS: 100 words match the greedy oracle\n"
    );
}

#[test]
fn check_valid_reports_proven_signatures() {
    let (code, stdout, _) = run(&[
        "check-valid",
        "--signature",
        "periodic:v=3,2,1",
        "--horizon",
        "1000",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "valid (proven forever)\n");
}

#[test]
fn check_valid_rejects_invalid_signatures() {
    let (code, stdout, _) = run(&["check-valid", "--signature", "periodic:v=1"]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "invalid at index 0: prefix sum does not exceed 1\n");
}

#[test]
fn check_valid_distinguishes_horizon_from_proof() {
    let args = ["check-valid", "--signature", "periodic:u=5;v=1,0", "--horizon"];
    let (code, stdout, _) = run(&[&args[..], &["5"]].concat());
    assert_eq!(code, 0);
    assert_eq!(stdout, "valid on the first 5 entries (not proven beyond)\n");
    let (code, stdout, _) = run(&[&args[..], &["100"]].concat());
    assert_eq!(code, 1);
    assert_eq!(stdout, "invalid at index 8: prefix sum does not exceed 9\n");
}

#[test]
fn sig_from_periodic_requires_an_integer_ratio() {
    let (code, _, stderr) = run(&["sig-from-periodic", "--v", "2,1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("growth ratio 3/2 is not an integer"), "stderr: {stderr}");
}

#[test]
fn sig_from_periodic_emits_the_construction() {
    let (code, stdout, _) = run(&["sig-from-periodic", "--v", "3,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "alphabet: 0,1,2\nstart: 0\n0 -> 0 1 2\n1 -> 0 1\n2 -> 2\n"
    );
}

#[test]
fn sig_from_dfa_extracts_the_transition_table() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zeck.dfa"), ZECKENDORF_AUTOMATON).unwrap();
    let (code, stdout, _) = run_in(dir.path(), &["sig-from-dfa", "zeck.dfa"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "alphabet: i,p,q\nstart: i\ni -> i p\np -> q\nq -> q p\n\
         label-alphabet: #,0,1\nlabel-images:\ni -> # 1\np -> 0\nq -> 0 1\n"
    );
}

#[test]
fn dfa_from_sig_defaults_to_rank_labels() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("fib.morph"), FIBONACCI_MORPHISM).unwrap();
    let (code, stdout, _) = run_in(dir.path(), &["dfa-from-sig", "fib.morph"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "alphabet: 0,1\ninitial: 0'\n0' 1 1\n0 0 0\n0 1 1\n1 0 0\n"
    );
}

#[test]
fn chained_conversions_recover_the_automaton() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zeck.dfa"), ZECKENDORF_AUTOMATON).unwrap();
    let (code, extracted, _) = run_in(dir.path(), &["sig-from-dfa", "zeck.dfa"]);
    assert_eq!(code, 0);
    std::fs::write(dir.path().join("zeck.morph"), &extracted).unwrap();
    let (code, rebuilt, _) = run_in(dir.path(), &["dfa-from-sig", "zeck.morph"]);
    assert_eq!(code, 0);
    // Same language as the input automaton: the initial state is duplicated
    // into i' and the sentinel letter is pruned away with it.
    assert_eq!(
        rebuilt,
        "alphabet: 0,1\ninitial: i'\ni' 1 p\np 0 q\nq 0 q\nq 1 p\n"
    );
}

#[test]
fn minlabel_assigns_per_state_ranks() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zeck.dfa"), ZECKENDORF_AUTOMATON).unwrap();
    let (code, stdout, _) = run_in(dir.path(), &["minlabel", "zeck.dfa"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "alphabet: 0,1\ninitial: i\ni 0 p\np 0 q\nq 0 q\nq 1 p\n"
    );
}

#[test]
fn roundtrip_confirms_preservation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zeck.dfa"), ZECKENDORF_AUTOMATON).unwrap();
    let (code, stdout, _) = run_in(dir.path(), &["roundtrip", "zeck.dfa", "--words", "300"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "round trip preserves the first 300 words\n");
}

#[test]
fn roundtrip_rejects_finite_languages() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("chain.dfa"), "alphabet: a\ninitial: q0\nq0 a q1\n").unwrap();
    let (code, _, stderr) = run_in(dir.path(), &["roundtrip", "chain.dfa"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("finite language"), "stderr: {stderr}");
}

#[test]
fn gen_tree_prints_child_intervals() {
    let (code, stdout, _) = run(&["gen-tree", "--signature", "periodic:v=3,2,1", "--nodes", "9"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0 3 0..3\n1 2 3..5\n2 1 5..6\n3 3 6..9\n");
}

#[test]
fn gen_tree_accepts_morphism_descriptors_and_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("fib.morph"), FIBONACCI_MORPHISM).unwrap();
    let (code, stdout, _) = run_in(
        dir.path(),
        &["gen-tree", "--signature", "morphism:fib.morph", "--nodes", "5", "--dot", "t.dot"],
    );
    assert_eq!(code, 0);
    assert_eq!(stdout, "0 2 0..2\n1 1 2..3\n2 2 3..5\n");
    let dot = std::fs::read_to_string(dir.path().join("t.dot")).unwrap();
    assert!(dot.contains("0 -> 0;"), "root loop missing:\n{dot}");
    assert!(dot.contains("2 -> 4;"), "last edge missing:\n{dot}");
}

#[test]
fn gen_tree_rejects_invalid_signatures() {
    let (code, _, stderr) = run(&["gen-tree", "--signature", "periodic:v=1", "--nodes", "10"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("invalid signature at index 0"), "stderr: {stderr}");
}

#[test]
fn gen_lang_generates_minimal_words() {
    let (code, stdout, _) = run(&[
        "gen-lang",
        "--signature",
        "periodic:v=3,2,1",
        "--minimal",
        "--count",
        "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "ε\n1\n2\n10\n11\n20\n100\n");
}

#[test]
fn gen_lang_accepts_an_explicit_periodic_labelling() {
    let (code, stdout, _) = run(&[
        "gen-lang",
        "--signature",
        "periodic:v=3,2,1",
        "--labelling",
        "periodic:u=;v=a,b,d,b,c,a,b,c,d,a,d,d",
        "--alphabet",
        "a,b,c,d",
        "--count",
        "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "ε\nb\nd\nbb\nbc\nda\nbbb\n");
}

#[test]
fn gen_lang_periodic_labelling_needs_an_alphabet() {
    let (code, _, stderr) = run(&[
        "gen-lang",
        "--signature",
        "periodic:v=3,2,1",
        "--labelling",
        "periodic:v=a,b,c",
        "--count",
        "3",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--alphabet"), "stderr: {stderr}");
}

#[test]
fn gen_lang_requires_a_label_source() {
    let (code, _, stderr) = run(&[
        "gen-lang",
        "--signature",
        "periodic:v=3,2,1",
        "--count",
        "3",
    ]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn unknown_flags_and_commands_exit_with_usage_errors() {
    let (code, _, _) = run(&["check-valid", "--bogus"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn missing_input_files_exit_with_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, stderr) = run_in(dir.path(), &["minlabel", "no-such-file.dfa"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no-such-file.dfa"), "stderr: {stderr}");
}
