//! End-to-end runs of the installed binary: canonical outputs, exit
//! codes, format switching, and the REPL loop.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_transword"))
}

fn space_file(contents: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("space.txt");
    std::fs::write(&path, contents).expect("write space file");
    (dir, path)
}

fn discrete_ab() -> (tempfile::TempDir, PathBuf) {
    space_file("kind: finite_poset\nelements: a b\n")
}

fn run(args: &[&str], space: Option<&PathBuf>) -> Output {
    let mut cmd = binary();
    if let Some(path) = space {
        cmd.arg("--space").arg(path);
    }
    cmd.args(args).output().expect("spawn binary")
}

fn stdout_of(output: &Output) -> &str {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    std::str::from_utf8(&output.stdout).expect("utf-8 stdout")
}

#[test]
fn reduce_includes_and_rank_print_canonical_answers() {
    let (_dir, space) = discrete_ab();
    let out = run(&["reduce", "[a]^{<w}", "[a,b]^{<w^2}"], Some(&space));
    assert_eq!(stdout_of(&out), "[a,b]^{<w^2}\n");

    let out = run(&["includes", "eps", "[a]^{<w}"], Some(&space));
    assert_eq!(stdout_of(&out), "true\n");

    let out = run(&["rank", "[*]^{<w}"], Some(&space));
    assert_eq!(stdout_of(&out), "w^2\n");
}

#[test]
fn failed_inclusion_reports_a_shortest_witness() {
    let (_dir, space) = discrete_ab();
    let out = run(&["includes", "[a]^{<w}", "[b]^{<w}"], Some(&space));
    assert_eq!(stdout_of(&out), "false\nwitness: a\n");

    // Sides that agree on every finite word differ only transfinitely;
    // no witness line then.
    let out = run(&["includes", "[a]^{<w^2}", "[a]^{<w}"], Some(&space));
    assert_eq!(stdout_of(&out), "false\n");
}

#[test]
fn intersect_lists_members_in_both_formats() {
    let (_dir, space) = discrete_ab();
    let args = ["intersect", "[a]^{<w} [b]^{<2}", "[b]^{<2} [a]^{<w}"];
    let out = run(&args, Some(&space));
    assert_eq!(stdout_of(&out), "- [a]^{<w}\n- [b]^{<2}\n");

    let mut machine = vec!["--format", "machine"];
    machine.extend_from_slice(&args);
    let out = run(&machine, Some(&space));
    assert_eq!(stdout_of(&out), "[a]^{<w}\n[b]^{<2}\n");
}

#[test]
fn alpha_normalize_clamps_and_splits() {
    let (_dir, space) = discrete_ab();
    let out = run(
        &["alpha-normalize", "w+1", "[a]^{<w+1} [b]^{<w+1}"],
        Some(&space),
    );
    assert_eq!(stdout_of(&out), "- [a]^{<w} [b]^{<w+1}\n- [a]^{<w+1}\n");
}

#[test]
fn closure_leq_and_canon_cover_word_expressions() {
    let (_dir, space) = discrete_ab();
    let out = run(&["closure", "a b (a,b)^w"], Some(&space));
    assert_eq!(stdout_of(&out), "[a,b]^{<w+1}\n");

    let out = run(&["leq", "(a)^(w^2)", "(a,b)^(w^2)"], Some(&space));
    assert_eq!(stdout_of(&out), "true\n");
    let out = run(&["leq", "(a,b)^(w^2)", "(a)^(w^2)"], Some(&space));
    assert_eq!(stdout_of(&out), "false\n");

    let out = run(&["canon", "ordinal", "1+w+w"], None);
    assert_eq!(stdout_of(&out), "w*2\n");
    let out = run(&["canon", "word", "(b,a)^w", "a"], Some(&space));
    assert_eq!(stdout_of(&out), "(a,b)^w a\n");
}

#[test]
fn words_lists_shortlex_matches_up_to_the_depth() {
    let (_dir, space) = discrete_ab();
    let out = run(
        &["--oracle-depth", "2", "--format", "machine", "words", "[a]^{<w} [b]^{<2}"],
        Some(&space),
    );
    assert_eq!(stdout_of(&out), "eps\na\nb\na a\na b\n");
}

#[test]
fn exit_codes_separate_parse_semantic_and_io_errors() {
    let (_dir, space) = discrete_ab();
    let out = run(&["reduce", "[a]^{<w"], Some(&space));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at byte"));

    let out = run(&["reduce", "[q]^{<w}"], Some(&space));
    assert_eq!(out.status.code(), Some(3));

    let missing = space.with_file_name("absent.txt");
    let out = run(&["reduce", "eps"], Some(&missing));
    assert_eq!(out.status.code(), Some(4));

    let out = run(&["reduce", "[a]^{<w}"], None);
    assert_eq!(out.status.code(), Some(2));

    let (_dir2, bad) = space_file("kind: nonsense\n");
    let out = run(&["reduce", "eps"], Some(&bad));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cofinite_spaces_skip_witnesses_and_reject_enumeration() {
    let (_dir, space) = space_file("kind: cofinite_nat\n");
    let out = run(&["includes", "[0,1]^{<w}", "[0]^{<w}"], Some(&space));
    assert_eq!(stdout_of(&out), "false\n");

    let out = run(&["words", "[0]^{<w}"], Some(&space));
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["closure", "(*)^w"], Some(&space));
    assert_eq!(stdout_of(&out), "[*]^{<w+1}\n");
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let (_dir, space) = discrete_ab();
    let args = ["alpha-normalize", "w+1", "[a,b]^{<w^2} [a]^{<w+1}"];
    let first = run(&args, Some(&space));
    let second = run(&args, Some(&space));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout_of(&first), "- [a,b]^{<w+1}\n");
}

#[test]
fn repl_binds_results_and_recovers_from_errors() {
    let (_dir, space) = discrete_ab();
    let script = "\
# bindings hold single-line results
let x = reduce [a]^{<w} [a]^{<w}
includes $x [a,b]^{<w}
bogus command
rank $x
canon ordinal w+1
exit
rank never-reached
";
    let mut child = binary()
        .arg("--space")
        .arg(&space)
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn repl");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(script.as_bytes())
        .expect("write script");
    let out = child.wait_with_output().expect("wait for repl");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "true\nw\nw+1\n"
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown command: bogus"));
}
