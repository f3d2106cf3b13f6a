use std::io::Write;
use std::process::{Command, Output, Stdio};

use proptest::prelude::*;

use hyperseq::cli;

fn bin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperseq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// In-process run: (exit code, stdout, stderr).
fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("hyperseq")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(&argv, &mut input.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const A307717: &str =
    "4 0 2 0 5 0 3 0 8 0 5 0 13 0 9 0 22 0 16 0 37 0 27 0 60 0 43 0 93 0 65 0 138";

#[test]
fn guess_constant_sequence() {
    let o = bin(&["guess", "1", "1", "1", "1", "1"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/(1-x)\n");
}

#[test]
fn guess_reads_stdin_by_default() {
    let o = bin(&["guess"], "1 2 3 4 5\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/(1-2*x+x^2)\n");
}

#[test]
fn guess_failure_exits_2() {
    let o = bin(&["guess", "1", "2", "6", "24", "120", "720"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn fibonacci_has_no_representation() {
    let o = bin(
        &[
            "fps", "0", "1", "1", "2", "3", "5", "8", "13", "21", "34", "55", "89",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
    assert!(
        stderr(&o).contains("no hypergeometric-type representation"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn a307717_formula() {
    let args: Vec<&str> = ["fps", "--format", "formula"]
        .into_iter()
        .chain(A307717.split(' '))
        .collect();
    let o = bin(&args, "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "a(0) = 4\n\
         a(2n) = ((-1)^n*(n^3 - 9*n^2 + 65*n + 21) + 3*n^3 - 15*n^2 + 111*n + 171)/96 for n >= 1\n\
         a(2n+1) = 0 for n >= 0\n"
    );
}

#[test]
fn parse_errors_exit_4() {
    assert_eq!(run(&["fps", "--expr", "1/(1-x"], "").0, 4);
    assert_eq!(run(&["fps", "1", "2", "x"], "").0, 4);
    assert_eq!(run(&["fps", "--expr", "1/x"], "").0, 4);
    assert_eq!(run(&["fps", "--expr", "x^(1/2)"], "").0, 4);
    assert_eq!(run(&["frobnicate"], "").0, 4);
    let (code, out, err) = run(&["guess"], "1, 2, [3");
    assert_eq!(code, 4);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("fps"));
}

#[test]
fn degree_cap_exits_5() {
    assert_eq!(run(&["fps", "--expr", "(1-x)^5000"], "").0, 5);
}

#[test]
fn bfile_from_stdin_is_rebased() {
    let o = bin(
        &["fps", "--bfile", "-", "--format", "formula"],
        "# comment\n3 1\n4 1\n5 1\n6 1\n7 1\n",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a(n) = 1 for n >= 0\n");
    assert!(stderr(&o).contains("re-based"));
}

#[test]
fn sequence_and_piped_expression_agree() {
    let seq: Vec<&str> = "0 0 1 0 4 0 2 0 7 0 3 0 10 0 4 0 13".split(' ').collect();
    let direct: Vec<&str> = ["fps", "--format", "json"]
        .into_iter()
        .chain(seq.iter().copied())
        .collect();
    let direct = bin(&direct, "");
    let guessed = bin(&[&["guess"][..], &seq].concat(), "");
    let piped = bin(
        &["fps", "--expr", "-", "--format", "json"],
        &stdout(&guessed),
    );
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(direct.stdout, piped.stdout);
}

#[test]
fn verify_reports_match_and_mismatch() {
    let (code, json, _) = run(
        &[
            "fps",
            "--expr",
            "(x^2+4*x^4-x^8)/(1-2*x^4+x^8)",
            "--format",
            "json",
        ],
        "",
    );
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("hyperseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rep.json");
    std::fs::write(&path, &json).unwrap();
    let path = path.to_str().unwrap();

    let (code, out, _) = run(
        &[
            "verify",
            "--rep",
            path,
            "--expr",
            "(x^2+4*x^4-x^8)/(1-2*x^4+x^8)",
            "--terms",
            "50",
        ],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!(out, "ok: 50 terms match\n");

    let (code, out, _) = run(&["verify", "--rep", "-", "--expr", "1/(1-x)"], &json);
    assert_eq!(code, 1);
    assert!(
        out.starts_with("mismatch: first differing coefficient at index 0"),
        "{out}"
    );

    let (code, _, _) = run(&["verify", "--rep", "-", "--expr", "1/(1-x)"], "{\"m\": 0}");
    assert_eq!(code, 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_and_latex_formats() {
    let (code, out, _) = run(&["fps", "--expr", "1/(1-x)"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "Sum(x^n, n=0..infinity)\n");
    let (code, out, _) = run(
        &[
            "fps", "--expr", "1/(1-t)", "--var", "t", "--idx", "k", "--format", "latex",
        ],
        "",
    );
    assert_eq!(code, 0);
    assert!(
        out.contains("\\sum_{k=0}^{\\infty}") && out.contains("t^{k}"),
        "{out}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arbitrary_expressions_never_crash(src in "[-+*/^()x0-9 .]{0,24}") {
        let (code, out, _) = run(&["fps", "--expr", &src, "--terms", "20"], "");
        prop_assert!(code != 1, "internal failure on {src:?}");
        if code != 0 {
            prop_assert!(out.is_empty());
        }
    }

    #[test]
    fn arbitrary_sequences_never_crash(terms in prop::collection::vec(-20i64..20, 1..12)) {
        let input: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        let (code, _, _) = run(&["fps", "--terms", "20"], &input.join(" "));
        prop_assert!(code != 1, "internal failure on {input:?}");
    }

    #[test]
    fn garbage_lists_exit_4(junk in "[a-wyz#@!]{1,6}") {
        let (code, _, _) = run(&["guess"], &format!("1 2 {junk} 3"));
        prop_assert_eq!(code, 4);
    }
}
