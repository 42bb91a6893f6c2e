//! Black-box tests of the command-line interface: output shapes, exit
//! codes and the JSON report round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn dproc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dproc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dproc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn traces_lists_in_canonical_order() {
    let out = dproc(&["traces", &fixture("example21.dproc")]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
ε
(2)
(2, 3)
(1, 2, 4)
(2, 3, 5)
(1, 2, 3, 4)
(1, 2, 4, 3)
(1, 2, 3, 4, 5)
(1, 2, 3, 5, 4)
(1, 2, 4, 3, 5)
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn traces_count_only() {
    let out = dproc(&["traces", &fixture("ad1.dproc"), "--count-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "16\n");

    let out = dproc(&["traces", &fixture("ad2.dproc"), "--count-only"]);
    assert_eq!(stdout(&out), "8\n");
}

#[test]
fn traces_strategies_agree() {
    for algorithm in ["brute", "leaf", "auto"] {
        let out = dproc(&[
            "traces",
            &fixture("example21.dproc"),
            "--algorithm",
            algorithm,
            "--count-only",
        ]);
        assert_eq!(out.status.code(), Some(0), "{algorithm}: {}", stderr(&out));
        assert_eq!(stdout(&out), "10\n", "algorithm {algorithm}");
    }
}

#[test]
fn check_reports_each_constraint() {
    let out = dproc(&["check", &fixture("example21.dproc"), "(1,2,4)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.starts_with("pass ")), "{text}");

    // (4,1,2): succ(1,4) holds but notsucc(4,2) is violated
    let out = dproc(&["check", &fixture("example21.dproc"), "(4,1,2)"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL notsucc(4,2)"), "{text}");

    let out = dproc(&["check", &fixture("example21.dproc"), "ε"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_code_parse_error() {
    let path = scratch("broken.dproc");
    std::fs::write(&path, "process broken { activities { 1 }").unwrap();
    let out = dproc(&["traces", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).starts_with("dproc:"));
}

#[test]
fn exit_code_alphabet_limit() {
    let out = dproc(&["traces", &fixture("ad1.dproc"), "--max-alphabet", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("6"), "{}", stderr(&out));

    // environment variable form, overridden by the flag
    let out = Command::new(env!("CARGO_BIN_EXE_dproc"))
        .args(["traces", &fixture("ad1.dproc"), "--count-only"])
        .env("DPROC_MAX_ALPHABET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_dproc"))
        .args([
            "traces",
            &fixture("ad1.dproc"),
            "--count-only",
            "--max-alphabet",
            "8",
        ])
        .env("DPROC_MAX_ALPHABET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_code_unknown_activity() {
    let out = dproc(&["check", &fixture("example21.dproc"), "(1,9)"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("unknown activity 9"), "{}", stderr(&out));
}

#[test]
fn exit_code_degenerate_counts() {
    let out = dproc(&["utilities", "--from-counts", "0,0/0"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn exit_code_mismatched_vectors() {
    let path = scratch("ragged.vec");
    std::fs::write(&path, "a: 0.5 0.5\nb: 0.5\n").unwrap();
    let out = dproc(&["compare", "--vectors", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn utilities_from_spec() {
    let out = dproc(&["utilities", &fixture("ad2.dproc")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("0.88562"), "{text}");
    assert!(text.contains("1.00000"), "{text}");
}

#[test]
fn utilities_from_counts() {
    let out = dproc(&["utilities", "--from-counts", "11,3,389,452,448/459"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for value in ["0.40529", "0.22610", "0.97308", "0.99750", "0.99605"] {
        assert!(text.contains(value), "{value} missing from:\n{text}");
    }
}

#[test]
fn compare_vectors_text_report() {
    let out = dproc(&["compare", "--vectors", &fixture("ph.vec")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for value in ["0.97640", "0.66778", "0.61753"] {
        assert!(text.contains(value), "{value} missing from:\n{text}");
    }
    // 31 subset rows, the robustness strata and the agreement note
    assert!(text.contains("{S1,S2,S3,S4,S5}"), "{text}");
    assert!(text.contains("ALL_EQ_ALMOSTALL"), "{text}");
    for freq in ["1/1", "5/6", "12/16", "20/31"] {
        assert!(text.contains(freq), "{freq} missing from:\n{text}");
    }
}

#[test]
fn compare_requires_two_systems() {
    let out = dproc(&["compare", &fixture("ad1.dproc")]);
    assert_eq!(out.status.code(), Some(2));

    let out = dproc(&["compare", &fixture("ad1.dproc"), "--allow-single"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn report_round_trip_is_faithful() {
    let text = stdout(&dproc(&["compare", "--vectors", &fixture("ph.vec")]));
    let json = stdout(&dproc(&[
        "compare",
        "--vectors",
        &fixture("ph.vec"),
        "--format",
        "json",
    ]));
    let path = scratch("ph-report.json");
    std::fs::write(&path, &json).unwrap();

    let replayed = dproc(&["compare", "--from-report", path.to_str().unwrap()]);
    assert_eq!(replayed.status.code(), Some(0));
    assert_eq!(stdout(&replayed), text);

    let replayed_json = dproc(&[
        "compare",
        "--from-report",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&replayed_json), json);
}

#[test]
fn tsv_output_is_tabular() {
    let out = dproc(&[
        "compare",
        "--vectors",
        &fixture("ph.vec"),
        "--format",
        "tsv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() > 31);
    assert!(text.lines().all(|l| l.is_empty() || l.contains('\t')), "{text}");
}

#[test]
fn compare_specs_end_to_end() {
    let out = dproc(&["compare", &fixture("ad1.dproc"), &fixture("ad2.dproc")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ad1"), "{text}");
    assert!(text.contains("ad2"), "{text}");
    // ad2 forces the bedtime activity, so the parents' utility reaches 1
    assert!(text.contains("1.00000"), "{text}");
}
