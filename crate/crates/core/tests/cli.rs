use std::path::PathBuf;
use std::process::{Command, Output};

use clap::Parser;
use kannan::cli::{execute, Cli, EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use kannan::report::ReportDocument;
use kannan::LambdaBound;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn kannan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kannan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kannan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_exit_codes() {
    let ok = kannan(&["validate", &fixture("branciari4.space")]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));

    let bad = kannan(&["validate", &fixture("branciari4-as-metric.space")]);
    assert_eq!(bad.status.code(), Some(EXIT_NEGATIVE));
    assert!(
        stdout(&bad).contains("triangle (1,3,2)"),
        "{}",
        stdout(&bad)
    );

    let malformed = kannan(&["validate", &fixture("missing-pair.space")]);
    assert_eq!(malformed.status.code(), Some(EXIT_INPUT));
    assert!(!malformed.stderr.is_empty());

    let absent = kannan(&["validate", "/definitely/not/here.space"]);
    assert_eq!(absent.status.code(), Some(EXIT_INPUT));
}

#[test]
fn analyze_reports_both_constants() {
    let out = kannan(&["analyze", &fixture("branciari4.space"), "--aux", "T"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = stdout(&out);
    assert!(text.contains("1/4"), "{text}");

    let classical = kannan(&["analyze", &fixture("branciari4.space")]);
    assert_eq!(classical.status.code(), Some(EXIT_NEGATIVE));

    let unknown = kannan(&["analyze", &fixture("branciari4.space"), "--aux", "Q"]);
    assert_eq!(unknown.status.code(), Some(EXIT_INPUT));
}

#[test]
fn identity_aux_matches_no_aux() {
    let path = scratch("with-identity.space");
    let src = std::fs::read_to_string(fixture("branciari4.space")).unwrap();
    let src = src.replacen(
        "\"maps\": {",
        "\"maps\": {\n    \"I\": { \"1\": \"1\", \"2\": \"2\", \"3\": \"3\", \"4\": \"4\" },",
        1,
    );
    std::fs::write(&path, src).unwrap();
    let p = path.display().to_string();

    let r1 = scratch("plain.json");
    let r2 = scratch("identity.json");
    let a = kannan(&["analyze", &p, "--report", &r1.display().to_string()]);
    let b = kannan(&[
        "analyze",
        &p,
        "--aux",
        "I",
        "--report",
        &r2.display().to_string(),
    ]);
    assert_eq!(a.status.code(), b.status.code());
    let a = ReportDocument::from_json(&std::fs::read_to_string(r1).unwrap()).unwrap();
    let b = ReportDocument::from_json(&std::fs::read_to_string(r2).unwrap()).unwrap();
    let (a, b) = (a.analysis.unwrap(), b.analysis.unwrap());
    assert_eq!(a.kannan.lambda_min, b.extended.lambda_min);
    assert_eq!(a.extended.lambda_min, b.extended.lambda_min);
    assert_eq!(a.kannan.lambda_min, LambdaBound::Finite(1.into()));
}

#[test]
fn solve_outcomes() {
    let fp = kannan(&["solve", &fixture("branciari4.space"), "--start", "1"]);
    assert_eq!(fp.status.code(), Some(EXIT_OK));
    assert!(stdout(&fp).contains("1 -> 4 -> 2"), "{}", stdout(&fp));

    let bounds = kannan(&[
        "solve",
        &fixture("branciari4.space"),
        "--aux",
        "T",
        "--start",
        "3",
        "--check-bounds",
        "1/3",
    ]);
    assert_eq!(bounds.status.code(), Some(EXIT_OK));

    let cycle = kannan(&["solve", &fixture("swap.space"), "--start", "a"]);
    assert_eq!(cycle.status.code(), Some(EXIT_NEGATIVE));

    let bad_start = kannan(&["solve", &fixture("swap.space"), "--start", "zz"]);
    assert_eq!(bad_start.status.code(), Some(EXIT_INPUT));

    let family = kannan(&[
        "solve",
        &fixture("kannan23.space"),
        "--aux",
        "T",
        "--start",
        "1/4",
        "--check-bounds",
        "1/3",
    ]);
    assert_eq!(family.status.code(), Some(EXIT_OK));
    assert!(stdout(&family).contains("1/30"));
}

#[test]
fn search_outcomes() {
    let found = kannan(&[
        "search-t",
        &fixture("branciari4.space"),
        "--lambda-cap",
        "1/3",
    ]);
    assert_eq!(found.status.code(), Some(EXIT_OK));

    let none = kannan(&["search-t", &fixture("swap.space"), "--lambda-cap", "1/3"]);
    assert_eq!(none.status.code(), Some(EXIT_NEGATIVE));

    let too_big = kannan(&[
        "search-t",
        &fixture("kannan23.space"),
        "--lambda-cap",
        "1/3",
    ]);
    assert_eq!(too_big.status.code(), Some(EXIT_BUDGET));
    assert!(!too_big.stderr.is_empty());

    let bad_cap = kannan(&["search-t", &fixture("swap.space"), "--lambda-cap", "x"]);
    assert_eq!(bad_cap.status.code(), Some(EXIT_INPUT));
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let r1 = scratch("search-1.json");
    let r2 = scratch("search-2.json");
    let args = |r: &PathBuf| {
        vec![
            "search-t".to_string(),
            fixture("branciari4.space"),
            "--lambda-cap".into(),
            "1/3".into(),
            "--report".into(),
            r.display().to_string(),
        ]
    };
    let a = Command::new(env!("CARGO_BIN_EXE_kannan"))
        .args(args(&r1))
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_kannan"))
        .args(args(&r2))
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);

    let j1 = std::fs::read_to_string(&r1).unwrap();
    let j2 = std::fs::read_to_string(&r2).unwrap();
    let d1 = ReportDocument::from_json(&j1).unwrap();
    let d2 = ReportDocument::from_json(&j2).unwrap();
    assert_eq!(d1.search, d2.search);
    assert_eq!(d1.to_json(), j1.trim_end());

    let cert = d1.search.unwrap().certificate.unwrap();
    assert_eq!(cert.t.table(), &[0, 2, 3, 1]);
    assert_eq!(cert.lambda, kannan::Rational::new(1, 3));
}

#[test]
fn library_entry_point_matches_binary() {
    let path = fixture("branciari4.space");
    let cli = Cli::try_parse_from(["kannan", "analyze", &path, "--aux", "T"]).unwrap();
    let outcome = execute(&cli.command);
    let bin = kannan(&["analyze", &path, "--aux", "T"]);
    assert_eq!(Some(outcome.exit_code), bin.status.code());
    assert_eq!(outcome.human, stdout(&bin));
    let report = outcome.report.unwrap();
    assert!(report.analysis.unwrap().generalized_theorem.applies);
}
