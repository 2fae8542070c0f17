//! Exit-status contract, JSON output and the documented command examples.

use std::path::PathBuf;
use std::process::Command;

use cli::{run_args, EXIT_OK, EXIT_SURPRISE, EXIT_USAGE};
use modular_verify::{Status, VerifyReport};

fn modcheck(args: &[&str]) -> cli::Outcome {
    run_args(std::iter::once("modcheck").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modcheck-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--id", "NO-SUCH"][..],
        &["verify"],
        &["expand", "--genus", "Q", "--dim", "4"],
        &["expand", "--genus", "nope", "--dim", "6"],
        &["expand", "--genus", "Q", "--dim", "6", "--qmax", "9"],
        &["theta-check", "--samples", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(modcheck(args).code, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn single_record_matches() {
    let out = modcheck(&["verify", "--id", "THM-2.4a"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("THM-2.4a") && out.stdout.contains("match"));
}

#[test]
fn expand_shows_the_q0_constant() {
    let out = modcheck(&["expand", "--genus", "Qtilde", "--dim", "5", "--qmax", "0"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("8*A}"), "{}", out.stdout);
    let out = modcheck(&["expand", "--genus", "Q", "--dim", "6", "--qmax", "2"]);
    assert!(out.stdout.contains("16*A}"), "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.starts_with("q^")).count(), 4);
}

#[test]
fn decompose_reports_zero_residual() {
    let path = scratch("decompose.json");
    let out = modcheck(&["decompose", "--genus", "Ell", "--dim", "10", "--l", "3", "--zmax", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["residual_zero"], true);
    assert_eq!(v["weight"], 4);
    assert_eq!(v["basis"][0], "E4");
}

#[test]
fn report_json_round_trips() {
    let path = scratch("report.json");
    let out = modcheck(&["verify", "--id", "THM-2.5b", "--id", "THM-2.7b", "--json", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let text = std::fs::read_to_string(&path).unwrap();
    let reports: Vec<VerifyReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["THM-2.5b", "THM-2.7b"]);
    assert_eq!(reports[1].status, Status::Mismatch);
    let again: Vec<VerifyReport> = serde_json::from_str(&serde_json::to_string(&reports).unwrap()).unwrap();
    assert_eq!(again, reports);
}

#[test]
fn unexpected_status_exits_1() {
    let path = scratch("expectations.json");
    std::fs::write(&path, r#"{"THM-2.4a": {"status": "mismatch"}}"#).unwrap();
    let out = modcheck(&["verify", "--id", "THM-2.4a", "--expectations", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_SURPRISE);
    assert!(out.stderr.contains("surprise"));
}

#[test]
fn theta_check_and_catalog() {
    let out = modcheck(&["theta-check", "--samples", "5"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let out = modcheck(&["catalog"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("PROP-3.5.1-d4l2"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_modcheck");
    let ok = Command::new(bin).args(["verify", "--id", "THM-2.10a"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["verify", "--id", "NO-SUCH"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
