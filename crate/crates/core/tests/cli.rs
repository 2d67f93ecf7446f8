//! End-to-end tests of the `deltagroup` binary against golden outputs.
//!
//! Set `DELTAGROUP_BLESS=1` to rewrite the golden files from the current
//! binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deltagroup"))
}

fn manifest_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn assert_golden(name: &str, actual: &str) {
    let path = manifest_path("tests/golden").join(name);
    if std::env::var_os("DELTAGROUP_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        expected == actual,
        "output differs from {}\n--- expected\n{expected}\n--- actual\n{actual}",
        path.display()
    );
}

#[test]
fn census_over_bundled_catalog_matches_golden() {
    let o = run(&["census", "--delta-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("census_desk_delta5.txt", &stdout(&o));
}

#[test]
fn census_over_complete_64_catalog_matches_golden() {
    let catalog = manifest_path("data/smallgroups-64.txt");
    let o = run(&["census", "--catalog", catalog.to_str().unwrap(), "--delta-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("census_64_delta8.txt", &stdout(&o));
}

#[test]
fn delta_report_matches_golden() {
    let o = run(&["delta", "--group", "C3:C4@2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("delta_c3_c4.txt", &stdout(&o));
}

#[test]
fn census_is_deterministic() {
    let a = run(&["census", "--delta-max", "6"]);
    let b = run(&["census", "--delta-max", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["census", "--delta-max", "6", "--format", "structured"]);
    let b = run(&["census", "--delta-max", "6", "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn partial_buckets_are_marked() {
    let o = run(&["census", "--delta-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("with difference 6 (partial: needs orders up to 48, catalog complete through 40)"));
}

#[test]
fn structured_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    let o = run(&[
        "census",
        "--delta-max",
        "3",
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["delta_max"], 3);
    assert_eq!(v["buckets"][2]["groups"][1]["name"], "Q8");
    assert_eq!(v["buckets"][2]["groups"][1]["id"]["index"], 4);
}

#[test]
fn verify_bundled_catalog_is_clean() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("groups checked: 181"));
    assert!(text.contains("equality cases |G| = 8 delta: [ 8, 3 ] [ 16, 11 ] [ 32, 46 ]"));
    assert!(text.contains("bound violations: 0"));
}

#[test]
fn validate_reports_diagnostics_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "!complete 4\n4 1 C4 : (1,2,3,4)\n4 2 C4 : (1,3,2,4)\n").unwrap();
    let o = run(&["catalog", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[ 4, 2 ]: isomorphic to [ 4, 1 ]"), "{text}");
}

#[test]
fn bundled_catalogs_validate_cleanly() {
    let o = run(&["catalog", "validate", manifest_path("data/desk_catalog.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("181 entries, 0 diagnostics\n"));
}

#[test]
fn input_errors_exit_two() {
    let o = run(&["census", "--delta-max", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["census", "--catalog", "/nonexistent/catalog.txt", "--delta-max", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/catalog.txt"));

    let o = run(&["delta", "--group", "C3:"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["oracle", "enumerate", "11"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["census"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_catalog_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "# header\n8 1 C8 : (1,2,3,4,5,6,7,8)\n8 2 C4xC2 (1,2,3,4) ; (5,6)\n").unwrap();
    let o = run(&["census", "--catalog", path.to_str().unwrap(), "--delta-max", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn oracle_lists_order_eight() {
    let o = run(&["oracle", "enumerate", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("5 groups of order 8\n"));
    assert_eq!(text.matches("nonabelian").count(), 2);
}

#[test]
fn synthesize_small_catalog_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("synth.txt");
    let o = run(&["catalog", "synthesize", "--max-order", "16", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["catalog", "validate", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("42 entries, 0 diagnostics\n"));
}
