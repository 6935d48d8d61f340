//! End-to-end tests of the binary: flag surface, config file layering,
//! exit codes, and byte-reproducible reports.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lieform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieform"))
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

#[test]
fn help_lists_every_subcommand() {
    let out = lieform(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "verify-closure",
        "verify-theorem41",
        "verify-quartic",
        "verify-lemma31",
        "verify-qdeform",
        "verify-fundamental",
        "spectra",
    ] {
        assert!(text.contains(name), "help must mention {name}");
    }
}

#[test]
fn spectra_reports_are_byte_identical_and_keep_timing_off_stdout() {
    let a = lieform(&["spectra", "--p", "0", "--q", "3", "--sign", "plus"]);
    let b = lieform(&["spectra", "--p", "0", "--q", "3", "--sign", "plus"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same config must render identically");
    let doc = stdout(&a);
    assert!(doc.starts_with("schema: lieform-report/1\n"));
    assert!(doc.contains("massSq=-4"));
    assert!(!doc.contains("finished in"), "timing belongs on stderr");
    assert!(stderr(&a).contains("finished in"));
}

#[test]
fn out_flag_writes_the_report_and_leaves_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = lieform(&["spectra", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc = fs::read_to_string(&path).unwrap();
    assert!(doc.starts_with("schema: lieform-report/1\n"));
    assert!(doc.ends_with("summary: 5 passed, 0 failed, 0 skipped\n"));
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.conf");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn config_file_supplies_defaults_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p=0\nq=2\nsign=minus\nseed=9\n");
    let from_file = lieform(&["spectra", "--config", &cfg]);
    assert_eq!(from_file.status.code(), Some(0));
    let doc = stdout(&from_file);
    assert!(doc.contains("param q: 2"));
    assert!(doc.contains("param sign: minus"));
    assert!(doc.contains("param seed: 9"));

    let overridden = lieform(&["spectra", "--config", &cfg, "--q", "3", "--sign", "plus"]);
    let doc = stdout(&overridden);
    assert!(doc.contains("param q: 3"), "flag must beat the file");
    assert!(doc.contains("param sign: plus"));
    assert!(doc.contains("param seed: 9"), "untouched keys still come from the file");
}

#[test]
fn config_q_values_feed_the_roundtrip_suite() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q-value=2\nq-value=3/2\n");
    let out = lieform(&["verify-qdeform", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("param t-values: formal,t=2,t=3/2"));
}

#[test]
fn configuration_problems_exit_2() {
    // bad flag value
    let out = lieform(&["spectra", "--sign", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("plus or minus"));
    // unknown config key
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "tempo=fast\n");
    let out = lieform(&["spectra", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tempo"));
    // suite preconditions
    let out = lieform(&["verify-qdeform", "--window", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand is a usage error
    let out = lieform(&["verify-everything"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed rational
    let out = lieform(&["verify-qdeform", "--q-value", "fast"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_checks_exit_1_and_still_render_the_report() {
    let out = lieform(&[
        "verify-quartic",
        "--convention",
        "eps=+,q4=root,y=+,c2p=-",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = stdout(&out);
    assert!(doc.contains("check [fail] quartic-residual"));
    assert!(doc.contains("summary: 1 passed, 1 failed"));
}

#[test]
fn quartic_passes_under_the_resolved_convention() {
    let out = lieform(&[
        "verify-quartic",
        "--convention",
        "eps=+,q4=root,y=+,c2p=+",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout(&out);
    assert!(doc.contains("check [pass] quartic-residual: residual vanishes"));
    assert!(doc.contains("param convention: eps=+,q4=root,y=+,c2p=+"));
}
