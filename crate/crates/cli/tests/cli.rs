//! End-to-end runs of the `mfbm` binary.

use std::io::Cursor;
use std::process::{Command, Output};

use mfbm::expansion::{covariance_closed, ModelParams};
use mfbm::io::{cov_from_table, field_from_table, rate_from_table, Format, Table};

fn mfbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfbm")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = mfbm(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    mfbm(args).status.code().unwrap()
}

fn table(text: &str, format: Format) -> Table {
    Table::read(format, Cursor::new(text)).unwrap()
}

#[test]
fn help_and_version() {
    assert!(ok(&["--help"]).contains("sample"));
    assert!(ok(&["--version"]).starts_with("mfbm "));
}

#[test]
fn zeros_of_half_order_are_multiples_of_pi() {
    let t = table(&ok(&["zeros", "--nu", "0.5", "--count", "3"]), Format::Csv);
    let col = t.column("zero").unwrap();
    for (k, row) in t.rows.iter().enumerate() {
        let z = row[col].as_f64().unwrap();
        assert!((z - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
    }
}

#[test]
fn zeros_use_and_fill_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("zeros.jsonl");
    let cache = cache.to_str().unwrap();
    let first = ok(&["zeros", "--nu", "-0.4", "--count", "6", "--cache", cache]);
    assert!(std::fs::metadata(cache).unwrap().len() > 0);
    assert_eq!(ok(&["zeros", "--nu", "-0.4", "--count", "6", "--cache", cache]), first);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&["sample", "--dim", "2", "--hurst", "1.5"]), 2);
    assert_eq!(code(&["sample", "--dim", "0", "--hurst", "0.5"]), 2);
    assert_eq!(code(&["sample", "--dim", "3", "--hurst", "0.5", "--grid", "disk:5"]), 2);
    assert_eq!(
        code(&["sample", "--dim", "2", "--hurst", "0.5", "--q", "4", "--rect", "2,2"]),
        2
    );
    assert_eq!(code(&["sample", "--dim", "2", "--hurst", "0.5", "--q", "0.5"]), 2);
    assert_eq!(
        code(&["cov", "--dim", "2", "--hurst", "0.5", "--x", "0.9,0.9", "--y", "0,0"]),
        2
    );
    assert_eq!(code(&["zeros", "--nu", "-1.5", "--count", "3"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn degenerate_fit_exits_with_three() {
    let args = [
        "rate",
        "--dim",
        "2",
        "--hurst",
        "0.5",
        "--q",
        "64",
        "--levels",
        "1,1.1,1.2,1.3,1.4",
        "--reps",
        "100",
        "--grid",
        "halton:8",
    ];
    let out = mfbm(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn sample_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.jsonl");
    let p = path.to_str().unwrap();
    let printed = ok(&[
        "sample", "--dim", "2", "--hurst", "0.4", "--q", "64", "--grid", "disk:7", "--format", "jsonl",
    ]);
    ok(&[
        "sample", "--dim", "2", "--hurst", "0.4", "--q", "64", "--grid", "disk:7", "--format", "jsonl", "--output", p,
    ]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(printed, written);
    let s = field_from_table(&table(&written, Format::Jsonl)).unwrap();
    assert_eq!(s.params, ModelParams::new(2, 0.4).unwrap());
    assert_eq!(s.points.len(), s.values.len());
    assert!(s.points.iter().all(|x| x[0] * x[0] + x[1] * x[1] <= 1.0 + 1e-12));
}

#[test]
fn sample_is_byte_identical_across_thread_counts() {
    let base = [
        "sample",
        "--dim",
        "3",
        "--hurst",
        "0.7",
        "--q",
        "128",
        "--grid",
        "halton:200",
        "--seed",
        "5",
    ];
    let one = ok(&[&["--threads", "1"], &base[..]].concat());
    let four = ok(&[&["--threads", "4"], &base[..]].concat());
    assert_eq!(one, four);
    let other = ok(&[&base[..9], &["--seed", "6"]].concat());
    assert_ne!(one, other);
}

#[test]
fn cov_reports_partial_and_closed_values() {
    let text = ok(&[
        "cov", "--dim", "1", "--hurst", "0.5", "--x", "0.5", "--y", "0.25", "--q", "64",
    ]);
    let (params, records) = cov_from_table(&table(&text, Format::Csv)).unwrap();
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!(r.closed, covariance_closed(&params, &r.x, &r.y).unwrap());
    assert_eq!(r.abs_error, (r.partial - r.closed).abs());
    // coarse truncation, but clearly on the way
    assert!(r.abs_error < 0.05 * r.closed);

    let text = ok(&["cov", "--dim", "2", "--hurst", "0.3", "--count", "5", "--rect", "3,4"]);
    let (_, records) = cov_from_table(&table(&text, Format::Csv)).unwrap();
    assert_eq!(records.len(), 5);
}

#[test]
fn rate_output_parses_back() {
    let text = ok(&[
        "rate",
        "--dim",
        "1",
        "--hurst",
        "0.5",
        "--q",
        "4096",
        "--levels",
        "4,16,64,256,1024",
        "--reps",
        "100",
        "--grid",
        "halton:64",
        "--format",
        "jsonl",
    ]);
    let report = rate_from_table(&table(&text, Format::Jsonl)).unwrap();
    assert_eq!(report.p_values.len(), 5);
    assert!(report.fitted_slope < 0.0);
    assert!(report.log_correction_used);
}

#[test]
fn harmonics_lists_every_basis_element() {
    let t = table(&ok(&["harmonics", "--dim", "3", "--degree", "2"]), Format::Csv);
    // 1 + 3 + 5
    assert_eq!(t.rows.len(), 9);
}
