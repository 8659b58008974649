//! End-to-end runs of the `permprob` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use permprob_cli::output::{dist_csv, exact_csv, read_dist_csv, read_exact_csv, read_float_table, write_float_table};
use tempfile::TempDir;

fn permprob(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permprob"))
        .args(args)
        .current_dir(dir)
        .env_remove("PERMPROB_CONFIG")
        .env_remove("PERMPROB_OEIS_URL")
        .env_remove("PERMPROB_OEIS_TIMEOUT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn dist_reproduces_w_table_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["dist", "--family", "C", "--n", "6"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("n,m,count\n1,0,1\n1,1,0\n"));
    assert!(text.ends_with("6,4,135\n6,5,264\n6,6,265\n"));
    assert!(!text.contains('\r'));
    assert_eq!(dist_csv(&read_dist_csv(&text).unwrap()), text);
}

#[test]
fn dist_json_has_string_counts() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["dist", "--family", "B", "--n", "8", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], "B");
    assert_eq!(v["rows"][7]["counts"][8], "16687");
}

#[test]
fn compare_csv_round_trips_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["compare", "--n", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let (header, rows) = read_float_table(&text).unwrap();
    assert_eq!(header, ["r", "Q_A", "P_A", "Q_B", "P_B", "Q_C", "P_C"]);
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0][1..], [1.0; 6]);
    assert_eq!(write_float_table(&header, &rows), text);
    // one max-difference note per family
    assert_eq!(stderr(&out).matches("max |Q - P|").count(), 3);
}

#[test]
fn compare_n2_curves_coincide() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["compare", "--n", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for s in v["series"].as_array().unwrap() {
        assert!(s["max_abs_diff"].as_f64().unwrap() <= 1e-12, "{s}");
    }
}

#[test]
fn svg_is_deterministic_and_self_contained() {
    let dir = TempDir::new().unwrap();
    let args = ["compare", "--n", "3", "--format", "svg", "--out", "fig.svg"];
    assert_eq!(code(&permprob(dir.path(), &args)), 0);
    let first = fs::read_to_string(dir.path().join("fig.svg")).unwrap();
    assert_eq!(code(&permprob(dir.path(), &args)), 0);
    let second = fs::read_to_string(dir.path().join("fig.svg")).unwrap();
    assert_eq!(first, second);
    assert!(first.starts_with("<svg") || first.starts_with("<?xml"));
    assert!(first.trim_end().ends_with("</svg>"));
    assert!(!first.contains("href"), "external reference in SVG");
}

#[test]
fn exact_csv_round_trips_and_notes_polynomial() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["exact", "--family", "B", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let counts = read_exact_csv(&text).unwrap();
    assert_eq!(counts, [1, 6, 13, 10, 2, 0, 0, 0]);
    assert_eq!(exact_csv(&counts), text);
    assert!(stderr(&out).contains("P(per B_3 = 0)"));
}

#[test]
fn guard_exit_code_and_force() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["exact", "--family", "A", "--n", "6"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("exceeds the limit"));
    let out = permprob(dir.path(), &["dist", "--family", "C", "--n", "31"]);
    assert_eq!(code(&out), 3);
    let out = permprob(dir.path(), &["dist", "--family", "C", "--n", "31", "--force"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["dist", "--n", "3"][..],
        &["dist", "--family", "D", "--n", "3"],
        &["exact", "--family", "A", "--n", "0"],
        &["compare", "--n", "3", "--grid", "1"],
        &["dist", "--family", "A", "--n", "3", "--format", "svg"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&permprob(dir.path(), args)), 2, "{args:?}");
    }
}

#[test]
fn validate_passes_offline() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["validate"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("A000255"));
}

#[test]
fn validate_flags_tampered_table() {
    let dir = TempDir::new().unwrap();
    let out = permprob(dir.path(), &["dist", "--family", "C", "--n", "6", "--out", "w.csv"]);
    assert_eq!(code(&out), 0);
    let path = dir.path().join("w.csv");
    let good = fs::read_to_string(&path).unwrap();

    let out = permprob(dir.path(), &["validate", "--family", "C", "--table", "w.csv"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    fs::write(&path, good.replace("6,6,265", "6,6,266")).unwrap();
    let out = permprob(dir.path(), &["validate", "--family", "C", "--table", "w.csv"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("expected 265"), "{}", stdout(&out));
}

#[test]
fn oeis_unreachable_is_skipped_not_failed() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_permprob"))
        .args(["seq", "--oeis"])
        .current_dir(dir.path())
        .env_remove("PERMPROB_CONFIG")
        .env("PERMPROB_OEIS_URL", "http://127.0.0.1:1")
        .env("PERMPROB_OEIS_TIMEOUT", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("lookup skipped"));
}

#[test]
fn flags_override_config_file() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("permprob.conf"),
        "# defaults\nfamily = B\nn = 4\nformat = json\n",
    )
    .unwrap();

    let out = permprob(dir.path(), &["dist"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], "B");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);

    let out = permprob(dir.path(), &["dist", "--family", "C", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("4,4,9\n"));
}

#[test]
fn explicit_config_path_must_exist() {
    let dir = TempDir::new().unwrap();
    let out = permprob(
        dir.path(),
        &["--config", "missing.conf", "dist", "--family", "A", "--n", "2"],
    );
    assert_eq!(code(&out), 2);
    fs::write(dir.path().join("bad.conf"), "colour = blue\n").unwrap();
    let out = permprob(
        dir.path(),
        &["--config", "bad.conf", "dist", "--family", "A", "--n", "2"],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown key"));
}
