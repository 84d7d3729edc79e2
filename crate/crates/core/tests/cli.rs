use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use singularity_metric::io::parse_json_report;
use singularity_metric::{canonical_dataset, run};

const BIN: &str = env!("CARGO_BIN_EXE_singularity");
const CANONICAL: &str = include_str!("../data/canonical.toml");
const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/published_table.txt");

const TINY: &str = r#"schema_version = "singularity-dataset/1"
notes = ""

[[sorts]]
id = "S1"
name = "only"
description = ""

[[evidences]]
id = "Ev1"
name = "nothing"
description = ""

[[levels]]
name = "irrelevant"
given_h = 0.5
given_not_h = 0.5

[[levels]]
name = "weak"
given_h = 0.6
given_not_h = 0.4

[cells.S1]
Ev1 = "weak"
"#;

fn singularity(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SINGULARITY_DATASET")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn run_defaults_to_canonical_markdown() {
    let text = stdout(&singularity(&["run"]));
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| l.starts_with("| Ev"))
        .skip(1)
        .map(|l| l.trim_matches('|').split('|').map(str::trim).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    let s1: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    assert_eq!(&s1[..3], &["0.50000", "0.75000", "0.92308"]);

    let metric: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("Mean probability over sorts: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((metric - 0.834496158).abs() <= 5e-5);
}

#[test]
fn run_csv_shape() {
    let text = stdout(&singularity(&["run", "--format", "csv"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7 + 1);
    for l in &lines {
        assert_eq!(l.split(',').count(), 9 + 1, "{l}");
    }
    assert_eq!(lines[0], "Evidences,S1,S2,S3,S4,S5,S6,S7,S8,S9");
    assert!(lines[1..]
        .iter()
        .all(|l| l.split(',').skip(1).all(|c| c.contains('.'))));
}

#[test]
fn run_json_round_trips() {
    let text = stdout(&singularity(&["run", "--format", "json"]));
    assert_eq!(
        parse_json_report(&text).unwrap(),
        run(&canonical_dataset()).unwrap()
    );
}

#[test]
fn run_writes_out_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("table.md");
    let o = singularity(&["run", "--out", out.to_str().unwrap()]);
    assert!(stdout(&o).is_empty());
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        stdout(&singularity(&["run"]))
    );
}

#[test]
fn env_var_overrides_default_dataset() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tiny.toml", TINY);
    let out = Command::new(BIN)
        .args(["run", "--format", "json"])
        .env("SINGULARITY_DATASET", &path)
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["metric"].as_f64().unwrap() - 0.6).abs() < 1e-15);

    // --dataset wins over the environment.
    let canonical = write(&dir, "canonical.toml", CANONICAL);
    let out = Command::new(BIN)
        .args(["run", "--format", "json", "--dataset", &canonical])
        .env("SINGULARITY_DATASET", &path)
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sorts"].as_array().unwrap().len(), 9);
}

#[test]
fn validate_reports_cell_errors() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.toml", CANONICAL);
    assert!(stdout(&singularity(&["validate", "--dataset", &good])).contains("valid"));

    let bad = write(
        &dir,
        "bad.toml",
        &TINY.replace("Ev1 = \"weak\"", "Ev1 = \"magic\""),
    );
    let out = singularity(&["validate", "--dataset", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(S1, Ev1)") && err.contains("magic"), "{err}");

    let version = write(&dir, "v.toml", &TINY.replace("dataset/1", "dataset/9"));
    assert_eq!(
        singularity(&["validate", "--dataset", &version])
            .status
            .code(),
        Some(1)
    );

    let syntax = write(&dir, "s.toml", "schema_version = ");
    let out = singularity(&["validate", "--dataset", &syntax]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(singularity(&[]).status.code(), Some(2));
    assert_eq!(
        singularity(&["run", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(
        singularity(&["sense", "--delta", "0.1"]).status.code(),
        Some(2)
    );
    assert_eq!(singularity(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(singularity(&["--help"]).status.code(), Some(0));

    let missing = singularity(&["run", "--dataset", "/nonexistent/x.toml"]);
    assert_eq!(missing.status.code(), Some(1));
    let negative = singularity(&["sense", "--delta=-0.1", "--samples", "5", "--seed", "1"]);
    assert_eq!(negative.status.code(), Some(1));
    let zero = singularity(&["sense", "--delta", "0.1", "--samples", "0", "--seed", "1"]);
    assert_eq!(zero.status.code(), Some(1));
}

#[test]
fn fit_accepts_dataset_as_schedule() {
    let dir = TempDir::new().unwrap();
    let schedule = write(&dir, "canonical.toml", CANONICAL);
    let with = stdout(&singularity(&[
        "fit",
        "--table",
        TABLE,
        "--schedule",
        &schedule,
    ]));
    let without = stdout(&singularity(&["fit", "--table", TABLE]));
    assert_eq!(with, without);
    assert!(with.contains("monotonicity-violation"));
}

#[test]
fn fit_rejects_garbage_table() {
    let dir = TempDir::new().unwrap();
    let table = write(&dir, "t.txt", "hello world\n");
    assert_eq!(
        singularity(&["fit", "--table", &table]).status.code(),
        Some(1)
    );
}

#[test]
fn tornado_lists_every_cell_twice() {
    let v: Value =
        serde_json::from_str(&stdout(&singularity(&["tornado", "--format", "json"]))).unwrap();
    let entries = v["tornado"].as_array().unwrap();
    assert_eq!(entries.len(), 126);
    let deltas: Vec<f64> = entries
        .iter()
        .map(|e| e["delta"].as_f64().unwrap().abs())
        .collect();
    assert!(deltas.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(v["metric_sd"].as_f64(), Some(0.0));
}

#[test]
fn sense_markdown_and_csv() {
    let md = stdout(&singularity(&[
        "sense",
        "--delta",
        "0.02",
        "--samples",
        "50",
        "--seed",
        "3",
    ]));
    assert!(!md.is_empty());
    let csv = stdout(&singularity(&[
        "sense",
        "--delta",
        "0.02",
        "--samples",
        "50",
        "--seed",
        "3",
        "--format",
        "csv",
    ]));
    assert!(csv.starts_with("statistic,value\nmean,"));
}

#[test]
fn export_matches_shipped_file() {
    assert_eq!(stdout(&singularity(&["export"])), CANONICAL);
}
