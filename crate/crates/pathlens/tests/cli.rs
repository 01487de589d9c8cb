mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{schema_errors, schema_validator, unexplained_nulls, write_series, E1_BENCHMARK, E1_PORTFOLIO};
use serde_json::Value;
use tempfile::TempDir;

fn pathlens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathlens")).args(args).env_remove("PATHLENS_CONFIG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        write_series(&dir.path().join("p.csv"), &E1_PORTFOLIO);
        write_series(&dir.path().join("b.csv"), &E1_BENCHMARK);
        let long: Vec<f64> = (0..48).map(|i| 0.04 * ((i as f64) * 0.9).sin() - 0.002).collect();
        write_series(&dir.path().join("long.csv"), &long);
        Self { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_string()
    }
}

#[test]
fn analyze_happy_path() {
    let f = Fixture::new();
    let (p, b) = (f.arg("p.csv"), f.arg("b.csv"));
    let o = pathlens(&[
        "analyze",
        "--portfolio",
        &p,
        "--benchmark",
        &b,
        "--frequency",
        "monthly",
        "--threshold",
        "0.10",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stderr.is_empty());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inputs"]["benchmark_label"], "b");
    assert_eq!(v["benchmark_episodes"].as_array().unwrap().len(), 1);
    assert!(schema_errors(&schema_validator(), &v).is_empty());
    assert!(unexplained_nulls(&v).is_empty());
}

#[test]
fn missing_file_exits_one_and_names_it() {
    let f = Fixture::new();
    let missing = f.arg("absent.csv");
    let o = pathlens(&["analyze", "--portfolio", &missing, "--benchmark", &f.arg("b.csv")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(&missing), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_row_reports_line() {
    let f = Fixture::new();
    std::fs::write(f.path("bad.csv"), "date,return\n2000-01-31,0.01\n2000-02-29,oops\n").unwrap();
    let o = pathlens(&["episodes", "--benchmark", &f.arg("bad.csv")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.csv:3"), "{}", stderr(&o));
}

#[test]
fn threshold_out_of_range_is_usage_error() {
    let f = Fixture::new();
    let o =
        pathlens(&["analyze", "--portfolio", &f.arg("p.csv"), "--benchmark", &f.arg("b.csv"), "--threshold", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("threshold"));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_flag_and_subcommand_are_usage_errors() {
    assert_eq!(pathlens(&["analyze", "--bogus"]).status.code(), Some(2));
    assert_eq!(pathlens(&["summarize"]).status.code(), Some(2));
    assert_eq!(pathlens(&[]).status.code(), Some(2));
    assert_eq!(pathlens(&["table-r", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn help_goes_to_stdout() {
    let o = pathlens(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("table-r"));
    assert!(o.stderr.is_empty());
}

#[test]
fn table_r_default_and_custom_depths() {
    let o = pathlens(&["table-r", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 11);

    let o = pathlens(&["table-r", "--depths", "0.33"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["required_recovery"].as_f64().unwrap() - 0.4925).abs() < 5e-5);
    let want = 1.0 / 0.67 - 1.0;
    assert!((rows[0]["required_recovery"].as_f64().unwrap() - want).abs() <= 1e-15 * want);

    let o = pathlens(&["table-r", "--depths", "-0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn compare_two_rules() {
    let f = Fixture::new();
    let o = pathlens(&[
        "compare",
        "--benchmark",
        &f.arg("long.csv"),
        "--rule",
        "constant:0.7",
        "--rule",
        "voltarget:0.10,12,1.5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("constant:0.7,constant:0.7,"));
    assert!(lines[2].starts_with("\"voltarget:0.10,12,1.5\",\"voltarget:0.1,12,1.5\","), "{}", lines[2]);
}

#[test]
fn compare_without_rules_is_usage_error() {
    let f = Fixture::new();
    let o = pathlens(&["compare", "--benchmark", &f.arg("long.csv")]);
    assert_eq!(o.status.code(), Some(2));
    let o = pathlens(&["compare", "--benchmark", &f.arg("long.csv"), "--rule", "leverage:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unit_constant_rule_has_zero_tracking_error() {
    let f = Fixture::new();
    let o = pathlens(&["compare", "--benchmark", &f.arg("long.csv"), "--rule", "constant:1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let designs = v["designs"].as_array().unwrap();
    assert_eq!(designs.len(), 1);
    assert_eq!(designs[0]["costs"]["tracking_error"], 0.0);
    assert_eq!(designs[0]["costs"]["turnover"], 0.0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let f = Fixture::new();
    let (p, b) = (f.arg("p.csv"), f.arg("b.csv"));
    for format in ["json", "csv", "markdown"] {
        let args = ["analyze", "--portfolio", &p, "--benchmark", &b, "--format", format, "--rule", "constant:0.5"];
        let first = pathlens(&args);
        let second = pathlens(&args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{format}");
    }
}

#[test]
fn out_writes_file_and_csv_bundle_directory() {
    let f = Fixture::new();
    let (p, b) = (f.arg("p.csv"), f.arg("b.csv"));
    let out = f.arg("report.md");
    let o = pathlens(&["analyze", "--portfolio", &p, "--benchmark", &b, "--format", "markdown", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("## 5. Cost of the design"));

    let dir = f.path("bundle");
    let o =
        pathlens(&["analyze", "--portfolio", &p, "--benchmark", &b, "--format", "csv", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let manifest = std::fs::read_to_string(dir.join("manifest.csv")).unwrap();
    for line in manifest.lines().skip(1) {
        let file = line.split(',').nth(1).unwrap();
        assert!(dir.join(file).exists(), "{file}");
    }
    assert!(!Path::new(&dir.join("comparisons.csv")).exists());
}

#[test]
fn exposure_file_supplies_costs() {
    let f = Fixture::new();
    std::fs::write(
        f.path("w.csv"),
        "date,exposure\n2000-01-31,1\n2000-02-29,0.5\n2000-03-31,0.5\n2000-04-30,0.5\n2000-05-31,1\n",
    )
    .unwrap();
    let o = pathlens(&[
        "analyze",
        "--portfolio",
        &f.arg("p.csv"),
        "--benchmark",
        &f.arg("b.csv"),
        "--exposure",
        &f.arg("w.csv"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["costs"]["status"], "supplied");
    // |Δw| sums to 1.0 over 5 monthly periods: 1.0 * 12 / 5
    assert!((v["costs"]["turnover"].as_f64().unwrap() - 2.4).abs() < 1e-12);
    assert!((v["costs"]["mean_exposure"].as_f64().unwrap() - 0.7).abs() < 1e-12);
}

#[test]
fn config_file_precedence() {
    let f = Fixture::new();
    let conf = f.path("run.conf");
    std::fs::write(
        &conf,
        format!(
            "input.portfolio = {}\ninput.benchmark = {}\nanalysis.threshold = 0.25\nanalysis.format = markdown\nprotocol.fee_treatment = gross\n",
            f.arg("p.csv"),
            f.arg("b.csv")
        ),
    )
    .unwrap();
    let conf = conf.to_str().unwrap();

    // Config alone: markdown, and threshold 0.25 finds no episode.
    let o = pathlens(&["analyze", "--config", conf]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("| Drawdown threshold | 25.0% |"));
    assert!(stdout(&o).contains("| Fee treatment | gross |"));

    // Flags win over the config file.
    let o = pathlens(&["analyze", "--config", conf, "--format", "json", "--threshold", "0.1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inputs"]["drawdown_threshold"], 0.1);
    assert_eq!(v["inputs"]["fee_treatment"], "gross");

    // The environment variable is the fallback for --config.
    let o = Command::new(env!("CARGO_BIN_EXE_pathlens"))
        .args(["analyze", "--format", "json"])
        .env("PATHLENS_CONFIG", conf)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inputs"]["drawdown_threshold"], 0.25);
}

#[test]
fn bad_config_is_usage_error_with_line() {
    let f = Fixture::new();
    let conf = f.path("bad.conf");
    std::fs::write(&conf, "analysis.format = json\nanalysis.speed = fast\n").unwrap();
    let o = pathlens(&["table-r", "--config", conf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2:"), "{}", stderr(&o));
}

#[test]
fn strict_alignment_and_inner_join() {
    let f = Fixture::new();
    write_series(&f.path("short.csv"), &E1_PORTFOLIO[..4]);
    let args = ["capture", "--portfolio", &f.arg("short.csv"), "--benchmark", &f.arg("b.csv")];
    assert_eq!(pathlens(&args).status.code(), Some(1));
    let mut joined = args.to_vec();
    joined.push("--allow-inner-join");
    let o = pathlens(&joined);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["capture"]["n_plus"].as_u64().unwrap() + v["capture"]["n_minus"].as_u64().unwrap(), 4);
}

#[test]
fn episodes_views() {
    let f = Fixture::new();
    let o = pathlens(&["episodes", "--benchmark", &f.arg("b.csv"), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("1,2000-01-31,,2000-02-29,2000-05-31,,0.19999999999999996,3,false"));

    let o = pathlens(&[
        "episodes",
        "--benchmark",
        &f.arg("b.csv"),
        "--portfolio",
        &f.arg("p.csv"),
        "--format",
        "markdown",
        "--extended-underwater",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Underwater (extended)"));
    assert_eq!(pathlens(&["episodes"]).status.code(), Some(2));
}
