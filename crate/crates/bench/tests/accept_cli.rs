use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use submeta_experiments::CSV_HEADER;

fn submeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submeta")).args(args).output().unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("cfg.toml");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const SMALL: &str = r#"
suite = "coverage"
n = 30
m_train = 4
m_test = 3
methods = ["greedy-test", "meta-greedy", "random"]
seeds = [0, 1]
[sweep]
kind = "vary-l"
k = 6
l = [2, 4]
"#;

#[test]
fn counterexample_scope_passes() {
    let out = submeta(&["verify", "--scope", "counterexample"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn bounds_scope_reports_the_certificate_shortfall() {
    let out = submeta(&["verify", "--scope", "bounds"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1));
    assert!(text.contains("FAIL"), "{text}");
}

#[test]
fn counterexample_command_prints_rectangles() {
    let out = submeta(&["counterexample"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("ACDJ") && text.contains("IDEH"), "{text}");
}

#[test]
fn bad_config_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "suite = \"coverage\"\nbogus = 1\n");
    assert_eq!(submeta(&["run", "--config", &cfg]).status.code(), Some(2));
    let missing = dir.path().join("absent.toml");
    assert_eq!(submeta(&["run", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
    let bad_budget = write_config(dir.path(), &SMALL.replace("l = [2, 4]", "l = [6]"));
    assert_eq!(submeta(&["run", "--config", &bad_budget]).status.code(), Some(2));
}

#[test]
fn run_prints_csv_and_honours_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = submeta(&["run", "--config", &cfg, "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER.join(",").as_str()));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2 * 3);
    assert!(rows.iter().all(|r| r.split(',').nth(3) == Some("7")));
}

#[test]
fn run_writes_files_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let csv = dir.path().join("out.csv");
    let plots = dir.path().join("plots");
    let out = submeta(&[
        "run",
        "--config",
        &cfg,
        "--out",
        csv.to_str().unwrap(),
        "--emit-plot-data",
        plots.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written = fs::read_to_string(&csv).unwrap();
    assert_eq!(written.lines().count(), 1 + 2 * 3 * 2);
    for m in ["greedy-test", "meta-greedy", "random"] {
        let series = fs::read_to_string(plots.join(format!("{m}.csv"))).unwrap();
        assert_eq!(series.lines().count(), 3);
    }
}

#[test]
fn shipped_configs_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for name in ["vary-l.toml", "vary-k.toml"] {
        let cfg = submeta_experiments::ExperimentConfig::load(&root.join(name)).unwrap();
        cfg.validate(cfg.n).unwrap();
    }
}
