use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use log::info;
use rayon::prelude::*;
use submeta_core::data::{
    load_pickups, load_ratings, make_movielens_tasks, make_rideshare_task, sample_ground, synthetic_suite,
    MovieLensParams, PickupColumns, PickupRecord, RatingsTable, RideshareParams, SuiteKind, TaskSampler,
};
use submeta_core::meta::{run_method_suite, Method, MethodReport, SuiteOptions};
use submeta_core::{Budget, Error, Oracle, Result};

use crate::config::ExperimentConfig;

pub const CSV_HEADER: [&str; 9] = [
    "sweep_k",
    "sweep_l",
    "method",
    "seed",
    "avg_value",
    "normalized",
    "train_calls",
    "test_calls_per_task",
    "wall_ms",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub k: usize,
    pub l: usize,
    pub method: Method,
    pub seed: u64,
    pub avg_value: f64,
    pub normalized: f64,
    pub train_calls: u64,
    pub test_calls_per_task: f64,
    /// Largest per-task test call count (not written to the CSV).
    pub max_test_calls: u64,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResult {
    /// Sorted by sweep point, method, seed.
    pub rows: Vec<ResultRow>,
}

impl ExperimentResult {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.k.to_string(),
                r.l.to_string(),
                r.method.to_string(),
                r.seed.to_string(),
                r.avg_value.to_string(),
                r.normalized.to_string(),
                r.train_calls.to_string(),
                r.test_calls_per_task.to_string(),
                r.wall_ms.to_string(),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("ascii output"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_csv()?)?;
        Ok(())
    }

    /// Mean over seeds of one column at one sweep point.
    pub fn mean(&self, method: Method, k: usize, l: usize, column: impl Fn(&ResultRow) -> f64) -> Option<f64> {
        let v: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.method == method && r.k == k && r.l == l)
            .map(column)
            .collect();
        (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
    }

    /// One `<method>.csv` per method: normalized value across seeds per sweep point.
    pub fn write_plot_data(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let mut series: BTreeMap<Method, BTreeMap<(usize, usize), Vec<&ResultRow>>> = BTreeMap::new();
        for r in &self.rows {
            series.entry(r.method).or_default().entry((r.k, r.l)).or_default().push(r);
        }
        for (method, points) in series {
            let mut text = String::from("sweep_k,sweep_l,mean_normalized,min_normalized,max_normalized,mean_value,seeds\n");
            for ((k, l), rows) in points {
                let norm: Vec<f64> = rows.iter().map(|r| r.normalized).collect();
                let count = norm.len() as f64;
                text.push_str(&format!(
                    "{k},{l},{},{},{},{},{}\n",
                    norm.iter().sum::<f64>() / count,
                    norm.iter().copied().fold(f64::INFINITY, f64::min),
                    norm.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                    rows.iter().map(|r| r.avg_value).sum::<f64>() / count,
                    rows.len()
                ));
            }
            fs::write(dir.join(format!("{method}.csv")), text)?;
        }
        Ok(())
    }
}

/// Loaded inputs shared by all seeds.
enum Source {
    Synthetic(SuiteKind),
    Pickups(Vec<PickupRecord>),
    MovieLens(RatingsTable, MovieLensParams),
}

struct Tasks {
    train: Vec<Oracle>,
    test: Vec<Oracle>,
}

fn required<'a, T>(value: &'a Option<T>, name: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| Error::Input(format!("data.{name} is required for this suite")))
}

fn load_source(cfg: &ExperimentConfig) -> Result<(Source, usize)> {
    let d = &cfg.data;
    match cfg.suite.as_str() {
        "pickups" => {
            let defaults = PickupColumns::default();
            let columns = PickupColumns {
                latitude: d.latitude_column.clone().unwrap_or(defaults.latitude),
                longitude: d.longitude_column.clone().unwrap_or(defaults.longitude),
                datetime: d.datetime_column.clone().unwrap_or(defaults.datetime),
                delimiter: d.delimiter.as_deref().map_or(b',', |s| s.as_bytes()[0]),
            };
            let load = load_pickups(required(&d.pickups, "pickups")?, d.limit, &columns)?;
            Ok((Source::Pickups(load.records), cfg.n))
        }
        "movielens" => {
            let (table, _) = load_ratings(
                required(&d.ratings, "ratings")?,
                required(&d.movies, "movies")?,
                d.delimiter.as_deref().unwrap_or("::"),
            )?;
            let defaults = MovieLensParams::default();
            let params = MovieLensParams {
                top_movies: d.top_movies.unwrap_or(defaults.top_movies),
                top_users: d.top_users.unwrap_or(defaults.top_users),
                train_users: d.train_users.unwrap_or(defaults.train_users),
                test_users: d.test_users.unwrap_or(defaults.test_users),
                users_per_task: d.users_per_task.unwrap_or(defaults.users_per_task),
                train_tasks: cfg.m_train,
                test_tasks: cfg.m_test,
            };
            // ground-set size follows from the data
            let probe = make_movielens_tasks(&table, &MovieLensParams { train_tasks: 0, test_tasks: 0, ..params.clone() }, &mut TaskSampler::new(0))?;
            let n = probe.movies.len();
            Ok((Source::MovieLens(table, params), n))
        }
        other => Ok((Source::Synthetic(other.parse()?), cfg.n)),
    }
}

fn build_tasks(source: &Source, cfg: &ExperimentConfig, n: usize, seed: u64) -> Result<Tasks> {
    match source {
        Source::Synthetic(kind) => {
            let s = synthetic_suite(*kind, n, cfg.m_train, cfg.m_test, seed)?;
            Ok(Tasks {
                train: s.train,
                test: s.test,
            })
        }
        Source::Pickups(records) => {
            let mut sampler = TaskSampler::new(seed);
            let ground = sample_ground(records, n, &mut sampler)?;
            let params = RideshareParams::default();
            let task = |sampler: &mut TaskSampler| -> Result<Oracle> {
                let at = records[sampler.distinct(records.len(), 1)[0]].timestamp;
                Ok(Oracle::new(make_rideshare_task(records, at, &ground, &params, sampler)?.objective))
            };
            let train = (0..cfg.m_train).map(|_| task(&mut sampler)).collect::<Result<_>>()?;
            let test = (0..cfg.m_test).map(|_| task(&mut sampler)).collect::<Result<_>>()?;
            Ok(Tasks { train, test })
        }
        Source::MovieLens(table, params) => {
            let s = make_movielens_tasks(table, params, &mut TaskSampler::new(seed))?;
            Ok(Tasks {
                train: s.train,
                test: s.test,
            })
        }
    }
}

fn rows_from(reports: Vec<MethodReport>, k: usize, l: usize, seed: u64, wall_ms: u64) -> Vec<ResultRow> {
    reports
        .into_iter()
        .map(|r| ResultRow {
            k,
            l,
            method: r.method,
            seed,
            avg_value: r.avg_value,
            normalized: r.normalized,
            train_calls: r.train_calls,
            test_calls_per_task: r.test_calls_per_task,
            max_test_calls: r.max_test_calls,
            wall_ms,
        })
        .collect()
}

fn run_point(tasks: &Tasks, cfg: &ExperimentConfig, methods: &[Method], n: usize, (k, l): (usize, usize), seed: u64) -> Result<Vec<ResultRow>> {
    let budget = Budget::new(k, l, n)?;
    let opts = |methods: Vec<Method>| SuiteOptions {
        methods,
        q: cfg.q_at(n, k, l),
        seed,
    };
    if !cfg.timing {
        let reports = run_method_suite(&tasks.train, &tasks.test, budget, &opts(methods.to_vec()))?;
        return Ok(rows_from(reports, k, l, seed, 0));
    }
    let mut rows = Vec::new();
    for &m in methods {
        let start = Instant::now();
        let reports = run_method_suite(&tasks.train, &tasks.test, budget, &opts(vec![m]))?;
        rows.extend(rows_from(reports, k, l, seed, start.elapsed().as_millis() as u64));
    }
    Ok(rows)
}

/// Builds the task suite once per seed, runs every method at every sweep
/// point, and returns the rows in a fixed order. Nothing is written.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let methods = cfg.parsed_methods()?;
    let (source, n) = load_source(cfg)?;
    let points = cfg.validate(n)?;
    info!("{} seeds x {} sweep points x {} methods", cfg.seeds.len(), points.len(), methods.len());

    let suites: Vec<(u64, Tasks)> = cfg
        .seeds
        .par_iter()
        .map(|&seed| build_tasks(&source, cfg, n, seed).map(|t| (seed, t)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(&(u64, Tasks), (usize, usize))> =
        suites.iter().flat_map(|s| points.iter().map(move |&p| (s, p))).collect();
    let mut rows: Vec<ResultRow> = jobs
        .par_iter()
        .map(|((seed, tasks), point)| run_point(tasks, cfg, &methods, n, *point, *seed))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    rows.sort_by(|a, b| (a.k, a.l, a.method, a.seed).cmp(&(b.k, b.l, b.method, b.seed)));
    Ok(ExperimentResult { rows })
}

/// [`run_experiment`] plus the configured CSV and plot-data outputs.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let result = run_experiment(cfg)?;
    if let Some(out) = &cfg.out {
        result.write_csv(out)?;
    }
    if let Some(dir) = &cfg.plot_dir {
        result.write_plot_data(dir)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(methods: &str) -> ExperimentConfig {
        ExperimentConfig::from_toml(&format!(
            r#"
suite = "coverage"
n = 30
m_train = 3
m_test = 3
methods = [{methods}]
seeds = [4, 1]
[sweep]
kind = "vary-l"
k = 6
l = [2, 4]
"#
        ))
        .unwrap()
    }

    #[test]
    fn greedy_test_only_is_one() {
        let r = run_experiment(&config("\"greedy-test\"")).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|r| r.normalized == 1.0));
        assert_eq!((r.rows[0].l, r.rows[0].seed), (2, 1));
    }

    #[test]
    fn row_count_and_csv() {
        let r = run_experiment(&config("\"meta-greedy\", \"random\", \"greedy-train\"")).unwrap();
        assert_eq!(r.rows.len(), 2 * 3 * 2);
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("sweep_k,sweep_l,method,seed,avg_value,normalized,train_calls,test_calls_per_task,wall_ms\n"));
        assert_eq!(csv.lines().count(), 13);
        assert_eq!(csv, run_experiment(&config("\"meta-greedy\", \"random\", \"greedy-train\"")).unwrap().to_csv().unwrap());
    }

    #[test]
    fn timing_does_not_change_values() {
        let mut cfg = config("\"meta-greedy\", \"randomized-meta-greedy\"");
        let plain = run_experiment(&cfg).unwrap();
        cfg.timing = true;
        let timed = run_experiment(&cfg).unwrap();
        for (a, b) in plain.rows.iter().zip(&timed.rows) {
            assert_eq!((a.method, a.avg_value, a.train_calls), (b.method, b.avg_value, b.train_calls));
        }
    }

    #[test]
    fn plot_data_files() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_experiment(&config("\"greedy-test\", \"meta-greedy\"")).unwrap();
        r.write_plot_data(dir.path()).unwrap();
        let text = fs::read_to_string(dir.path().join("meta-greedy.csv")).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(dir.path().join("greedy-test.csv").exists());
    }
}
