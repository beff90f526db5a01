use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use submeta_core::meta::Method;
use submeta_core::{Budget, Error, Result};

/// Which budgets an experiment visits.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Sweep {
    /// fixed `k`, one point per `l`
    VaryL { k: usize, l: Vec<usize> },
    /// one point per `k`, with `l = floor(ratio * k)`
    VaryK { k: Vec<usize>, ratio: f64 },
}

impl Sweep {
    pub fn points(&self) -> Vec<(usize, usize)> {
        match self {
            Sweep::VaryL { k, l } => l.iter().map(|&l| (*k, l)).collect(),
            Sweep::VaryK { k, ratio } => k.iter().map(|&k| (k, (ratio * k as f64).floor() as usize)).collect(),
        }
    }
}

/// File inputs for the `pickups` and `movielens` suites.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    pub pickups: Option<PathBuf>,
    pub latitude_column: Option<String>,
    pub longitude_column: Option<String>,
    pub datetime_column: Option<String>,
    pub limit: Option<usize>,
    pub ratings: Option<PathBuf>,
    pub movies: Option<PathBuf>,
    pub delimiter: Option<String>,
    pub top_movies: Option<usize>,
    pub top_users: Option<usize>,
    pub train_users: Option<usize>,
    pub test_users: Option<usize>,
    pub users_per_task: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// `rideshare-like`, `coverage`, `pickups` or `movielens`
    pub suite: String,
    /// Ground-set size. Taken from the data for `movielens`.
    #[serde(default)]
    pub n: usize,
    pub m_train: usize,
    pub m_test: usize,
    pub methods: Vec<String>,
    pub seeds: Vec<u64>,
    pub sweep: Sweep,
    /// Reduced ground-set size for replacement-greedy.
    #[serde(default)]
    pub q: Option<usize>,
    /// Sets `q = floor(n (k - l) / k)` at every sweep point.
    #[serde(default)]
    pub match_test_budget: bool,
    /// Fills the wall_ms column; off by default so output is reproducible.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub plot_dir: Option<PathBuf>,
    #[serde(default)]
    pub data: DataConfig,
}

fn config_error(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| config_error(format!("config: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn parsed_methods(&self) -> Result<Vec<Method>> {
        if self.methods.is_empty() {
            return Err(config_error("methods is empty"));
        }
        self.methods.iter().map(|m| m.parse()).collect()
    }

    /// `q` at one sweep point, if any.
    pub fn q_at(&self, n: usize, k: usize, l: usize) -> Option<usize> {
        if self.match_test_budget {
            Some(n * (k - l) / k)
        } else {
            self.q
        }
    }

    /// Checks every sweep point against a ground set of size `n`.
    pub fn validate(&self, n: usize) -> Result<Vec<(usize, usize)>> {
        let methods = self.parsed_methods()?;
        if self.seeds.is_empty() {
            return Err(config_error("seeds is empty"));
        }
        if self.m_train == 0 || self.m_test == 0 {
            return Err(config_error("m_train and m_test must be positive"));
        }
        let points = self.sweep.points();
        if points.is_empty() {
            return Err(config_error("sweep has no points"));
        }
        for &(k, l) in &points {
            Budget::new(k, l, n).map_err(|e| config_error(format!("sweep point k={k}, l={l}: {e}")))?;
            if methods.contains(&Method::ReplacementGreedy) {
                match self.q_at(n, k, l) {
                    Some(q) if k <= q && q <= n => {}
                    Some(q) => return Err(config_error(format!("q={q} at k={k} needs k <= q <= n={n}"))),
                    None => return Err(config_error("replacement-greedy needs q or match_test_budget")),
                }
            }
        }
        Ok(points)
    }
}
