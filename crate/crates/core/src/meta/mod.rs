//! Training-phase algorithms for the meta problem
//!
//! ```text
//! max_{|S_tr| <= l}  (1/m) Σ_i  max_{|S_i| <= k-l}  f_i(S_tr ∪ S_i)
//! ```
//!
//! and the baselines they are compared with. Every method produces a set
//! `S_tr` that a new task completes with [`crate::greedy::complete_at_test`].

mod baselines;
mod deterministic;
mod randomized;
mod suite;
mod two_stage;

use std::fmt;
use std::str::FromStr;

pub use baselines::greedy_train_baseline;
pub use deterministic::{algorithm1_train_first, algorithm2_task_first, meta_greedy};
pub use randomized::randomized_meta_greedy;
pub use suite::{derive_seed, run_method_suite, MethodReport, SuiteOptions};
pub use two_stage::{complete_in_reduced, replacement_greedy_two_stage, TwoStageArtifact};

use crate::error::{domain, Result};
use crate::oracle::Oracle;
use crate::set::{Budget, ElementSet};

/// A trained set together with the per-task sets used to score it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaSolution {
    pub s_tr: ElementSet,
    pub per_task: Vec<ElementSet>,
    /// `(1/m) Σ_i f_i(S_tr ∪ S_i)`
    pub objective: f64,
}

impl MetaSolution {
    /// Re-evaluates the objective from the stored sets, without charging the oracles.
    pub fn recompute(&self, tasks: &[Oracle]) -> f64 {
        mean_value(tasks, &self.s_tr, &self.per_task)
    }

    /// `(1/m) Σ_i f_i(S_tr)`, the β statistic of the train-first ordering.
    pub fn train_only_value(&self, tasks: &[Oracle]) -> f64 {
        let empty = vec![ElementSet::new(); tasks.len()];
        mean_value(tasks, &self.s_tr, &empty)
    }

    /// `(1/m) Σ_i f_i(S_i)`, the γ statistic of the task-first ordering.
    pub fn task_only_value(&self, tasks: &[Oracle]) -> f64 {
        mean_value(tasks, &ElementSet::new(), &self.per_task)
    }

    pub fn respects(&self, budget: Budget) -> bool {
        self.s_tr.len() <= budget.l() && self.per_task.iter().all(|s| s.len() <= budget.task())
    }
}

fn mean_value(tasks: &[Oracle], s_tr: &ElementSet, per_task: &[ElementSet]) -> f64 {
    let total: f64 = tasks
        .iter()
        .zip(per_task)
        .map(|(f, s)| f.function().eval(s_tr.union(s).as_slice()))
        .sum();
    total / tasks.len() as f64
}

/// Output of a training method: the set handed to test-time completion.
#[derive(Debug, Clone)]
pub struct TrainedInitializer {
    pub s_tr: ElementSet,
    pub method: Method,
    pub train_calls: u64,
    pub solution: Option<MetaSolution>,
}

/// Trains one of the meta methods (those that produce an `S_tr` of size `l`).
/// `seed` is used by the randomized method only.
pub fn train(method: Method, tasks: &[Oracle], budget: Budget, seed: u64) -> Result<TrainedInitializer> {
    let before = total_calls(tasks);
    let solution = match method {
        Method::MetaGreedy => meta_greedy(tasks, budget)?,
        Method::TrainFirst => algorithm1_train_first(tasks, budget)?,
        Method::TaskFirst => algorithm2_task_first(tasks, budget)?,
        Method::RandomizedMetaGreedy => randomized_meta_greedy(tasks, budget, seed)?,
        other => return domain(format!("{other} does not train an initial set of size l")),
    };
    Ok(TrainedInitializer {
        s_tr: solution.s_tr.clone(),
        method,
        train_calls: total_calls(tasks) - before,
        solution: Some(solution),
    })
}

/// The methods compared by the experiment suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    GreedyTest,
    MetaGreedy,
    RandomizedMetaGreedy,
    GreedyTrain,
    Random,
    ReplacementGreedy,
    TrainFirst,
    TaskFirst,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::GreedyTest,
        Method::MetaGreedy,
        Method::RandomizedMetaGreedy,
        Method::GreedyTrain,
        Method::Random,
        Method::ReplacementGreedy,
        Method::TrainFirst,
        Method::TaskFirst,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::GreedyTest => "greedy-test",
            Method::MetaGreedy => "meta-greedy",
            Method::RandomizedMetaGreedy => "randomized-meta-greedy",
            Method::GreedyTrain => "greedy-train",
            Method::Random => "random",
            Method::ReplacementGreedy => "replacement-greedy",
            Method::TrainFirst => "train-first",
            Method::TaskFirst => "task-first",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .map_or_else(|| domain(format!("unknown method '{s}'")), Ok)
    }
}

/// Checks a task family and returns its common ground-set size.
pub(crate) fn check_tasks(tasks: &[Oracle]) -> Result<usize> {
    let Some(first) = tasks.first() else {
        return domain("at least one task is required");
    };
    let n = first.n();
    if tasks.iter().any(|t| t.n() != n) {
        return domain("tasks disagree on the ground set size");
    }
    Ok(n)
}

pub(crate) fn total_calls(tasks: &[Oracle]) -> u64 {
    tasks.iter().map(Oracle::calls).sum()
}
