use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use submeta_core::combin::for_each_subset_upto;
use submeta_core::data::TaskSampler;
use submeta_core::meta::{algorithm1_train_first, algorithm2_task_first, meta_greedy, randomized_meta_greedy};
use submeta_core::objectives::{build_counterexample, BestAugmentation, CoverageObjective};
use submeta_core::verify::{
    brute_force_meta_opt, check_submodular, diminishing_returns_at, proposition_bound, theorem1_certificate,
    theorem2_bound, BoundKind, DEFAULT_PROBE_SEED, DEFAULT_PROBE_TRIALS,
};
use submeta_core::{greedy::greedy, Budget, ElementId, ElementSet, Error, Oracle, Result};

pub const GREEDY_RATIO: f64 = 1.0 - 1.0 / std::f64::consts::E;
/// Absolute slack on every inequality check.
pub const SLACK: f64 = 1e-9;
pub const META_GREEDY_FACTOR: f64 = 0.53;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Bounds,
    Counterexample,
    Oracle,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounds" => Ok(Scope::Bounds),
            "counterexample" => Ok(Scope::Counterexample),
            "oracle" => Ok(Scope::Oracle),
            _ => Err(Error::Input(format!("unknown scope '{s}' (bounds, counterexample, oracle)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn verify_cmd(scope: Scope) -> VerifyReport {
    let checks = match scope {
        Scope::Bounds => bounds_checks(),
        Scope::Counterexample => counterexample_checks(),
        Scope::Oracle => {
            let f = family_stats(100, 0);
            vec![f.greedy_check(), f.proposition_check(), f.meta_greedy_check(), f.randomized_check()]
        }
    };
    VerifyReport { checks }
}

/// Values of the budget-1 best augmentation on the rectangle instance and
/// its diminishing-returns violation.
pub fn counterexample_checks() -> Vec<Check> {
    let area = build_counterexample();
    let g = area.ground();
    let id = |name: &str| g.find(name).expect("known rectangle");
    let (acdj, ideh) = (id("ACDJ"), id("IDEH"));
    let f = Oracle::new(BestAugmentation::exact(Arc::new(area), 1));
    let set = |ids: &[ElementId]| ids.iter().copied().collect::<ElementSet>();
    let values = [
        f.evaluate(&ElementSet::new()).unwrap_or(f64::NAN),
        f.evaluate(&set(&[acdj])).unwrap_or(f64::NAN),
        f.evaluate(&set(&[ideh])).unwrap_or(f64::NAN),
        f.evaluate(&set(&[acdj, ideh])).unwrap_or(f64::NAN),
    ];
    let witness = diminishing_returns_at(&f, &ElementSet::new(), &set(&[acdj]), ideh);
    let gains = witness.as_ref().map(|w| (w.lhs, w.rhs));
    let probe = check_submodular(&f, DEFAULT_PROBE_TRIALS, DEFAULT_PROBE_SEED);
    vec![
        Check::new(
            "augmented values",
            values == [1.5, 1.75, 1.75, 2.5],
            format!("f'(empty), f'(ACDJ), f'(IDEH), f'(ACDJ+IDEH) = {values:?}, expected [1.5, 1.75, 1.75, 2.5]"),
        ),
        Check::new(
            "diminishing returns witness",
            gains == Some((0.25, 0.75)),
            format!("gain of IDEH at empty vs at ACDJ = {gains:?}, expected (0.25, 0.75)"),
        ),
        Check::new(
            "random probe finds a violation",
            !probe.passed,
            format!("violation after {} of {} trials", probe.trials, DEFAULT_PROBE_TRIALS),
        ),
    ]
}

pub fn bounds_checks() -> Vec<Check> {
    let (c100, c1000) = (
        theorem1_certificate(100).expect("valid grid"),
        theorem1_certificate(1000).expect("valid grid"),
    );
    let t2 = theorem2_bound(200, 100).expect("valid budget");
    vec![
        Check::new(
            "certificate reaches 0.53",
            c1000 >= META_GREEDY_FACTOR,
            format!("min-max certificate at grid 1000 = {c1000:.6}"),
        ),
        Check::new(
            "certificate below the greedy ratio",
            c1000 <= GREEDY_RATIO,
            format!("{c1000:.6} <= {GREEDY_RATIO:.6}"),
        ),
        Check::new(
            "certificate stable under refinement",
            (c100 - c1000).abs() < 1e-3 && c1000 <= c100,
            format!("grid 100: {c100:.6}, grid 1000: {c1000:.6}"),
        ),
        Check::new(
            "randomized bound at k=200, l=100",
            (t2 - 0.2897).abs() <= 1e-3,
            format!("{t2:.6}, expected 0.2897 +- 1e-3"),
        ),
    ]
}

/// A small random coverage task over `items` items: each element covers
/// each item with a per-element probability.
fn coverage_task(s: &mut TaskSampler, n: usize, items: usize) -> Oracle {
    let covers = (0..n)
        .map(|_| {
            let density = 0.1 + 0.3 * rand_unit(s);
            (0..items as u32).filter(|_| rand_unit(s) < density).collect()
        })
        .collect();
    Oracle::new(CoverageObjective::new(covers, items))
}

fn rand_unit(s: &mut TaskSampler) -> f64 {
    s.rng().random::<f64>()
}

/// One instance of the small random family: `n` in 6..=12, `m` in 1..=3,
/// `1 <= l < k <= 4`, monotone coverage tasks.
#[derive(Clone)]
pub struct SmallInstance {
    pub tasks: Vec<Oracle>,
    pub budget: Budget,
}

pub fn small_instance(seed: u64) -> SmallInstance {
    let mut s = TaskSampler::new(seed);
    let pick = |s: &mut TaskSampler, lo: usize, hi: usize| lo + s.with_replacement(hi - lo + 1, 1)[0];
    let n = pick(&mut s, 6, 12);
    let m = pick(&mut s, 1, 3);
    let k = pick(&mut s, 2, 4);
    let l = pick(&mut s, 1, k - 1);
    let items = pick(&mut s, 8, 16);
    let tasks = (0..m).map(|_| coverage_task(&mut s, n, items)).collect();
    SmallInstance {
        tasks,
        budget: Budget::new(k, l, n).expect("k <= 4 < 6 <= n"),
    }
}

/// One monotone coverage function with `n <= 12` and a budget `k <= 4`.
pub fn small_coverage(seed: u64) -> (Oracle, usize) {
    let mut s = TaskSampler::new(seed ^ 0x5eed);
    let n = 4 + s.with_replacement(9, 1)[0];
    let k = 1 + s.with_replacement(4, 1)[0];
    let items = 8 + s.with_replacement(9, 1)[0];
    (coverage_task(&mut s, n, items), k)
}

/// Per-instance outcomes over the small family.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceOutcome {
    pub seed: u64,
    pub opt: f64,
    pub greedy: f64,
    pub greedy_opt: f64,
    pub train_first: f64,
    pub train_first_bound: f64,
    pub task_first: f64,
    pub task_first_bound: f64,
    pub meta_greedy: f64,
    pub randomized_mean: f64,
    pub randomized_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyStats {
    pub outcomes: Vec<InstanceOutcome>,
    pub randomized_runs: usize,
}

pub const RANDOMIZED_RUNS: usize = 200;

fn exact_max(f: &Oracle, k: usize) -> f64 {
    let pool: Vec<ElementId> = f.ground().elements().collect();
    let mut best = 0.0f64;
    for_each_subset_upto(&pool, k, |s| best = best.max(f.function().eval(s)));
    best
}

fn outcome(seed: u64) -> Result<InstanceOutcome> {
    let inst = small_instance(seed);
    let (tasks, budget) = (&inst.tasks, inst.budget);
    let opt = brute_force_meta_opt(tasks, budget)?.opt_value;
    let a1 = algorithm1_train_first(tasks, budget)?;
    let a2 = algorithm2_task_first(tasks, budget)?;
    let best = meta_greedy(tasks, budget)?;
    let runs: Vec<f64> = (0..RANDOMIZED_RUNS as u64)
        .map(|r| randomized_meta_greedy(tasks, budget, seed * 1_000_003 + r).map(|s| s.objective))
        .collect::<Result<_>>()?;
    let (f, k) = small_coverage(seed);
    let greedy_value = greedy(&f, &ElementSet::new(), k, None)?.final_value;
    Ok(InstanceOutcome {
        seed,
        opt,
        greedy: greedy_value,
        greedy_opt: exact_max(&f, k),
        train_first: a1.objective,
        train_first_bound: proposition_bound(BoundKind::TrainFirst, a1.train_only_value(tasks), opt),
        task_first: a2.objective,
        task_first_bound: proposition_bound(BoundKind::TaskFirst, a2.task_only_value(tasks), opt),
        meta_greedy: best.objective,
        randomized_mean: runs.iter().sum::<f64>() / runs.len() as f64,
        randomized_bound: theorem2_bound(budget.k(), budget.l())?,
    })
}

/// Runs `count` instances of the small family starting at `first_seed`.
pub fn family_stats(count: usize, first_seed: u64) -> FamilyStats {
    let outcomes = (first_seed..first_seed + count as u64)
        .into_par_iter()
        .map(|s| outcome(s).expect("small instances fit the brute-force cap"))
        .collect();
    FamilyStats {
        outcomes,
        randomized_runs: RANDOMIZED_RUNS,
    }
}

fn violations(stats: &FamilyStats, bad: impl Fn(&InstanceOutcome) -> bool) -> Vec<u64> {
    stats.outcomes.iter().filter(|o| bad(o)).map(|o| o.seed).collect()
}

fn min_ratio(stats: &FamilyStats, value: impl Fn(&InstanceOutcome) -> f64) -> f64 {
    stats
        .outcomes
        .iter()
        .filter(|o| o.opt > 0.0)
        .map(|o| value(o) / o.opt)
        .fold(f64::INFINITY, f64::min)
}

impl FamilyStats {
    pub fn greedy_check(&self) -> Check {
        let bad = violations(self, |o| o.greedy < GREEDY_RATIO * o.greedy_opt - SLACK);
        let worst = self
            .outcomes
            .iter()
            .filter(|o| o.greedy_opt > 0.0)
            .map(|o| o.greedy / o.greedy_opt)
            .fold(f64::INFINITY, f64::min);
        Check::new(
            "greedy vs exact optimum",
            bad.is_empty(),
            format!("{} instances, violations {bad:?}, worst ratio {worst:.4}", self.outcomes.len()),
        )
    }

    pub fn proposition_check(&self) -> Check {
        let bad1 = violations(self, |o| o.train_first < o.train_first_bound - SLACK);
        let bad2 = violations(self, |o| o.task_first < o.task_first_bound - SLACK);
        Check::new(
            "train-first and task-first bounds",
            bad1.is_empty() && bad2.is_empty(),
            format!(
                "{} instances, train-first violations {bad1:?}, task-first violations {bad2:?}",
                self.outcomes.len()
            ),
        )
    }

    pub fn meta_greedy_check(&self) -> Check {
        let bad = violations(self, |o| o.meta_greedy < META_GREEDY_FACTOR * o.opt - SLACK);
        Check::new(
            "meta-greedy vs 0.53 OPT",
            bad.is_empty(),
            format!("violations {bad:?}, worst ratio {:.4}", min_ratio(self, |o| o.meta_greedy)),
        )
    }

    /// Against the closed-form bound where it is positive, and against half
    /// of OPT (an observed property, not a guarantee).
    pub fn randomized_check(&self) -> Check {
        let bad_bound = violations(self, |o| o.randomized_bound > 0.0 && o.randomized_mean < o.randomized_bound * o.opt - SLACK);
        let positive = self.outcomes.iter().filter(|o| o.randomized_bound > 0.0).count();
        let bad_half = violations(self, |o| o.randomized_mean < 0.5 * o.opt - SLACK);
        Check::new(
            "randomized mean",
            bad_bound.is_empty() && bad_half.is_empty(),
            format!(
                "{} runs per instance; bound positive on {positive} instances, violations {bad_bound:?}; empirical half-OPT violations {bad_half:?}, worst ratio {:.4}",
                self.randomized_runs,
                min_ratio(self, |o| o.randomized_mean)
            ),
        )
    }
}
