use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::greedy::{complete_at_test, greedy, random_select, Completion};
use crate::oracle::Oracle;
use crate::set::{Budget, ElementSet};

use super::{check_tasks, complete_in_reduced, greedy_train_baseline, replacement_greedy_two_stage, total_calls, Method};

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub methods: Vec<Method>,
    /// Reduced ground-set size for Replacement-Greedy.
    pub q: Option<usize>,
    pub seed: u64,
}

/// Test-phase performance of one method on a task suite.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodReport {
    pub method: Method,
    /// Mean test-task value.
    pub avg_value: f64,
    /// `avg_value` divided by Greedy-Test's on the same suite.
    pub normalized: f64,
    pub train_calls: u64,
    pub test_calls_per_task: f64,
    pub max_test_calls: u64,
    /// Per test task, in input order.
    pub values: Vec<f64>,
    pub test_calls: Vec<u64>,
}

/// Seed for one randomized component of a run, derived from the run seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn per_test_task<F>(test: &[Oracle], run: F) -> Result<Vec<Completion>>
where
    F: Fn(&Oracle) -> Result<Completion> + Sync,
{
    test.par_iter().map(|t| run(&t.fresh())).collect()
}

fn evaluate_fixed(test: &[Oracle], s: &ElementSet) -> Result<Vec<Completion>> {
    per_test_task(test, |f| {
        let value = f.evaluate(s)?;
        Ok(Completion {
            set: s.clone(),
            value,
            calls: f.calls(),
        })
    })
}

fn train_and_test(
    method: Method,
    train: &[Oracle],
    test: &[Oracle],
    budget: Budget,
    opts: &SuiteOptions,
) -> Result<(u64, Vec<Completion>)> {
    let (k, l) = (budget.k(), budget.l());
    let train: Vec<Oracle> = train.iter().map(Oracle::fresh).collect();
    let adapt = |s_tr: ElementSet| per_test_task(test, |f| complete_at_test(f, &s_tr, k, l));
    let completions = match method {
        Method::GreedyTest => per_test_task(test, |f| {
            let t = greedy(f, &ElementSet::new(), k, None)?;
            Ok(Completion {
                set: t.elements(),
                value: t.final_value,
                calls: f.calls(),
            })
        })?,
        Method::MetaGreedy | Method::TrainFirst | Method::TaskFirst | Method::RandomizedMetaGreedy => {
            adapt(super::train(method, &train, budget, derive_seed(opts.seed, 1))?.s_tr)?
        }
        Method::GreedyTrain => evaluate_fixed(test, &greedy_train_baseline(&train, k)?)?,
        Method::Random => {
            let s = random_select(train[0].ground(), k, derive_seed(opts.seed, 2))?;
            evaluate_fixed(test, &s)?
        }
        Method::ReplacementGreedy => {
            let Some(q) = opts.q else {
                return domain("replacement-greedy needs a reduced ground-set size q");
            };
            let artifact = replacement_greedy_two_stage(&train, q, k)?;
            per_test_task(test, |f| complete_in_reduced(f, &artifact, k))?
        }
    };
    Ok((total_calls(&train), completions))
}

/// Trains every requested method once on `train`, applies it to each task of
/// `test`, and reports values normalized by Greedy-Test.
pub fn run_method_suite(
    train: &[Oracle],
    test: &[Oracle],
    budget: Budget,
    opts: &SuiteOptions,
) -> Result<Vec<MethodReport>> {
    let n = check_tasks(train)?;
    if check_tasks(test)? != n {
        return domain("train and test tasks disagree on the ground set size");
    }
    let budget = Budget::new(budget.k(), budget.l(), n)?;
    let mean = |c: &[Completion]| c.iter().map(|c| c.value).sum::<f64>() / c.len() as f64;

    let (_, reference) = train_and_test(Method::GreedyTest, train, test, budget, opts)?;
    let anchor = mean(&reference);

    opts.methods
        .iter()
        .map(|&method| {
            let (train_calls, completions) = if method == Method::GreedyTest {
                (0, reference.clone())
            } else {
                train_and_test(method, train, test, budget, opts)?
            };
            let avg_value = mean(&completions);
            let test_calls: Vec<u64> = completions.iter().map(|c| c.calls).collect();
            Ok(MethodReport {
                method,
                avg_value,
                normalized: avg_value / anchor,
                train_calls,
                test_calls_per_task: test_calls.iter().sum::<u64>() as f64 / test_calls.len() as f64,
                max_test_calls: test_calls.iter().copied().max().unwrap_or(0),
                values: completions.iter().map(|c| c.value).collect(),
                test_calls,
            })
        })
        .collect()
}
