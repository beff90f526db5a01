use rayon::prelude::*;

use crate::combin::{count_upto, for_each_subset_upto, subsets_upto};
use crate::error::{Error, Result};
use crate::meta::check_tasks;
use crate::oracle::Oracle;
use crate::set::{Budget, ElementId, ElementSet};

pub const DEFAULT_WORK_CAP: u128 = 10_000_000;

/// Exact optimum of the meta objective on a small instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    /// Mean over tasks, the same unit as [`crate::meta::MetaSolution::objective`].
    pub opt_value: f64,
    pub opt_s_tr: ElementSet,
    pub opt_per_task: Vec<ElementSet>,
    /// Number of `(S_tr, S_i)` pairs evaluated.
    pub subsets_examined: u64,
}

pub fn brute_force_meta_opt(tasks: &[Oracle], budget: Budget) -> Result<BruteForceResult> {
    brute_force_meta_opt_capped(tasks, budget, DEFAULT_WORK_CAP)
}

/// Enumerates every `S_tr` with `|S_tr| <= l`; for each, the best `S_i` per
/// task is found independently among sets of size `<= k - l` outside `S_tr`.
/// Ties go to the first set in (size, lexicographic) order.
pub fn brute_force_meta_opt_capped(tasks: &[Oracle], budget: Budget, cap: u128) -> Result<BruteForceResult> {
    let n = check_tasks(tasks)?;
    let budget = Budget::new(budget.k(), budget.l(), n)?;
    let work = count_upto(n, budget.l())
        .saturating_mul(tasks.len() as u128)
        .saturating_mul(count_upto(n, budget.task()));
    if work > cap {
        return Err(Error::Sizing { work, cap });
    }
    let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
    let outer = subsets_upto(&pool, budget.l());

    let scored: Vec<(f64, Vec<ElementSet>, u64)> = outer
        .par_iter()
        .map(|s_tr| {
            let rest: Vec<ElementId> = pool.iter().copied().filter(|e| !s_tr.contains(e)).collect();
            let mut total = 0.0;
            let mut examined = 0u64;
            let mut per_task = Vec::with_capacity(tasks.len());
            for f in tasks {
                let f = f.function();
                let mut buf = s_tr.clone();
                let mut best = (f64::NEG_INFINITY, Vec::new());
                for_each_subset_upto(&rest, budget.task(), |s_i| {
                    buf.truncate(s_tr.len());
                    buf.extend_from_slice(s_i);
                    let v = f.eval(&buf);
                    examined += 1;
                    if v > best.0 {
                        best = (v, s_i.to_vec());
                    }
                });
                total += best.0;
                per_task.push(best.1.into_iter().collect());
            }
            (total / tasks.len() as f64, per_task, examined)
        })
        .collect();

    let subsets_examined = scored.iter().map(|s| s.2).sum();
    let mut best = 0;
    for (i, s) in scored.iter().enumerate() {
        if s.0 > scored[best].0 {
            best = i;
        }
    }
    let (opt_value, opt_per_task, _) = scored.into_iter().nth(best).expect("the empty S_tr is always enumerated");
    Ok(BruteForceResult {
        opt_value,
        opt_s_tr: outer[best].iter().copied().collect(),
        opt_per_task,
        subsets_examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{build_counterexample, CoverageObjective, ModularObjective};

    /// Joint enumeration over `(S_tr, S_1, ..., S_m)`, no decomposition.
    fn joint_opt(tasks: &[Oracle], budget: Budget) -> f64 {
        let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
        let mut best = f64::NEG_INFINITY;
        for s_tr in subsets_upto(&pool, budget.l()) {
            let rest: Vec<ElementId> = pool.iter().copied().filter(|e| !s_tr.contains(e)).collect();
            let options = subsets_upto(&rest, budget.task());
            let mut pick = vec![0usize; tasks.len()];
            loop {
                let total: f64 = tasks
                    .iter()
                    .zip(&pick)
                    .map(|(f, &j)| {
                        let mut s = s_tr.clone();
                        s.extend_from_slice(&options[j]);
                        f.function().eval(&s)
                    })
                    .sum();
                best = best.max(total / tasks.len() as f64);
                let mut i = 0;
                while i < pick.len() {
                    pick[i] += 1;
                    if pick[i] < options.len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == pick.len() {
                    break;
                }
            }
        }
        best
    }

    fn micro(seed: u32, n: usize) -> Oracle {
        let mut x = seed.wrapping_mul(747_796_405).wrapping_add(2_891_336_453);
        let covers = (0..n)
            .map(|_| {
                (0..8u32)
                    .filter(|_| {
                        x ^= x << 13;
                        x ^= x >> 17;
                        x ^= x << 5;
                        x % 3 == 0
                    })
                    .collect()
            })
            .collect();
        Oracle::new(CoverageObjective::new(covers, 8))
    }

    #[test]
    fn modular_identical_tasks() {
        let tasks: Vec<Oracle> = (0..3)
            .map(|_| Oracle::new(ModularObjective::new(vec![1.0, 6.0, 3.0, 5.0, 2.0, 4.0])))
            .collect();
        let r = brute_force_meta_opt(&tasks, Budget::new(3, 1, 6).unwrap()).unwrap();
        assert_eq!(r.opt_value, 15.0);
        assert_eq!(r.opt_s_tr.len(), 1);
    }

    #[test]
    fn decomposition_matches_joint_enumeration() {
        for seed in 0..12 {
            let n = 4 + (seed as usize % 3);
            let tasks: Vec<Oracle> = (0..2).map(|t| micro(seed * 7 + t, n)).collect();
            for (k, l) in [(2, 1), (3, 1), (3, 2)] {
                let b = Budget::new(k, l, n).unwrap();
                let r = brute_force_meta_opt(&tasks, b).unwrap();
                assert_eq!(r.opt_value, joint_opt(&tasks, b), "seed {seed} k {k} l {l}");
                let check: f64 = tasks
                    .iter()
                    .zip(&r.opt_per_task)
                    .map(|(f, s)| f.function().eval(r.opt_s_tr.union(s).as_slice()))
                    .sum::<f64>()
                    / 2.0;
                assert_eq!(check, r.opt_value);
            }
        }
    }

    #[test]
    fn single_task_ignores_split() {
        for seed in 0..8 {
            let f = [micro(seed, 7)];
            let values: Vec<f64> = (1..4)
                .map(|l| brute_force_meta_opt(&f, Budget::new(4, l, 7).unwrap()).unwrap().opt_value)
                .collect();
            assert!(values.iter().all(|v| *v == values[0]));
        }
    }

    #[test]
    fn counterexample_pairs() {
        let f = Oracle::new(build_counterexample());
        let r = brute_force_meta_opt(std::slice::from_ref(&f), Budget::new(2, 1, 6).unwrap()).unwrap();
        let pool: Vec<ElementId> = f.ground().elements().collect();
        let mut best_pair = 0.0f64;
        for_each_subset_upto(&pool, 2, |s| best_pair = best_pair.max(f.function().eval(s)));
        assert_eq!(r.opt_value, best_pair);
        // BCEH + HEFG; no pair reaches 2.5
        assert_eq!(r.opt_value, 2.25);
        assert_eq!(r.opt_s_tr.len(), 1);
        // ACDJ + IDEH + HEFG, or ABIJ + BCEH + HEFG
        let r = brute_force_meta_opt(std::slice::from_ref(&f), Budget::new(3, 1, 6).unwrap()).unwrap();
        assert_eq!(r.opt_value, 2.5);
    }

    #[test]
    fn refuses_large_instances() {
        let f = Oracle::new(ModularObjective::new(vec![1.0; 60]));
        assert!(matches!(
            brute_force_meta_opt(&[f], Budget::new(10, 5, 60).unwrap()),
            Err(Error::Sizing { .. })
        ));
        let f = Oracle::new(ModularObjective::new(vec![1.0; 6]));
        let r = brute_force_meta_opt_capped(&[f], Budget::new(2, 1, 6).unwrap(), 1000).unwrap();
        assert_eq!(r.subsets_examined, 7 + 6 * 6);
    }
}
