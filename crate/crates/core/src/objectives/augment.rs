use std::sync::Arc;

use crate::combin::for_each_subset_upto;
use crate::error::{domain, Result};
use crate::greedy::greedy;
use crate::oracle::{Oracle, SetFunction};
use crate::set::{ElementId, ElementSet};

/// Best value reachable from `S` by adding at most `budget` elements:
/// `f'(S) = max_{|T| <= budget} f(S ∪ T)`.
///
/// This is the per-task inner problem of the meta objective. It is monotone
/// but in general not submodular, so it reports `is_submodular() == false`.
#[derive(Clone)]
pub struct BestAugmentation {
    inner: Arc<dyn SetFunction>,
    budget: usize,
    exact: bool,
}

impl BestAugmentation {
    /// Exact inner maximum, by enumeration. Only for small ground sets.
    pub fn exact(inner: Arc<dyn SetFunction>, budget: usize) -> Self {
        BestAugmentation {
            inner,
            budget,
            exact: true,
        }
    }

    /// Inner maximum approximated by `budget` greedy rounds.
    pub fn greedy(inner: Arc<dyn SetFunction>, budget: usize) -> Self {
        BestAugmentation {
            inner,
            budget,
            exact: false,
        }
    }
}

impl SetFunction for BestAugmentation {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        let s: ElementSet = set.iter().copied().collect();
        let o = Oracle::from_arc(Arc::clone(&self.inner));
        let v = if self.exact {
            exact_value(&o, &s, self.budget)
        } else {
            greedy(&o, &s, self.budget, None).map(|t| t.final_value)
        };
        v.expect("ids validated by the caller")
    }

    fn is_submodular(&self) -> bool {
        false
    }
}

fn exact_value(f: &Oracle, s: &ElementSet, budget: usize) -> Result<f64> {
    s.validate(f.ground())?;
    let pool: Vec<ElementId> = f.ground().elements().filter(|e| !s.contains(*e)).collect();
    let inner = f.function();
    let mut buf = s.as_slice().to_vec();
    let base = buf.len();
    let mut best = f64::NEG_INFINITY;
    let mut evals = 0u64;
    for_each_subset_upto(&pool, budget, |t| {
        buf.truncate(base);
        buf.extend_from_slice(t);
        best = best.max(inner.eval(&buf));
        evals += 1;
    });
    f.charge(evals);
    Ok(best)
}

/// `max_{|T| <= budget} f(S ∪ T)`, approximated by greedy augmentation.
/// Budgets beyond the remaining elements clamp.
pub fn best_augmentation_value(f: &Oracle, s: &ElementSet, budget: usize) -> Result<f64> {
    Ok(greedy(f, s, budget, None)?.final_value)
}

/// Exact `max_{|T| <= budget} f(S ∪ T)` by enumeration; refuses more than
/// `cap` evaluations.
pub fn best_augmentation_exact(f: &Oracle, s: &ElementSet, budget: usize, cap: u128) -> Result<f64> {
    let rest = f.n().saturating_sub(s.len());
    let work = crate::combin::count_upto(rest, budget);
    if work > cap {
        return Err(crate::error::Error::Sizing { work, cap });
    }
    if s.len() > f.n() {
        return domain("set larger than the ground set");
    }
    exact_value(f, s, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{build_counterexample, ModularObjective};
    use crate::set::set_of;

    #[test]
    fn zero_budget_is_plain_value() {
        let f = Oracle::new(ModularObjective::new(vec![3.0, 2.0, 1.0]));
        let s = set_of(&[2]);
        assert_eq!(best_augmentation_value(&f, &s, 0).unwrap(), 1.0);
        assert_eq!(best_augmentation_exact(&f, &s, 0, 1000).unwrap(), 1.0);
    }

    #[test]
    fn modular_top_two() {
        let f = Oracle::new(ModularObjective::new(vec![3.0, 2.0, 1.0]));
        assert_eq!(best_augmentation_value(&f, &ElementSet::new(), 2).unwrap(), 5.0);
        assert_eq!(best_augmentation_exact(&f, &ElementSet::new(), 2, 1000).unwrap(), 5.0);
        // clamps past the ground set
        assert_eq!(best_augmentation_value(&f, &ElementSet::new(), 9).unwrap(), 6.0);
    }

    #[test]
    fn counterexample_single_augmentation() {
        let area = build_counterexample();
        let g = area.ground();
        let acdj = g.find("ACDJ").unwrap();
        let f = Oracle::new(area);
        let s: ElementSet = [acdj].into_iter().collect();
        assert_eq!(best_augmentation_value(&f, &s, 1).unwrap(), 1.75);
        assert_eq!(best_augmentation_exact(&f, &s, 1, 100).unwrap(), 1.75);
    }

    #[test]
    fn exact_refuses_large_work() {
        let f = Oracle::new(ModularObjective::new(vec![1.0; 40]));
        assert!(matches!(
            best_augmentation_exact(&f, &ElementSet::new(), 10, 1000),
            Err(crate::error::Error::Sizing { .. })
        ));
    }
}
