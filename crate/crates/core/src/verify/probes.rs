use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::Oracle;
use crate::set::{ElementId, ElementSet};

pub const DEFAULT_PROBE_TRIALS: usize = 1000;
pub const DEFAULT_PROBE_SEED: u64 = 42;

/// A violating configuration with `A ⊆ B`.
///
/// Diminishing returns: `lhs = f(A ∪ {e}) - f(A)`, `rhs = f(B ∪ {e}) - f(B)`,
/// violated when `lhs < rhs`. Monotonicity: `lhs = f(A)`, `rhs = f(B)`, `e` is
/// `None`, violated when `lhs > rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub a: ElementSet,
    pub b: ElementSet,
    pub e: Option<ElementId>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub passed: bool,
    pub trials: usize,
    /// First violation found.
    pub witness: Option<Witness>,
}

fn tol(x: f64, y: f64) -> f64 {
    1e-9 * x.abs().max(y.abs()).max(1.0)
}

fn value(f: &Oracle, s: &ElementSet) -> f64 {
    f.evaluate(s).expect("probe sets are drawn from the ground set")
}

/// Random `e`, then `B ⊆ V \ {e}` and `A ⊆ B` with random inclusion rates.
fn draw(rng: &mut ChaCha8Rng, n: usize) -> (ElementSet, ElementSet, ElementId) {
    let e = ElementId::from(rng.random_range(0..n));
    let (pb, pa) = (rng.random::<f64>(), rng.random::<f64>());
    let mut a = ElementSet::new();
    let mut b = ElementSet::new();
    for x in (0..n).map(ElementId::from).filter(|&x| x != e) {
        if rng.random::<f64>() < pb {
            b.insert(x);
            if rng.random::<f64>() < pa {
                a.insert(x);
            }
        }
    }
    (a, b, e)
}

/// Evaluates one diminishing-returns configuration. `Some` when it is violated.
pub fn diminishing_returns_at(f: &Oracle, a: &ElementSet, b: &ElementSet, e: ElementId) -> Option<Witness> {
    let with = |s: &ElementSet| {
        let mut s = s.clone();
        s.insert(e);
        s
    };
    let lhs = value(f, &with(a)) - value(f, a);
    let rhs = value(f, &with(b)) - value(f, b);
    (lhs < rhs - tol(lhs, rhs)).then(|| Witness {
        a: a.clone(),
        b: b.clone(),
        e: Some(e),
        lhs,
        rhs,
    })
}

fn run(trials: usize, witness: Option<Witness>) -> ProbeReport {
    ProbeReport {
        passed: witness.is_none(),
        trials,
        witness,
    }
}

/// Randomized diminishing-returns probe: `Δ(e | A) >= Δ(e | B)` for `A ⊆ B`, `e ∉ B`.
pub fn check_submodular(f: &Oracle, trials: usize, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let (a, b, e) = draw(&mut rng, f.n());
        if let Some(w) = diminishing_returns_at(f, &a, &b, e) {
            return run(t + 1, Some(w));
        }
    }
    run(trials, None)
}

/// Randomized monotonicity probe: `f(A) <= f(B)` for `A ⊆ B`.
pub fn check_monotone(f: &Oracle, trials: usize, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let (a, mut b, e) = draw(&mut rng, f.n());
        b.insert(e);
        let (lhs, rhs) = (value(f, &a), value(f, &b));
        if lhs > rhs + tol(lhs, rhs) {
            return run(t + 1, Some(Witness { a, b, e: None, lhs, rhs }));
        }
    }
    run(trials, None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::objectives::{build_counterexample, BestAugmentation, CoverageObjective, ModularObjective};
    use crate::oracle::SetFunction;

    #[test]
    fn coverage_passes() {
        let f = Oracle::new(CoverageObjective::new(
            vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5, 6], vec![0, 6], vec![7], vec![1, 7, 8]],
            9,
        ));
        assert!(check_submodular(&f, DEFAULT_PROBE_TRIALS, DEFAULT_PROBE_SEED).passed);
        assert!(check_monotone(&f, DEFAULT_PROBE_TRIALS, DEFAULT_PROBE_SEED).passed);
    }

    #[test]
    fn modular_has_equal_returns() {
        let f = Oracle::new(ModularObjective::new(vec![1.5, 2.0, 0.25, 4.0, 3.0]));
        assert!(check_submodular(&f, 500, 7).passed);
        assert!(check_monotone(&f, 500, 7).passed);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (a, b, e) = draw(&mut rng, 5);
            let da = f.marginal(e, &a).unwrap();
            let db = f.marginal(e, &b).unwrap();
            assert!((da - db).abs() < 1e-12);
        }
    }

    #[test]
    fn decreasing_function_fails_monotone() {
        struct Shrinks;
        impl SetFunction for Shrinks {
            fn ground_size(&self) -> usize {
                4
            }
            fn eval(&self, set: &[ElementId]) -> f64 {
                4.0 - set.len() as f64
            }
        }
        let r = check_monotone(&Oracle::new(Shrinks), 100, 3);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert!(w.a.is_subset(&w.b) && w.lhs > w.rhs);
    }

    #[test]
    fn augmented_counterexample_witness() {
        let area = build_counterexample();
        let g = area.ground();
        let (acdj, ideh) = (g.find("ACDJ").unwrap(), g.find("IDEH").unwrap());
        let f = Oracle::new(BestAugmentation::exact(Arc::new(area), 1));
        let b: ElementSet = [acdj].into_iter().collect();
        let w = diminishing_returns_at(&f, &ElementSet::new(), &b, ideh).unwrap();
        assert_eq!((w.lhs, w.rhs), (0.25, 0.75));
        let r = check_submodular(&f, DEFAULT_PROBE_TRIALS, DEFAULT_PROBE_SEED);
        assert!(!r.passed);
        assert!(check_monotone(&f, DEFAULT_PROBE_TRIALS, DEFAULT_PROBE_SEED).passed);
    }
}
