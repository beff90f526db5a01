use crate::oracle::{MarginalState, SetFunction};
use crate::set::ElementId;

/// `f(S) = Σ_{e ∈ S} w_e` with non-negative weights.
#[derive(Debug, Clone)]
pub struct ModularObjective {
    weights: Vec<f64>,
}

impl ModularObjective {
    pub fn new(weights: Vec<f64>) -> Self {
        assert!(
            weights.iter().all(|w| *w >= 0.0 && w.is_finite()),
            "modular weights must be finite and non-negative"
        );
        ModularObjective { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl SetFunction for ModularObjective {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        set.iter().map(|e| self.weights[e.index()]).sum()
    }

    fn state(&self, set: &[ElementId]) -> Option<Box<dyn MarginalState + '_>> {
        Some(Box::new(ModularState {
            weights: &self.weights,
            value: self.eval(set),
        }))
    }
}

struct ModularState<'a> {
    weights: &'a [f64],
    value: f64,
}

impl MarginalState for ModularState<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, e: ElementId) -> f64 {
        self.weights[e.index()]
    }

    fn insert(&mut self, e: ElementId) {
        self.value += self.weights[e.index()];
    }

    fn swap_gains(&self, e: ElementId, members: &[ElementId]) -> Option<Vec<f64>> {
        let we = self.weights[e.index()];
        Some(members.iter().map(|x| we - self.weights[x.index()]).collect())
    }
}
