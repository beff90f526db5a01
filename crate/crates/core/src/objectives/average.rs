use std::sync::Arc;

use crate::oracle::{MarginalState, SetFunction};
use crate::set::ElementId;

/// Arithmetic mean of several set functions over the same ground set.
#[derive(Clone)]
pub struct TaskAverageObjective {
    components: Vec<Arc<dyn SetFunction>>,
}

impl TaskAverageObjective {
    pub fn new(components: Vec<Arc<dyn SetFunction>>) -> Self {
        assert!(!components.is_empty(), "average of zero functions");
        let n = components[0].ground_size();
        assert!(
            components.iter().all(|c| c.ground_size() == n),
            "components disagree on the ground set"
        );
        TaskAverageObjective { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl SetFunction for TaskAverageObjective {
    fn ground_size(&self) -> usize {
        self.components[0].ground_size()
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        self.components.iter().map(|c| c.eval(set)).sum::<f64>() / self.components.len() as f64
    }

    fn state(&self, set: &[ElementId]) -> Option<Box<dyn MarginalState + '_>> {
        let parts = self
            .components
            .iter()
            .map(|c| c.state(set))
            .collect::<Option<Vec<_>>>()?;
        Some(Box::new(AverageState { parts }))
    }

    fn is_submodular(&self) -> bool {
        self.components.iter().all(|c| c.is_submodular())
    }
}

struct AverageState<'a> {
    parts: Vec<Box<dyn MarginalState + 'a>>,
}

impl MarginalState for AverageState<'_> {
    fn value(&self) -> f64 {
        self.parts.iter().map(|p| p.value()).sum::<f64>() / self.parts.len() as f64
    }

    fn gain(&self, e: ElementId) -> f64 {
        self.parts.iter().map(|p| p.gain(e)).sum::<f64>() / self.parts.len() as f64
    }

    fn insert(&mut self, e: ElementId) {
        for p in &mut self.parts {
            p.insert(e);
        }
    }

    fn swap_gains(&self, e: ElementId, members: &[ElementId]) -> Option<Vec<f64>> {
        let mut acc = vec![0.0; members.len()];
        for p in &self.parts {
            for (a, g) in acc.iter_mut().zip(p.swap_gains(e, members)?) {
                *a += g;
            }
        }
        let c = self.parts.len() as f64;
        Some(acc.into_iter().map(|a| a / c).collect())
    }
}
