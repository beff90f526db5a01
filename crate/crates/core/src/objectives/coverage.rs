use crate::oracle::{MarginalState, SetFunction};
use crate::set::ElementId;

/// Weighted set coverage: each element covers a subset of an item universe and
/// `f(S)` is the total weight of the items covered by `S`.
#[derive(Debug, Clone)]
pub struct CoverageObjective {
    covers: Vec<Vec<u32>>,
    item_weights: Vec<f64>,
}

impl CoverageObjective {
    /// Unit item weights.
    pub fn new(covers: Vec<Vec<u32>>, items: usize) -> Self {
        Self::weighted(covers, vec![1.0; items])
    }

    pub fn weighted(mut covers: Vec<Vec<u32>>, item_weights: Vec<f64>) -> Self {
        for c in &mut covers {
            c.sort_unstable();
            c.dedup();
            assert!(
                c.iter().all(|&i| (i as usize) < item_weights.len()),
                "covered item outside the universe"
            );
        }
        assert!(item_weights.iter().all(|w| *w >= 0.0 && w.is_finite()));
        CoverageObjective {
            covers,
            item_weights,
        }
    }

    pub fn covers(&self, e: ElementId) -> &[u32] {
        &self.covers[e.index()]
    }

    pub fn items(&self) -> usize {
        self.item_weights.len()
    }
}

impl SetFunction for CoverageObjective {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        let mut seen = vec![false; self.item_weights.len()];
        let mut total = 0.0;
        for e in set {
            for &i in &self.covers[e.index()] {
                if !std::mem::replace(&mut seen[i as usize], true) {
                    total += self.item_weights[i as usize];
                }
            }
        }
        total
    }

    fn state(&self, set: &[ElementId]) -> Option<Box<dyn MarginalState + '_>> {
        let mut st = CoverageState {
            f: self,
            count: vec![0; self.item_weights.len()],
        };
        for &e in set {
            st.insert(e);
        }
        Some(Box::new(st))
    }
}

struct CoverageState<'a> {
    f: &'a CoverageObjective,
    /// number of members covering each item
    count: Vec<u32>,
}

impl MarginalState for CoverageState<'_> {
    fn value(&self) -> f64 {
        self.count
            .iter()
            .zip(&self.f.item_weights)
            .filter(|(c, _)| **c > 0)
            .map(|(_, w)| w)
            .sum()
    }

    fn gain(&self, e: ElementId) -> f64 {
        self.f.covers[e.index()]
            .iter()
            .filter(|&&i| self.count[i as usize] == 0)
            .map(|&i| self.f.item_weights[i as usize])
            .sum()
    }

    fn insert(&mut self, e: ElementId) {
        for &i in &self.f.covers[e.index()] {
            self.count[i as usize] += 1;
        }
    }

    fn swap_gains(&self, e: ElementId, members: &[ElementId]) -> Option<Vec<f64>> {
        let add = self.gain(e);
        let ce = &self.f.covers[e.index()];
        Some(
            members
                .iter()
                .map(|x| {
                    // items only x covers are lost unless e re-covers them
                    let lost: f64 = self.f.covers[x.index()]
                        .iter()
                        .filter(|&&i| self.count[i as usize] == 1 && ce.binary_search(&i).is_err())
                        .map(|&i| self.f.item_weights[i as usize])
                        .sum();
                    add - lost
                })
                .collect(),
        )
    }
}
