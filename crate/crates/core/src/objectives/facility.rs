use crate::oracle::{MarginalState, SetFunction};
use crate::set::ElementId;

/// A location on the map, in raw coordinate units (degrees for pickup data).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn manhattan(&self, other: &Point) -> f64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

/// Convenience score of a (customer, driver) pair: `2 - 2 / (1 + exp(-200 d))`
/// with `d` the Manhattan distance. Equals 1 at distance 0 and decays to 0.
pub fn convenience_score(u: &Point, r: &Point) -> f64 {
    let d = u.manhattan(r);
    2.0 - 2.0 / (1.0 + (-200.0 * d).exp())
}

/// `f(S) = Σ_u max_{r ∈ S} c(u, r)`, with the max over an empty `S` taken as 0.
///
/// Scores are precomputed as an element-major matrix, so a marginal gain is one
/// pass over the customers.
#[derive(Debug, Clone)]
pub struct FacilityLocationObjective {
    customers: usize,
    /// scores[e * customers + u]
    scores: Vec<f64>,
}

impl FacilityLocationObjective {
    pub fn new(customers: &[Point], candidates: &[Point]) -> Self {
        let mut scores = Vec::with_capacity(customers.len() * candidates.len());
        for r in candidates {
            scores.extend(customers.iter().map(|u| convenience_score(u, r)));
        }
        FacilityLocationObjective {
            customers: customers.len(),
            scores,
        }
    }

    /// From an explicit element-major score matrix (rows are elements).
    pub fn from_scores(rows: Vec<Vec<f64>>) -> Self {
        let customers = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == customers));
        assert!(rows.iter().flatten().all(|v| *v >= 0.0 && v.is_finite()));
        FacilityLocationObjective {
            customers,
            scores: rows.into_iter().flatten().collect(),
        }
    }

    pub fn customers(&self) -> usize {
        self.customers
    }

    #[inline]
    fn row(&self, e: ElementId) -> &[f64] {
        let c = self.customers;
        &self.scores[e.index() * c..(e.index() + 1) * c]
    }
}

impl SetFunction for FacilityLocationObjective {
    fn ground_size(&self) -> usize {
        if self.customers == 0 {
            0
        } else {
            self.scores.len() / self.customers
        }
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        (0..self.customers)
            .map(|u| {
                set.iter()
                    .map(|&e| self.row(e)[u])
                    .fold(0.0, f64::max)
            })
            .sum()
    }

    fn state(&self, set: &[ElementId]) -> Option<Box<dyn MarginalState + '_>> {
        let mut st = FacilityState {
            f: self,
            best: vec![0.0; self.customers],
            second: vec![0.0; self.customers],
            owner: vec![NONE; self.customers],
            slots: Vec::with_capacity(set.len()),
        };
        for &e in set {
            st.insert(e);
        }
        Some(Box::new(st))
    }
}

const NONE: u32 = u32::MAX;

/// Best and runner-up score per customer, plus the slot (insertion position)
/// of the element holding the best.
struct FacilityState<'a> {
    f: &'a FacilityLocationObjective,
    best: Vec<f64>,
    second: Vec<f64>,
    owner: Vec<u32>,
    slots: Vec<ElementId>,
}

impl MarginalState for FacilityState<'_> {
    fn value(&self) -> f64 {
        self.best.iter().sum()
    }

    fn gain(&self, e: ElementId) -> f64 {
        self.f
            .row(e)
            .iter()
            .zip(&self.best)
            .map(|(v, b)| (v - b).max(0.0))
            .sum()
    }

    fn insert(&mut self, e: ElementId) {
        let slot = self.slots.len() as u32;
        self.slots.push(e);
        for (u, &v) in self.f.row(e).iter().enumerate() {
            if v > self.best[u] {
                self.second[u] = self.best[u];
                self.best[u] = v;
                self.owner[u] = slot;
            } else if v > self.second[u] {
                self.second[u] = v;
            }
        }
    }

    fn swap_gains(&self, e: ElementId, members: &[ElementId]) -> Option<Vec<f64>> {
        if members != self.slots.as_slice() {
            return None;
        }
        let row = self.f.row(e);
        let mut add = 0.0;
        let mut loss = vec![0.0; members.len()];
        for (u, &v) in row.iter().enumerate() {
            add += (v - self.best[u]).max(0.0);
            let owner = self.owner[u];
            if owner != NONE {
                loss[owner as usize] += self.best[u].max(v) - self.second[u].max(v);
            }
        }
        Some(loss.into_iter().map(|l| add - l).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_at_zero_distance_is_one() {
        let p = Point::new(40.7, -73.9);
        assert_eq!(convenience_score(&p, &p), 1.0);
    }

    #[test]
    fn score_vanishes_far_away() {
        let u = Point::new(0.0, 0.0);
        let r = Point::new(10.0, 10.0);
        assert!(convenience_score(&u, &r) < 1e-300);
        let r = Point::new(1e6, 0.0);
        assert_eq!(convenience_score(&u, &r), 0.0);
    }

    #[test]
    fn score_at_one_hundredth() {
        // closed form 2 - 2/(1+e^-2); e^-2 = 0.1353352832366127 (mpmath, 30 digits)
        let expected = 2.0 - 2.0 / (1.0 + 0.135_335_283_236_612_7);
        let u = Point::new(0.0, 0.0);
        let r = Point::new(0.004, 0.006);
        assert!((convenience_score(&u, &r) - expected).abs() < 1e-12);
        assert!((expected - 0.238_405_844_044_234).abs() < 1e-12);
    }

    #[test]
    fn empty_set_is_zero() {
        let f = FacilityLocationObjective::new(&[Point::new(0.0, 0.0)], &[Point::new(0.0, 0.0)]);
        assert_eq!(f.eval(&[]), 0.0);
    }
}
