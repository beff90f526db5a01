//! Cardinality-constrained greedy engines.
//!
//! Every engine adds, one round at a time, the candidate with the largest
//! marginal gain; ties go to the smallest element id and a round whose best
//! gain is `<= 0` ends the run, so returned sets may be smaller than the budget.
//!
//! Oracle cost of [`greedy`] from an initial set `I` with candidate pool `C`:
//! one call to open the cursor, then one call per candidate outside the
//! current set in each round, plus one call per pick when the objective has no
//! incremental fast path. This is at most `1 + b·(n + 1)` for budget `b`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::oracle::{Cursor, Oracle};
use crate::set::{ElementId, ElementSet, GroundSet};

/// Picks in order with the gain each had when chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace {
    pub picks: Vec<(ElementId, f64)>,
    pub final_value: f64,
}

impl GreedyTrace {
    pub fn elements(&self) -> ElementSet {
        self.picks.iter().map(|(e, _)| *e).collect()
    }

    pub fn ids(&self) -> Vec<ElementId> {
        self.picks.iter().map(|(e, _)| *e).collect()
    }

    /// Gains never increase from one pick to the next (up to `tol`).
    pub fn gains_non_increasing(&self, tol: f64) -> bool {
        self.picks.windows(2).all(|w| w[1].1 <= w[0].1 + tol)
    }
}

/// Ground elements not in `exclude`, ascending.
pub(crate) fn candidate_pool(ground: &GroundSet, exclude: Option<&ElementSet>) -> Vec<ElementId> {
    ground
        .elements()
        .filter(|e| exclude.is_none_or(|x| !x.contains(*e)))
        .collect()
}

/// Best candidate for `score`, smallest id on ties. `pool` must be ascending.
pub(crate) fn argmax_by<F: FnMut(ElementId) -> f64>(
    pool: &[ElementId],
    skip: impl Fn(ElementId) -> bool,
    mut score: F,
) -> Option<(ElementId, f64)> {
    let mut best: Option<(ElementId, f64)> = None;
    for &e in pool {
        if skip(e) {
            continue;
        }
        let g = score(e);
        if best.is_none_or(|(_, b)| g > b) {
            best = Some((e, g));
        }
    }
    best
}

/// Classic greedy on an open cursor; returns the picks.
pub fn greedy_on(cursor: &mut Cursor<'_>, budget: usize, pool: &[ElementId]) -> Vec<(ElementId, f64)> {
    let mut picks = Vec::with_capacity(budget);
    for _ in 0..budget {
        let Some((e, g)) = argmax_by(pool, |e| cursor.contains(e), |e| cursor.gain(e)) else {
            break;
        };
        if g <= 0.0 {
            break;
        }
        cursor.insert(e);
        picks.push((e, g));
    }
    picks
}

#[derive(Debug)]
struct Bound {
    gain: f64,
    e: ElementId,
    round: usize,
}

impl PartialEq for Bound {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Bound {}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    // larger gain first, then smaller id
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.e.cmp(&self.e))
    }
}

/// Lazy greedy on an open cursor. Requires a submodular objective: stale gains
/// are then upper bounds, and a freshly evaluated heap top is the true argmax.
pub fn lazy_greedy_on(cursor: &mut Cursor<'_>, budget: usize, pool: &[ElementId]) -> Vec<(ElementId, f64)> {
    let mut picks = Vec::with_capacity(budget);
    if budget == 0 {
        return picks;
    }
    let mut heap: BinaryHeap<Bound> = pool
        .iter()
        .filter(|&&e| !cursor.contains(e))
        .map(|&e| Bound {
            gain: cursor.gain(e),
            e,
            round: 0,
        })
        .collect();
    let mut round = 0;
    while picks.len() < budget {
        let Some(top) = heap.pop() else { break };
        if top.round == round {
            if top.gain <= 0.0 {
                break;
            }
            cursor.insert(top.e);
            picks.push((top.e, top.gain));
            round += 1;
        } else {
            heap.push(Bound {
                gain: cursor.gain(top.e),
                e: top.e,
                round,
            });
        }
    }
    picks
}

fn run(
    f: &Oracle,
    initial: &ElementSet,
    budget: usize,
    exclude: Option<&ElementSet>,
    engine: fn(&mut Cursor<'_>, usize, &[ElementId]) -> Vec<(ElementId, f64)>,
) -> Result<GreedyTrace> {
    if let Some(x) = exclude {
        x.validate(f.ground())?;
    }
    let mut cursor = f.cursor(initial)?;
    let pool = candidate_pool(f.ground(), exclude);
    let picks = engine(&mut cursor, budget, &pool);
    Ok(GreedyTrace {
        picks,
        final_value: cursor.value(),
    })
}

/// Adds up to `budget` elements to `initial`, skipping `exclude`.
pub fn greedy(
    f: &Oracle,
    initial: &ElementSet,
    budget: usize,
    exclude: Option<&ElementSet>,
) -> Result<GreedyTrace> {
    run(f, initial, budget, exclude, greedy_on)
}

/// Same picks as [`greedy`] on submodular objectives, usually with fewer oracle calls.
pub fn lazy_greedy(
    f: &Oracle,
    initial: &ElementSet,
    budget: usize,
    exclude: Option<&ElementSet>,
) -> Result<GreedyTrace> {
    run(f, initial, budget, exclude, lazy_greedy_on)
}

/// Result of adapting a trained set to one test task.
#[derive(Debug, Clone)]
pub struct Completion {
    pub set: ElementSet,
    pub value: f64,
    pub calls: u64,
}

/// Completes a trained set `s_tr` on a new task with `k - l` greedy rounds.
pub fn complete_at_test(f_test: &Oracle, s_tr: &ElementSet, k: usize, l: usize) -> Result<Completion> {
    if l == 0 {
        return domain("train budget l must be at least 1");
    }
    if l >= k {
        return domain(format!("train budget l={l} must be smaller than k={k}"));
    }
    if s_tr.len() > l {
        return domain(format!("trained set has {} elements, budget l={l}", s_tr.len()));
    }
    let before = f_test.calls();
    let trace = greedy(f_test, s_tr, k - l, None)?;
    let mut set = s_tr.clone();
    set.extend(trace.ids());
    Ok(Completion {
        set,
        value: trace.final_value,
        calls: f_test.calls() - before,
    })
}

/// Greedy with budget `budget` on top of `initial`, choosing only from `pool`
/// (ascending ids).
pub fn complete_in_pool(f: &Oracle, initial: &ElementSet, budget: usize, pool: &[ElementId]) -> Result<Completion> {
    pool.iter().try_for_each(|&e| f.ground().check(e))?;
    debug_assert!(pool.windows(2).all(|w| w[0] < w[1]));
    let before = f.calls();
    let mut cursor = f.cursor(initial)?;
    greedy_on(&mut cursor, budget, pool);
    let value = cursor.value();
    Ok(Completion {
        set: cursor.into_members(),
        value,
        calls: f.calls() - before,
    })
}

/// Uniform sample of `budget` distinct elements, reproducible from `seed`.
pub fn random_select(ground: &GroundSet, budget: usize, seed: u64) -> Result<ElementSet> {
    if budget > ground.len() {
        return domain(format!("cannot pick {budget} of {} elements", ground.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(index::sample(&mut rng, ground.len(), budget)
        .into_iter()
        .map(ElementId::from)
        .collect())
}
