use crate::error::{domain, Result};
use crate::greedy::{argmax_by, complete_in_pool, Completion};
use crate::oracle::{Cursor, Oracle};
use crate::set::{ElementId, ElementSet};

use super::check_tasks;
use super::deterministic::open_cursors;

/// A reduced ground set learned offline, with the per-task sets built alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStageArtifact {
    pub reduced: ElementSet,
    pub per_task: Vec<ElementSet>,
    /// `(1/m) Σ_i f_i(S̃_i)`
    pub objective: f64,
}

/// What adding `e` is worth to one task: its marginal gain while the task set
/// has room, otherwise the best swap against a current member (never negative).
/// Returns the value and the member to evict, if a swap is needed.
fn replacement_gain(c: &Cursor<'_>, e: ElementId, k: usize) -> (f64, Option<ElementId>) {
    if c.contains(e) {
        return (0.0, None);
    }
    if c.len() < k {
        return (c.gain(e), None);
    }
    let gains = c.swap_gains(e);
    let members = c.members().as_slice();
    let mut best: Option<(ElementId, f64)> = None;
    for (&x, &g) in members.iter().zip(&gains) {
        let better = match best {
            None => true,
            Some((bx, bg)) => g > bg || (g == bg && x < bx),
        };
        if better {
            best = Some((x, g));
        }
    }
    match best {
        Some((x, g)) if g > 0.0 => (g, Some(x)),
        _ => (0.0, None),
    }
}

/// Replacement-Greedy for the two-stage problem
///
/// ```text
/// max_{|S| <= q}  Σ_i  max_{S_i ⊆ S, |S_i| <= k}  f_i(S_i)
/// ```
///
/// Each of at most `q` rounds adds to `S` the element with the largest summed
/// replacement gain; every task whose gain for it is positive then adds it
/// (or swaps it in for the best member to evict, smallest id on ties).
pub fn replacement_greedy_two_stage(tasks: &[Oracle], q: usize, k: usize) -> Result<TwoStageArtifact> {
    let n = check_tasks(tasks)?;
    if k == 0 || k > q || q > n {
        return domain(format!("two-stage sizes need 1 <= k <= q <= n (k={k}, q={q}, n={n})"));
    }
    let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
    let mut cursors = open_cursors(tasks)?;
    let mut reduced = ElementSet::new();
    for _ in 0..q {
        let Some((e, total)) = argmax_by(
            &pool,
            |e| reduced.contains(e),
            |e| cursors.iter().map(|c| replacement_gain(c, e, k).0).sum(),
        ) else {
            break;
        };
        if total <= 0.0 {
            break;
        }
        reduced.insert(e);
        for c in cursors.iter_mut() {
            match replacement_gain(c, e, k) {
                (g, None) if g > 0.0 => c.insert(e),
                (g, Some(x)) if g > 0.0 => c.replace(x, e),
                _ => {}
            }
        }
    }
    let objective = cursors.iter().map(Cursor::value).sum::<f64>() / cursors.len() as f64;
    Ok(TwoStageArtifact {
        reduced,
        per_task: cursors.into_iter().map(Cursor::into_members).collect(),
        objective,
    })
}

/// Test-time use of the artifact: greedy with budget `k` restricted to the reduced set.
pub fn complete_in_reduced(f_test: &Oracle, artifact: &TwoStageArtifact, k: usize) -> Result<Completion> {
    let pool = artifact.reduced.sorted();
    complete_in_pool(f_test, &ElementSet::new(), k, &pool)
}
