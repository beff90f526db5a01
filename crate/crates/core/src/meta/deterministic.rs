use rayon::prelude::*;

use crate::error::Result;
use crate::greedy::{argmax_by, greedy_on, lazy_greedy_on};
use crate::oracle::{Cursor, Oracle};
use crate::set::{Budget, ElementId, ElementSet};

use super::{check_tasks, MetaSolution};

/// One round on the shared set: the element maximizing `Σ_i Δ_i(e | S_tr ∪ S_i)`,
/// where each cursor sits at `S_tr ∪ S_i`. Returns `None` when no candidate gains.
pub(crate) fn shared_round(cursors: &mut [Cursor<'_>], s_tr: &mut ElementSet, pool: &[ElementId]) -> Option<ElementId> {
    let (e, g) = argmax_by(pool, |e| s_tr.contains(e), |e| cursors.iter().map(|c| c.gain(e)).sum())?;
    if g <= 0.0 {
        return None;
    }
    s_tr.insert(e);
    for c in cursors.iter_mut() {
        c.insert(e);
    }
    Some(e)
}

/// `rounds` greedy picks per task, independently. Lazy when the task is submodular.
pub(crate) fn per_task_rounds(cursors: &mut [Cursor<'_>], per_task: &mut [ElementSet], rounds: usize, pool: &[ElementId]) {
    cursors
        .par_iter_mut()
        .zip(per_task.par_iter_mut())
        .for_each(|(c, s)| {
            let picks = if c.oracle().is_submodular() {
                lazy_greedy_on(c, rounds, pool)
            } else {
                greedy_on(c, rounds, pool)
            };
            s.extend(picks.into_iter().map(|(e, _)| e));
        });
}

pub(crate) fn open_cursors<'o>(tasks: &'o [Oracle]) -> Result<Vec<Cursor<'o>>> {
    tasks.iter().map(|t| t.cursor(&ElementSet::new())).collect()
}

pub(crate) fn solution_from(cursors: &[Cursor<'_>], s_tr: ElementSet, per_task: Vec<ElementSet>) -> MetaSolution {
    let objective = cursors.iter().map(Cursor::value).sum::<f64>() / cursors.len() as f64;
    MetaSolution {
        s_tr,
        per_task,
        objective,
    }
}

/// Train-first ordering: fill `S_tr` greedily against the summed gains, then
/// complete every task with `k - l` greedy picks on top of it.
pub fn algorithm1_train_first(tasks: &[Oracle], budget: Budget) -> Result<MetaSolution> {
    let n = check_tasks(tasks)?;
    let budget = Budget::new(budget.k(), budget.l(), n)?;
    let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
    let mut cursors = open_cursors(tasks)?;
    let mut s_tr = ElementSet::new();
    for _ in 0..budget.l() {
        if shared_round(&mut cursors, &mut s_tr, &pool).is_none() {
            break;
        }
    }
    let mut per_task = vec![ElementSet::new(); tasks.len()];
    per_task_rounds(&mut cursors, &mut per_task, budget.task(), &pool);
    Ok(solution_from(&cursors, s_tr, per_task))
}

/// Task-first ordering: greedy `S_i` for every task from scratch, then fill
/// `S_tr` against the summed gains on top of the `S_i`.
pub fn algorithm2_task_first(tasks: &[Oracle], budget: Budget) -> Result<MetaSolution> {
    let n = check_tasks(tasks)?;
    let budget = Budget::new(budget.k(), budget.l(), n)?;
    let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
    let mut cursors = open_cursors(tasks)?;
    let mut per_task = vec![ElementSet::new(); tasks.len()];
    per_task_rounds(&mut cursors, &mut per_task, budget.task(), &pool);
    let mut s_tr = ElementSet::new();
    for _ in 0..budget.l() {
        if shared_round(&mut cursors, &mut s_tr, &pool).is_none() {
            break;
        }
    }
    Ok(solution_from(&cursors, s_tr, per_task))
}

/// Runs both orderings and keeps the better one; ties keep the train-first result.
pub fn meta_greedy(tasks: &[Oracle], budget: Budget) -> Result<MetaSolution> {
    let first = algorithm1_train_first(tasks, budget)?;
    let second = algorithm2_task_first(tasks, budget)?;
    Ok(if second.objective > first.objective {
        second
    } else {
        first
    })
}
