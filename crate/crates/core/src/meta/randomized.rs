use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::greedy::argmax_by;
use crate::oracle::Oracle;
use crate::set::{Budget, ElementId, ElementSet};

use super::deterministic::{open_cursors, per_task_rounds, shared_round, solution_from};
use super::{check_tasks, MetaSolution};

/// Randomized interleaving of the two greedy sides.
///
/// Each round draws one uniform number: below `l/k` the shared set gets the
/// element maximizing the summed gains, otherwise every task adds its own best
/// element. Task sets grow in lockstep (a task whose best gain is not positive
/// skips its pick but the round still counts). Once either side reaches its
/// budget the other is filled greedily.
pub fn randomized_meta_greedy(tasks: &[Oracle], budget: Budget, seed: u64) -> Result<MetaSolution> {
    let n = check_tasks(tasks)?;
    let budget = Budget::new(budget.k(), budget.l(), n)?;
    let (k, l) = (budget.k(), budget.l());
    let p_train = l as f64 / k as f64;
    let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cursors = open_cursors(tasks)?;
    let mut s_tr = ElementSet::new();
    let mut per_task = vec![ElementSet::new(); tasks.len()];
    let mut task_rounds = 0;

    while s_tr.len() < l && task_rounds < budget.task() {
        if rng.random::<f64>() < p_train {
            if shared_round(&mut cursors, &mut s_tr, &pool).is_none() {
                // no element helps any task: neither side can improve
                break;
            }
        } else {
            for (c, s) in cursors.iter_mut().zip(per_task.iter_mut()) {
                if let Some((e, g)) = argmax_by(&pool, |e| c.contains(e), |e| c.gain(e)) {
                    if g > 0.0 {
                        c.insert(e);
                        s.insert(e);
                    }
                }
            }
            task_rounds += 1;
        }
    }

    if task_rounds < budget.task() {
        per_task_rounds(&mut cursors, &mut per_task, budget.task() - task_rounds, &pool);
    }
    while s_tr.len() < l {
        if shared_round(&mut cursors, &mut s_tr, &pool).is_none() {
            break;
        }
    }
    Ok(solution_from(&cursors, s_tr, per_task))
}
