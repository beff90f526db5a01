use crate::error::{domain, Result};
use crate::oracle::Oracle;
use crate::set::{ElementId, ElementSet};

use super::check_tasks;
use super::deterministic::{open_cursors, shared_round};

/// Greedy with budget `k` on the training average `(1/m) Σ_i f_i`; the
/// result is used on new tasks without adaptation.
pub fn greedy_train_baseline(tasks: &[Oracle], k: usize) -> Result<ElementSet> {
    let n = check_tasks(tasks)?;
    if k > n {
        return domain(format!("budget k={k} exceeds ground set size {n}"));
    }
    let pool: Vec<ElementId> = tasks[0].ground().elements().collect();
    let mut cursors = open_cursors(tasks)?;
    let mut s = ElementSet::new();
    for _ in 0..k {
        if shared_round(&mut cursors, &mut s, &pool).is_none() {
            break;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::greedy;
    use crate::objectives::CoverageObjective;

    fn task() -> Oracle {
        Oracle::new(CoverageObjective::new(
            vec![vec![0, 1], vec![1, 2, 3], vec![4], vec![0, 4, 5], vec![6, 7]],
            8,
        ))
    }

    #[test]
    fn single_task_is_plain_greedy() {
        let f = task();
        let s = greedy_train_baseline(std::slice::from_ref(&f), 3).unwrap();
        assert_eq!(s.as_slice(), greedy(&f, &ElementSet::new(), 3, None).unwrap().ids());
    }

    #[test]
    fn identical_tasks_match_per_task_greedy() {
        let f = task();
        let tasks = vec![f.clone(), f.fresh(), f.fresh()];
        let s = greedy_train_baseline(&tasks, 4).unwrap();
        assert_eq!(s.as_slice(), greedy(&f, &ElementSet::new(), 4, None).unwrap().ids());
        assert!(greedy_train_baseline(&tasks, 6).is_err());
    }
}
