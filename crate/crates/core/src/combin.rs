//! Subset enumeration helpers for the exact oracles.

use crate::set::ElementId;

/// Calls `visit` on every subset of `pool` with at most `max_size` elements,
/// by increasing size and then lexicographically by position in `pool`.
pub fn for_each_subset_upto<F: FnMut(&[ElementId])>(pool: &[ElementId], max_size: usize, mut visit: F) {
    let max_size = max_size.min(pool.len());
    let mut buf = Vec::with_capacity(max_size);
    for size in 0..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            buf.clear();
            buf.extend(idx.iter().map(|&i| pool[i]));
            visit(&buf);
            if !advance(&mut idx, pool.len()) {
                break;
            }
        }
    }
}

/// All subsets of `pool` of size at most `max_size`, in the order of [`for_each_subset_upto`].
pub fn subsets_upto(pool: &[ElementId], max_size: usize) -> Vec<Vec<ElementId>> {
    let mut out = Vec::new();
    for_each_subset_upto(pool, max_size, |s| out.push(s.to_vec()));
    out
}

/// Next k-combination of `0..n` in lexicographic order.
fn advance(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `Σ_{j ≤ r} C(n, j)`, saturating.
pub fn count_upto(n: usize, r: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for j in 0..=r.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    total
}
