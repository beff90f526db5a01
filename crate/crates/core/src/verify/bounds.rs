use rayon::prelude::*;

use crate::error::{domain, Result};

const GREEDY: f64 = 1.0 - 1.0 / std::f64::consts::E;

/// Which single-ordering guarantee a statistic belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// statistic is the mean value of the trained set alone
    TrainFirst,
    /// statistic is the mean value of the task sets alone
    TaskFirst,
}

/// `max{s, (1 - 1/e)(opt - 2s) + s}`. Both orderings share the same form.
pub fn proposition_bound(_kind: BoundKind, stat: f64, opt: f64) -> f64 {
    stat.max(GREEDY * (opt - 2.0 * stat) + stat)
}

/// `1 - b - exp(-1 + c)` with `b = max{1/(k-l), 1/l}` and `c = 3 sqrt(b ln(1/b))`.
/// Negative for small budgets, where it says nothing.
pub fn theorem2_bound(k: usize, l: usize) -> Result<f64> {
    if l == 0 || l >= k {
        return domain(format!("need 1 <= l < k (k={k}, l={l})"));
    }
    let b = (1.0 / (k - l) as f64).max(1.0 / l as f64);
    let c = 3.0 * (b * (1.0 / b).ln()).sqrt();
    Ok(1.0 - b - (-1.0 + c).exp())
}

/// Affine piece `w1 t1 + w2 t2 + w0`.
#[derive(Clone, Copy)]
struct Piece([f64; 3]);

impl Piece {
    fn at(&self, t: [f64; 2]) -> f64 {
        self.0[0] * t[0] + self.0[1] * t[1] + self.0[2]
    }
}

/// Line `a t1 + b t2 = c`.
type Line = [f64; 3];

fn intersect(p: &Line, q: &Line) -> Option<[f64; 2]> {
    let det = p[0] * q[1] - p[1] * q[0];
    if det.abs() < 1e-15 {
        return None;
    }
    Some([(p[2] * q[1] - p[1] * q[2]) / det, (p[0] * q[2] - p[2] * q[0]) / det])
}

/// Worst case of the better ordering for fixed statistics (OPT = 1):
/// min over `(t1, t2)` in the feasible box of the max of four affine pieces.
///
/// The objective is convex and piecewise affine, so the minimum sits on a
/// vertex of the arrangement formed by the box edges and the lines where two
/// pieces are equal; all such vertices are enumerated.
pub fn certificate_at(train: f64, task: f64) -> f64 {
    let lo = [proposition_bound(BoundKind::TrainFirst, train, 1.0), proposition_bound(BoundKind::TaskFirst, task, 1.0)];
    let hi = [lo[0].max(1.0), lo[1].max(1.0)];
    let pieces = [
        Piece([1.0, 0.0, 0.0]),
        Piece([0.0, 1.0, 0.0]),
        Piece([0.0, -2.0, GREEDY * (1.0 - task) + train + 2.0 * task]),
        Piece([-2.0, 0.0, GREEDY * (1.0 - train) + task + 2.0 * train]),
    ];
    let mut lines: Vec<Line> = vec![
        [1.0, 0.0, lo[0]],
        [1.0, 0.0, hi[0]],
        [0.0, 1.0, lo[1]],
        [0.0, 1.0, hi[1]],
    ];
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (p, q) = (pieces[i].0, pieces[j].0);
            lines.push([p[0] - q[0], p[1] - q[1], q[2] - p[2]]);
        }
    }
    let eps = 1e-12;
    let mut best = f64::INFINITY;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(t) = intersect(&lines[i], &lines[j]) else {
                continue;
            };
            if (0..2).all(|d| t[d] >= lo[d] - eps && t[d] <= hi[d] + eps) {
                let t = [t[0].clamp(lo[0], hi[0]), t[1].clamp(lo[1], hi[1])];
                best = best.min(pieces.iter().map(|p| p.at(t)).fold(f64::NEG_INFINITY, f64::max));
            }
        }
    }
    best
}

/// Minimum of [`certificate_at`] over the grid `{0, 1/s, ..., 1}²` of the two
/// statistics, with `s = grid_steps`. The guaranteed fraction of OPT for the
/// better of the two orderings.
pub fn theorem1_certificate(grid_steps: usize) -> Result<f64> {
    if grid_steps < 100 {
        return domain("grid_steps must be at least 100");
    }
    let s = grid_steps as f64;
    Ok((0..=grid_steps)
        .into_par_iter()
        .map(|i| {
            (0..=grid_steps)
                .map(|j| certificate_at(i as f64 / s, j as f64 / s))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min))
}
