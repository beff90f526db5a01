use log::warn;

use crate::error::{Error, Result};
use crate::objectives::{FacilityLocationObjective, Point};

use super::{PickupRecord, TaskSampler};

#[derive(Debug, Clone, PartialEq)]
pub struct RideshareParams {
    /// Anchors come from `[at_time - window_secs, at_time]`.
    pub window_secs: i64,
    pub anchors: usize,
    pub neighbors: usize,
    /// Manhattan distance in degrees; 0.009 is about 1 km in Manhattan.
    pub radius: f64,
}

impl Default for RideshareParams {
    fn default() -> Self {
        RideshareParams {
            window_secs: 1800,
            anchors: 10,
            neighbors: 10,
            radius: 0.009,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RideshareTask {
    pub objective: FacilityLocationObjective,
    pub customers: Vec<Point>,
    /// True when anchors or neighbors had to be drawn with replacement.
    pub fell_back: bool,
}

fn point(r: &PickupRecord) -> Point {
    Point::new(r.latitude, r.longitude)
}

fn draw(sampler: &mut TaskSampler, len: usize, amount: usize, fell_back: &mut bool) -> Vec<usize> {
    if len >= amount {
        sampler.distinct(len, amount)
    } else {
        *fell_back = true;
        sampler.with_replacement(len, amount)
    }
}

/// Customers of the task at `at_time`: anchors sampled from the pickups in
/// the preceding window, and for each anchor, neighbors sampled among all
/// pickups within `radius` of it (the anchor included). The candidates are
/// the ground-set locations.
pub fn make_rideshare_task(
    records: &[PickupRecord],
    at_time: i64,
    ground: &[Point],
    params: &RideshareParams,
    sampler: &mut TaskSampler,
) -> Result<RideshareTask> {
    if ground.is_empty() {
        return Err(Error::Input("empty candidate ground set".into()));
    }
    let window: Vec<&PickupRecord> = records
        .iter()
        .filter(|r| r.timestamp >= at_time - params.window_secs && r.timestamp <= at_time)
        .collect();
    if window.is_empty() {
        return Err(Error::Input(format!("no pickups in the window ending at {at_time}")));
    }
    let mut fell_back = false;
    let mut customers = Vec::with_capacity(params.anchors * params.neighbors);
    for a in draw(sampler, window.len(), params.anchors, &mut fell_back) {
        let anchor = point(window[a]);
        let near: Vec<Point> = records
            .iter()
            .map(point)
            .filter(|p| p.manhattan(&anchor) <= params.radius)
            .collect();
        for j in draw(sampler, near.len(), params.neighbors, &mut fell_back) {
            customers.push(near[j]);
        }
    }
    if fell_back {
        warn!("task at {at_time}: too few anchors or neighbors, sampled with replacement");
    }
    Ok(RideshareTask {
        objective: FacilityLocationObjective::new(&customers, ground),
        customers,
        fell_back,
    })
}

/// `n` distinct pickup locations chosen uniformly at random.
pub fn sample_ground(records: &[PickupRecord], n: usize, sampler: &mut TaskSampler) -> Result<Vec<Point>> {
    if n == 0 || n > records.len() {
        return Err(Error::Input(format!("cannot pick {n} locations from {} pickups", records.len())));
    }
    Ok(sampler.distinct(records.len(), n).into_iter().map(|i| point(&records[i])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::convenience_score;
    use crate::oracle::SetFunction;
    use crate::set::ElementId;

    /// 10 clusters far apart; cluster `c` holds 10 pickups, the first one
    /// inside the window and the rest long before it.
    fn clustered(in_window: usize) -> Vec<PickupRecord> {
        let mut out = Vec::new();
        for c in 0..10 {
            for j in 0..10 {
                out.push(PickupRecord {
                    latitude: 40.0 + c as f64 * 0.1 + j as f64 * 1e-4,
                    longitude: -74.0 + j as f64 * 1e-4,
                    timestamp: if j == 0 && c < in_window { 10_000 } else { 0 },
                });
            }
        }
        out
    }

    #[test]
    fn forced_selection() {
        let recs = clustered(10);
        let ground = vec![Point::new(40.0, -74.0), Point::new(40.5, -74.0)];
        let a = make_rideshare_task(&recs, 10_000, &ground, &RideshareParams::default(), &mut TaskSampler::new(3))
            .unwrap();
        assert!(!a.fell_back);
        assert_eq!(a.customers.len(), 100);
        let mut got: Vec<(u64, u64)> = a.customers.iter().map(|p| (p.x.to_bits(), p.y.to_bits())).collect();
        let mut all: Vec<(u64, u64)> = recs.iter().map(|r| (r.latitude.to_bits(), r.longitude.to_bits())).collect();
        got.sort();
        all.sort();
        assert_eq!(got, all);
        let b = make_rideshare_task(&recs, 10_000, &ground, &RideshareParams::default(), &mut TaskSampler::new(3))
            .unwrap();
        assert_eq!(a.customers, b.customers);
    }

    #[test]
    fn nine_anchors_fall_back() {
        let recs = clustered(9);
        let ground = vec![Point::new(40.0, -74.0)];
        let t = make_rideshare_task(&recs, 10_000, &ground, &RideshareParams::default(), &mut TaskSampler::new(1))
            .unwrap();
        assert!(t.fell_back);
        assert_eq!(t.customers.len(), 100);
        assert!(make_rideshare_task(&recs, 50_000, &ground, &RideshareParams::default(), &mut TaskSampler::new(1))
            .is_err());
    }

    #[test]
    fn full_ground_value_is_direct_sum() {
        let recs = clustered(10);
        let ground: Vec<Point> = (0..7).map(|i| Point::new(40.0 + 0.13 * i as f64, -74.0 + 1e-3 * i as f64)).collect();
        let t = make_rideshare_task(&recs, 10_000, &ground, &RideshareParams::default(), &mut TaskSampler::new(8))
            .unwrap();
        let all: Vec<ElementId> = (0..7).map(ElementId).collect();
        let direct: f64 = t
            .customers
            .iter()
            .map(|u| ground.iter().map(|r| convenience_score(u, r)).fold(0.0, f64::max))
            .sum();
        assert!((t.objective.eval(&all) - direct).abs() < 1e-9);
    }

    #[test]
    fn ground_sampling() {
        let recs = clustered(10);
        let g = sample_ground(&recs, 20, &mut TaskSampler::new(4)).unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!(g, sample_ground(&recs, 20, &mut TaskSampler::new(4)).unwrap());
        assert!(sample_ground(&recs, 101, &mut TaskSampler::new(4)).is_err());
    }
}
