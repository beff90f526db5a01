use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::distr::weighted::WeightedIndex;
use rand_distr::{Distribution, Normal};

use crate::error::{domain, Error, Result};
use crate::objectives::{CoverageObjective, FacilityLocationObjective, Point};
use crate::oracle::Oracle;

use super::TaskSampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    /// facility location over Gaussian pickup clusters
    RideshareLike,
    /// random element-to-item coverage
    Coverage,
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteKind::RideshareLike => "rideshare-like",
            SuiteKind::Coverage => "coverage",
        })
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rideshare-like" => Ok(SuiteKind::RideshareLike),
            "coverage" => Ok(SuiteKind::Coverage),
            _ => domain(format!("unknown suite kind '{s}'")),
        }
    }
}

pub struct SyntheticSuite {
    pub kind: SuiteKind,
    /// Candidate locations (empty for coverage suites).
    pub ground: Vec<Point>,
    pub train: Vec<Oracle>,
    pub test: Vec<Oracle>,
}

const CENTER: (f64, f64) = (40.75, -73.98);
const HOTSPOTS: usize = 12;
/// half-width of the city box, degrees
const SPAN: f64 = 0.04;
const ANCHORS: usize = 10;
const PER_ANCHOR: usize = 10;
const HOT_ANCHORS: usize = 8;

struct City {
    hotspots: Vec<Point>,
    popularity: WeightedIndex<f64>,
}

impl City {
    fn new(s: &mut TaskSampler) -> Self {
        let spread = Normal::new(0.0, 0.02).expect("positive sd");
        let rng = s.rng();
        let hotspots = (0..HOTSPOTS)
            .map(|_| Point::new(CENTER.0 + spread.sample(rng), CENTER.1 + spread.sample(rng)))
            .collect();
        let popularity = WeightedIndex::new((0..HOTSPOTS).map(|h| 1.0 / (h + 1) as f64)).expect("positive weights");
        City { hotspots, popularity }
    }

    fn uniform(&self, s: &mut TaskSampler) -> Point {
        let rng = s.rng();
        Point::new(
            CENTER.0 + rng.random_range(-SPAN..SPAN),
            CENTER.1 + rng.random_range(-SPAN..SPAN),
        )
    }

    fn near(&self, s: &mut TaskSampler, p: Point, sd: f64) -> Point {
        let d = Normal::new(0.0, sd).expect("positive sd");
        let rng = s.rng();
        Point::new(p.x + d.sample(rng), p.y + d.sample(rng))
    }

    /// A hotspot-centred point with probability `hot`, otherwise uniform.
    fn place(&self, s: &mut TaskSampler, hot: f64, sd: f64) -> Point {
        if s.rng().random::<f64>() < hot {
            let h = self.popularity.sample(s.rng());
            self.near(s, self.hotspots[h], sd)
        } else {
            self.uniform(s)
        }
    }

    fn task(&self, s: &mut TaskSampler, ground: &[Point]) -> Oracle {
        let mut customers = Vec::with_capacity(ANCHORS * PER_ANCHOR);
        for a in 0..ANCHORS {
            let anchor = if a < HOT_ANCHORS {
                self.place(s, 1.0, 0.0015)
            } else {
                self.uniform(s)
            };
            for _ in 0..PER_ANCHOR {
                customers.push(self.near(s, anchor, 0.002));
            }
        }
        Oracle::new(FacilityLocationObjective::new(&customers, ground))
    }
}

fn rideshare_like(n: usize, m_train: usize, m_test: usize, s: &mut TaskSampler) -> SyntheticSuite {
    let city = City::new(s);
    let ground: Vec<Point> = (0..n).map(|_| city.place(s, 0.7, 0.01)).collect();
    let train = (0..m_train).map(|_| city.task(s, &ground)).collect();
    let test = (0..m_test).map(|_| city.task(s, &ground)).collect();
    SyntheticSuite {
        kind: SuiteKind::RideshareLike,
        ground,
        train,
        test,
    }
}

const ITEMS: usize = 200;

/// Every element has a base footprint shared by all tasks; a task keeps each
/// base item with probability 0.8 and adds a few private ones.
fn coverage(n: usize, m_train: usize, m_test: usize, s: &mut TaskSampler) -> SyntheticSuite {
    let base: Vec<Vec<u32>> = (0..n)
        .map(|_| {
            let size = s.rng().random_range(2..8);
            s.distinct(ITEMS, size).into_iter().map(|i| i as u32).collect()
        })
        .collect();
    let task = |s: &mut TaskSampler| {
        let covers = base
            .iter()
            .map(|items| {
                let mut c: Vec<u32> = items.iter().copied().filter(|_| s.rng().random::<f64>() < 0.8).collect();
                let extra = s.rng().random_range(0..3);
                c.extend(s.with_replacement(ITEMS, extra).into_iter().map(|i| i as u32));
                c
            })
            .collect();
        Oracle::new(CoverageObjective::new(covers, ITEMS))
    };
    let train = (0..m_train).map(|_| task(s)).collect();
    let test = (0..m_test).map(|_| task(s)).collect();
    SyntheticSuite {
        kind: SuiteKind::Coverage,
        ground: Vec::new(),
        train,
        test,
    }
}

/// Seed-reproducible stand-in for the real task distributions. Train and
/// test tasks are drawn from the same distribution.
pub fn synthetic_suite(kind: SuiteKind, n: usize, m_train: usize, m_test: usize, seed: u64) -> Result<SyntheticSuite> {
    if n == 0 {
        return domain("synthetic suites need n >= 1");
    }
    let mut s = TaskSampler::new(seed);
    Ok(match kind {
        SuiteKind::RideshareLike => rideshare_like(n, m_train, m_test, &mut s),
        SuiteKind::Coverage => coverage(n, m_train, m_test, &mut s),
    })
}
