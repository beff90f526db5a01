//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use submeta_experiments::checks::{bounds_checks, counterexample_checks, family_stats, FamilyStats};
use submeta_experiments::{run_experiment, ExperimentConfig};
use submeta_core::data::{synthetic_suite, SuiteKind, TaskSampler};
use submeta_core::greedy::{complete_at_test, greedy, lazy_greedy};
use submeta_core::meta::{meta_greedy, randomized_meta_greedy, run_method_suite, Method, SuiteOptions};
use submeta_core::objectives::{CoverageObjective, FacilityLocationObjective, ModularObjective, Point};
use submeta_core::verify::theorem2_bound;
use submeta_core::{Budget, ElementSet, Oracle};

struct Outcome {
    passed: bool,
    detail: String,
}

fn family() -> &'static FamilyStats {
    static STATS: OnceLock<FamilyStats> = OnceLock::new();
    STATS.get_or_init(|| family_stats(100, 0))
}

fn c1() -> Outcome {
    let checks = counterexample_checks();
    Outcome {
        passed: checks.iter().all(|c| c.passed),
        detail: checks.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "),
    }
}

fn c2() -> Outcome {
    let c = family().greedy_check();
    Outcome {
        passed: c.passed,
        detail: c.detail,
    }
}

fn c3() -> Outcome {
    let c = family().proposition_check();
    Outcome {
        passed: c.passed,
        detail: c.detail,
    }
}

fn c4() -> Outcome {
    let empirical = family().meta_greedy_check();
    let bounds = bounds_checks();
    let certificate: Vec<_> = bounds.iter().take(3).collect();
    Outcome {
        passed: empirical.passed && certificate.iter().all(|c| c.passed),
        detail: std::iter::once(empirical.to_string())
            .chain(certificate.iter().map(|c| c.to_string()))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// Identical modular tasks: OPT is the sum of the top k weights and the
/// closed-form bound is positive at k=200, l=100.
fn c5() -> Outcome {
    let closed = bounds_checks().pop().expect("four bound checks");
    let small = family().randomized_check();
    let weights: Vec<f64> = (0..300).map(|i| 1.0 + ((i * 37) % 101) as f64 / 7.0).collect();
    let mut top = weights.clone();
    top.sort_by(|a, b| b.total_cmp(a));
    let opt: f64 = top[..200].iter().sum();
    let tasks: Vec<Oracle> = (0..2).map(|_| Oracle::new(ModularObjective::new(weights.clone()))).collect();
    let budget = Budget::new(200, 100, 300).unwrap();
    let runs = 200;
    let mean = (0..runs)
        .map(|s| randomized_meta_greedy(&tasks, budget, s).unwrap().objective)
        .sum::<f64>()
        / runs as f64;
    let bound = theorem2_bound(200, 100).unwrap();
    let large_ok = mean >= bound * opt - 1e-9;
    Outcome {
        passed: closed.passed && small.passed && large_ok,
        detail: format!(
            "{closed}; {small}; modular k=200 l=100: mean {:.4} OPT vs bound {bound:.4} over {runs} seeds",
            mean / opt
        ),
    }
}

fn fixture(i: u64) -> Oracle {
    let mut s = TaskSampler::new(1000 + i);
    let n = 20 + s.with_replacement(41, 1)[0];
    if i % 2 == 0 {
        let covers = (0..n)
            .map(|_| {
                let size = 1 + s.with_replacement(8, 1)[0];
                s.distinct(60, size).into_iter().map(|x| x as u32).collect()
            })
            .collect();
        Oracle::new(CoverageObjective::new(covers, 60))
    } else {
        let pt = |s: &mut TaskSampler| {
            let v = s.with_replacement(1000, 2);
            Point::new(v[0] as f64 * 1e-4, v[1] as f64 * 1e-4)
        };
        let customers: Vec<Point> = (0..50).map(|_| pt(&mut s)).collect();
        let sites: Vec<Point> = (0..n).map(|_| pt(&mut s)).collect();
        Oracle::new(FacilityLocationObjective::new(&customers, &sites))
    }
}

fn c6() -> Outcome {
    let mut mismatched = Vec::new();
    let mut costlier = Vec::new();
    let (mut classic_total, mut lazy_total) = (0, 0);
    for i in 0..50 {
        let f = fixture(i);
        let k = 3 + (i as usize % 8);
        let (a, b) = (f.fresh(), f.fresh());
        let classic = greedy(&a, &ElementSet::new(), k, None).unwrap();
        let lazy = lazy_greedy(&b, &ElementSet::new(), k, None).unwrap();
        if classic.ids() != lazy.ids() {
            mismatched.push(i);
        }
        if b.calls() > a.calls() {
            costlier.push(i);
        }
        classic_total += a.calls();
        lazy_total += b.calls();
    }
    Outcome {
        passed: mismatched.is_empty() && costlier.is_empty(),
        detail: format!(
            "50 fixtures, pick mismatches {mismatched:?}, lazy costlier on {costlier:?}, calls classic {classic_total} lazy {lazy_total}"
        ),
    }
}

fn desk_config(sweep: &str, methods: &str, matched: bool) -> ExperimentConfig {
    ExperimentConfig::from_toml(&format!(
        r#"
suite = "rideshare-like"
n = 500
m_train = 50
m_test = 50
methods = [{methods}]
seeds = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19]
match_test_budget = {matched}
[sweep]
{sweep}
"#
    ))
    .unwrap()
}

fn c7() -> Outcome {
    let cfg = desk_config(
        "kind = \"vary-l\"\nk = 20\nl = [16]",
        "\"greedy-test\", \"meta-greedy\", \"greedy-train\", \"random\"",
        false,
    );
    let r = run_experiment(&cfg).unwrap();
    let m = |method| r.mean(method, 20, 16, |row| row.normalized).unwrap();
    let (random, train, meta) = (m(Method::Random), m(Method::GreedyTrain), m(Method::MetaGreedy));
    Outcome {
        passed: random <= train && train <= meta && meta <= 1.0 && meta >= 0.90,
        detail: format!("20 seeds, k=20 l=16: random {random:.4} <= greedy-train {train:.4} <= meta-greedy {meta:.4} <= 1, meta >= 0.90"),
    }
}

fn c8() -> Outcome {
    let cfg = desk_config(
        "kind = \"vary-k\"\nk = [10, 20, 30]\nratio = 0.8",
        "\"meta-greedy\", \"replacement-greedy\"",
        true,
    );
    let r = run_experiment(&cfg).unwrap();
    let curve = |method| {
        [(10, 8), (20, 16), (30, 24)]
            .map(|(k, l)| r.mean(method, k, l, |row| row.normalized).unwrap())
    };
    let (meta, two_stage) = (curve(Method::MetaGreedy), curve(Method::ReplacementGreedy));
    Outcome {
        passed: meta[2] >= two_stage[2],
        detail: format!(
            "20 seeds, q = n(k-l)/k = 100: at k=30 meta-greedy {:.4} >= replacement-greedy {:.4}; curves k=10,20,30 meta {meta:.4?} two-stage {two_stage:.4?}",
            meta[2], two_stage[2]
        ),
    }
}

fn c9() -> Outcome {
    let (n, k, l) = (500u64, 20u64, 16u64);
    let suite = synthetic_suite(SuiteKind::RideshareLike, 500, 50, 50, 0).unwrap();
    let budget = Budget::new(20, 16, 500).unwrap();
    let opts = SuiteOptions {
        methods: vec![Method::GreedyTest, Method::MetaGreedy],
        q: None,
        seed: 0,
    };
    let reports = run_method_suite(&suite.train, &suite.test, budget, &opts).unwrap();
    let greedy_max = reports[0].max_test_calls;
    let meta_max = reports[1].max_test_calls;
    let bounds_ok = greedy_max <= 2 * k * n + k && meta_max <= 2 * (k - l) * n + (k - l);

    // exact audit: 1 call to open the cursor, then one per remaining candidate per round
    let trained = meta_greedy(&suite.train, budget).unwrap();
    let meta_expected = 1 + (0..k - l).map(|r| n - l - r).sum::<u64>();
    let greedy_expected = 1 + (0..k).map(|r| n - r).sum::<u64>();
    let mut audit_bad = 0;
    for f in &suite.test {
        let c = complete_at_test(&f.fresh(), &trained.s_tr, 20, 16).unwrap();
        let g = f.fresh();
        greedy(&g, &ElementSet::new(), 20, None).unwrap();
        if c.calls != meta_expected || g.calls() != greedy_expected {
            audit_bad += 1;
        }
    }
    Outcome {
        passed: bounds_ok && audit_bad == 0,
        detail: format!(
            "n=500 k=20 l=16: max greedy-test calls {greedy_max} <= {}, max meta-greedy calls {meta_max} <= {}; exact audit ({greedy_expected}, {meta_expected}) mismatches {audit_bad} of 50",
            2 * k * n + k,
            2 * (k - l) * n + (k - l)
        ),
    }
}

fn c10() -> Outcome {
    let cfg = ExperimentConfig::from_toml(
        r#"
suite = "rideshare-like"
n = 200
m_train = 10
m_test = 10
methods = ["greedy-test", "meta-greedy", "randomized-meta-greedy", "greedy-train", "random", "replacement-greedy", "train-first", "task-first"]
seeds = [3, 1, 2]
match_test_budget = true
[sweep]
kind = "vary-l"
k = 10
l = [4, 6, 8]
"#,
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    run_experiment(&cfg).unwrap().write_csv(&a).unwrap();
    run_experiment(&cfg).unwrap().write_csv(&b).unwrap();
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    Outcome {
        passed: a == b && !a.is_empty(),
        detail: format!("two runs, {} bytes each, identical: {}", a.len(), a == b),
    }
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (1, "counterexample exactness", Duration::from_secs(1), c1),
        (2, "greedy guarantee", Duration::from_secs(30), c2),
        (3, "train-first and task-first bounds", Duration::from_secs(120), c3),
        (4, "meta-greedy factor", Duration::from_secs(120), c4),
        (5, "randomized bound", Duration::from_secs(300), c5),
        (6, "lazy and classic greedy agree", Duration::from_secs(60), c6),
        (7, "method ordering at desk scale", Duration::from_secs(600), c7),
        (8, "two-stage comparison", Duration::from_secs(900), c8),
        (9, "oracle-call accounting", Duration::from_secs(60), c9),
        (10, "determinism", Duration::from_secs(60), c10),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let passed = out.passed && took <= limit;
        if !passed {
            failed.push(id);
        }
        println!(
            "criterion {id:>2} {}: {name} ({:.2}s, limit {}s): {}",
            if passed { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            out.detail
        );
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
