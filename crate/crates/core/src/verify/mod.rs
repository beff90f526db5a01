//! Exact oracles, guarantee calculators and property probes for small instances.

mod bounds;
mod brute;
mod probes;

pub use bounds::{certificate_at, proposition_bound, theorem1_certificate, theorem2_bound, BoundKind};
pub use brute::{brute_force_meta_opt, brute_force_meta_opt_capped, BruteForceResult, DEFAULT_WORK_CAP};
pub use probes::{
    check_monotone, check_submodular, diminishing_returns_at, ProbeReport, Witness, DEFAULT_PROBE_SEED,
    DEFAULT_PROBE_TRIALS,
};
