//! Experiment runner and verification checks for submodular meta-learning.

pub mod checks;
pub mod config;
pub mod experiment;

pub use checks::{verify_cmd, Check, Scope, VerifyReport};
pub use config::{DataConfig, ExperimentConfig, Sweep};
pub use experiment::{run_and_write, run_experiment, ExperimentResult, ResultRow, CSV_HEADER};
