use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use submeta_experiments::{run_and_write, verify_cmd, ExperimentConfig, Scope};

#[derive(Parser)]
#[command(name = "submeta", version, about = "Train-once initial sets for families of submodular tasks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Run this single seed instead of the configured list
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for per-method series files
        #[arg(long)]
        emit_plot_data: Option<PathBuf>,
        /// Set q so both two-stage and meta methods spend the same test budget
        #[arg(long)]
        match_test_budget: bool,
        /// Record wall-clock time per method (output no longer reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Check guarantees and known values
    Verify {
        /// bounds, counterexample or oracle
        #[arg(long)]
        scope: String,
    },
    /// Print the rectangle instance whose best augmentation is not submodular
    Counterexample,
}

fn report(scope: Scope) -> ExitCode {
    let r = verify_cmd(scope);
    for c in &r.checks {
        println!("{c}");
    }
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            out,
            emit_plot_data,
            match_test_budget,
            timing,
        } => {
            let mut cfg = match ExperimentConfig::load(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(s) = seed {
                cfg.seeds = vec![s];
            }
            cfg.out = out.or(cfg.out);
            cfg.plot_dir = emit_plot_data.or(cfg.plot_dir);
            cfg.match_test_budget |= match_test_budget;
            cfg.timing |= timing;
            match run_and_write(&cfg) {
                Ok(r) => {
                    if cfg.out.is_none() {
                        match r.to_csv() {
                            Ok(text) => print!("{text}"),
                            Err(e) => {
                                eprintln!("error: {e}");
                                return ExitCode::from(2);
                            }
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify { scope } => match scope.parse() {
            Ok(s) => report(s),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Counterexample => {
            let area = submeta_core::objectives::build_counterexample();
            let g = area.ground();
            for e in g.elements() {
                let r = area.rect(e);
                println!(
                    "{} [{}, {}] x [{}, {}] area {}",
                    g.label(e).unwrap_or("?"),
                    r.x0,
                    r.x1,
                    r.y0,
                    r.y1,
                    r.area()
                );
            }
            report(Scope::Counterexample)
        }
    }
}
