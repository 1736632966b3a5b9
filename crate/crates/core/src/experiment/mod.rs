//! Monte Carlo recovery sweeps, baseline comparison and theory reports.

mod config;
mod runner;
mod stats;
mod theory;

pub use config::{Algorithm, BihtNoise, ExperimentConfig, SnrConvention};
pub use runner::{
    constellation_power, read_rows, run_experiment, run_to_csv, trial_rng, write_rows, ResultRow, TrialOutcome,
    CSV_HEADER,
};
pub use stats::{wilson_interval, WILSON_Z};
pub use theory::{theory_report, TheoryReport};
