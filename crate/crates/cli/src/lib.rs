//! Experiment runner for the rodwave solver: configs, artifacts and plot scripts.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod plots;

pub use commands::{compare, converge, run, CompareOutcome, ConvergeReport, RunOutcome};
pub use config::{bundled, bundled_names, ExperimentConfig};
pub use error::{CliError, CliResult};
pub use plots::emit_plots;

/// Environment variable holding the default output root.
pub const OUT_ENV: &str = "RODWAVE_OUT";
