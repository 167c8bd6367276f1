//! Library side of the `gauss-lab` binary: config parsing, experiment
//! runners and CSV reporting.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

use std::fs;

use config::Config;
use error::CliError;
use report::Report;

/// Runs the configured experiment and writes its CSV.
pub fn execute(cfg: &Config) -> Result<Report, CliError> {
    let report = experiments::run(cfg)?;
    fs::write(&cfg.output, report.to_csv(cfg)).map_err(|source| CliError::Output {
        path: cfg.output.clone(),
        source,
    })?;
    Ok(report)
}
