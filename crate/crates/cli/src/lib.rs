//! Batch runner for the fermiwig experiments: config handling, checks and
//! CSV/JSON artifacts.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod report;

use std::path::Path;
use std::time::Instant;

pub use config::{Experiment, ExperimentConfig};
pub use error::CliError;
pub use report::{Check, RunReport, VerifyAllReport};

use output::{to_pretty_json, write_atomic, Staging};

pub const VERIFY_ALL_FILE: &str = "verify-all.json";

fn refuse_existing<T>(path: &Path) -> Result<T, CliError> {
    Err(CliError::Usage(format!(
        "{} already exists; pass --force to replace it",
        path.display()
    )))
}

/// Runs one experiment and writes `<output_dir>/<experiment>/{*.csv, report.json}`.
pub fn run(cfg: &ExperimentConfig, force: bool) -> Result<RunReport, CliError> {
    let cfg = cfg.resolved()?;
    let target = cfg.output_dir.join(cfg.experiment.name());
    if target.exists() && !force {
        return refuse_existing(&target);
    }
    let start = Instant::now();
    let out = experiments::execute(&cfg)?;
    let mut report = RunReport {
        pass: out.checks.iter().all(|c| c.pass),
        config: cfg,
        checks: out.checks,
        error: None,
        wall_clock_seconds: 0.0,
        artifacts: vec![],
    };
    std::fs::create_dir_all(&report.config.output_dir)?;
    let staging = Staging::new(target)?;
    for t in &out.tables {
        staging.write(&t.file_name(), &t.to_csv()?)?;
        report.artifacts.push(t.file_name());
    }
    report.artifacts.push("report.json".into());
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    staging.write("report.json", &to_pretty_json(&report)?)?;
    staging.commit()?;
    Ok(report)
}

/// Every experiment with default params, in [`Experiment::ALL`] order. A failing
/// run is recorded with its error and the remaining runs still execute.
pub fn verify_all(seed: u64, out: &Path, force: bool) -> Result<VerifyAllReport, CliError> {
    if !force {
        let summary = out.join(VERIFY_ALL_FILE);
        if summary.exists() {
            return refuse_existing(&summary);
        }
        for e in Experiment::ALL {
            let t = out.join(e.name());
            if t.exists() {
                return refuse_existing(&t);
            }
        }
    }
    let start = Instant::now();
    let mut runs = vec![];
    for e in Experiment::ALL {
        let cfg = ExperimentConfig::new(e, seed, out.to_path_buf());
        let t0 = Instant::now();
        let report = match run(&cfg, true) {
            Ok(r) => r,
            Err(err) => RunReport {
                config: cfg.resolved()?,
                checks: vec![],
                pass: false,
                error: Some(err.to_string()),
                wall_clock_seconds: t0.elapsed().as_secs_f64(),
                artifacts: vec![],
            },
        };
        runs.push(report);
    }
    let report = VerifyAllReport {
        seed,
        pass: runs.iter().all(|r| r.pass),
        runs,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    write_atomic(&out.join(VERIFY_ALL_FILE), &to_pretty_json(&report)?)?;
    Ok(report)
}
