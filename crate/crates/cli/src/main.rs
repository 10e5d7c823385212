use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fermiwig_cli::config::valid_names;
use fermiwig_cli::{run, verify_all, CliError, Experiment, ExperimentConfig, RunReport};

#[derive(Parser)]
#[command(
    name = "fermiwig",
    version,
    about = "Phase-space and fermionic entanglement experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a JSON config and/or flags.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// key=value, repeatable; values are parsed as JSON when possible
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        force: bool,
    },
    /// Run every experiment with default params.
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// List experiments and their params.
    List,
}

fn print_report(r: &RunReport) {
    for c in &r.checks {
        println!(
            "{} {}/{}: {:e} {} {:e}",
            if c.pass { "PASS" } else { "FAIL" },
            r.config.experiment,
            c.name,
            c.value,
            c.relation,
            c.threshold
        );
    }
    if let Some(e) = &r.error {
        println!("ERROR {}: {e}", r.config.experiment);
    }
    println!(
        "{} {} ({:.2} s)",
        if r.pass { "PASS" } else { "FAIL" },
        r.config.experiment,
        r.wall_clock_seconds
    );
}

fn build_config(
    config: Option<PathBuf>,
    experiment: Option<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    params: Vec<String>,
) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match (&config, &experiment) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        (None, Some(name)) => ExperimentConfig::new(name.parse()?, 0, "out".into()),
        (None, None) => {
            return Err(CliError::Usage(format!(
                "give --config or --experiment (one of: {})",
                valid_names()
            )))
        }
    };
    if config.is_some() {
        if let Some(name) = experiment {
            cfg.experiment = name.parse()?;
        }
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(o) = out {
        cfg.output_dir = o;
    }
    for p in &params {
        cfg.set_param(p)?;
    }
    Ok(cfg)
}

fn list() {
    for e in Experiment::ALL {
        println!("{e}: {}", e.summary());
        for p in e.params() {
            println!("    {} = {}  ({})", p.name, p.default, p.help);
        }
    }
}

fn main_inner(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Run {
            config,
            experiment,
            seed,
            out,
            params,
            force,
        } => {
            let cfg = build_config(config, experiment, seed, out, params)?;
            let report = run(&cfg, force)?;
            print_report(&report);
            Ok(report.pass)
        }
        Command::VerifyAll { seed, out, force } => {
            let report = verify_all(seed, &out, force)?;
            for r in &report.runs {
                print_report(r);
            }
            println!(
                "{} verify-all ({:.2} s)",
                if report.pass { "PASS" } else { "FAIL" },
                report.wall_clock_seconds
            );
            Ok(report.pass)
        }
        Command::List => {
            list();
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
