mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::UsageError;
use crate::config::RunConfig;
use crate::report::Report;

#[derive(Parser)]
#[command(name = "swlift", version, about = "Seiberg-Witten configurations lifted to circle bundles")]
struct Cli {
    /// TOML configuration file; missing keys take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding `output` from the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed, overriding `seed` from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Fibrewise Clifford identities and torus field operations.
    Verify,
    /// Compare the lifted Dirac operator and cubic residual with the base equations.
    LiftCheck,
    /// Relax a perturbed manufactured solution back to a solution.
    Solve,
    /// Kähler-Einstein model table.
    KeReport,
    /// Finite-difference Ricci tensor of a flat-base circle bundle.
    RicciOracle,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::LiftCheck => "lift-check",
            Command::Solve => "solve",
            Command::KeReport => "ke-report",
            Command::RicciOracle => "ricci-oracle",
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGED: u8 = 3;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<swlift::Error>() {
        Some(swlift::Error::Diverged(_)) | Some(swlift::Error::StepUnderflow(_)) => EXIT_DIVERGED,
        Some(swlift::Error::Io(_)) => EXIT_FAIL,
        _ if e.downcast_ref::<UsageError>().is_some() => EXIT_USAGE,
        Some(_) => EXIT_USAGE,
        None => EXIT_FAIL,
    }
}

fn load(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.output = o.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli, cfg: &RunConfig) -> anyhow::Result<Report> {
    std::fs::create_dir_all(&cfg.output)?;
    std::fs::write(cfg.output.join("config.toml"), cfg.to_toml()?)?;
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Verify => commands::verify(cfg)?,
        Command::LiftCheck => commands::lift_check(cfg)?,
        Command::Solve => commands::solve(cfg, &cfg.output)?,
        Command::KeReport => commands::ke_report(cfg, &cfg.output)?,
        Command::RicciOracle => commands::ricci(cfg)?,
    };
    let name = cli.command.name();
    let report = Report::new(name, cfg, outcome.checks, outcome.notes, start.elapsed().as_secs_f64());
    report.write_json(&cfg.output.join(format!("{name}.json")))?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli, &cfg) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
