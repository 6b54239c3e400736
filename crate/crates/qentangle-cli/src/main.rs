//! Command-line front end: figure datasets, the laser occupation table,
//! verification runs and critical-state dumps.

mod commands;
mod config;
mod error;
mod figures;
mod manifest;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CustomLaser, JackiwArgs, VerifyLevel};
use config::ConfigArgs;
use error::{CliError, CliResult};
use figures::FigureArgs;
use manifest::{CommandKind, RunManifest};
use table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "qentangle",
    version,
    about = "Photon-electron entanglement datasets and checks"
)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Dataset format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for grid maps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the dataset behind figure N.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,
        #[command(flatten)]
        args: FigureArgs,
    },
    /// Mean occupation per unit intensity for the reference lasers.
    OccupationTable {
        #[command(flatten)]
        custom: CustomLaser,
    },
    /// Run the verification suite and write a JSON report.
    Verify {
        #[arg(value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
        /// Multiplier applied to every pinned tolerance.
        #[arg(long, default_value_t = 1.0)]
        tolerance: f64,
    },
    /// Dump a critical phase state.
    Jackiw {
        #[command(flatten)]
        args: JackiwArgs,
    },
}

impl Command {
    fn kind(&self) -> CommandKind {
        match self {
            Command::Figure { .. } => CommandKind::Figure,
            Command::OccupationTable { .. } => CommandKind::OccupationTable,
            Command::Verify { .. } => CommandKind::Verify,
            Command::Jackiw { .. } => CommandKind::Jackiw,
        }
    }
}

fn execute(
    cli: &Cli,
    cfg: &qentangle::params::PhysicalConfig,
    outputs: &mut Vec<PathBuf>,
) -> CliResult<()> {
    let dir = cli.out.as_path();
    let mut emit = |path: PathBuf| outputs.push(path);
    match &cli.command {
        Command::Figure { n, args } => {
            for t in figures::figure(*n, args, cfg)? {
                emit(t.write(dir, cli.format)?);
            }
        }
        Command::OccupationTable { custom } => {
            emit(commands::occupation_table(custom, cfg)?.write(dir, cli.format)?);
        }
        Command::Verify { level, tolerance } => {
            let report = commands::verify(*level, *tolerance)?;
            for c in &report.criteria {
                println!("{}", c.summary());
                for f in c.failures() {
                    println!(
                        "    FAIL {}: measured {:?}, rule {:?}",
                        f.name, f.measured, f.rule
                    );
                }
            }
            emit(commands::write_json(dir, "verify_report.json", &report)?);
            if !report.pass {
                return Err(CliError::ChecksFailed(report.failed_checks));
            }
        }
        Command::Jackiw { args } => {
            let (summary, coeffs) = commands::jackiw(args)?;
            emit(summary.write(dir, cli.format)?);
            emit(coeffs.write(dir, cli.format)?);
        }
    }
    Ok(())
}

fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("--threads {n}: {e}")))?;
    }
    let (cfg, derived) = cli.config.resolve()?;
    create_dir(&cli.out)?;
    let mut manifest = RunManifest::new(cli.command.kind(), cfg.clone(), derived);
    let outcome = execute(cli, &cfg, &mut manifest.outputs);
    manifest.finish(&outcome);
    let path = manifest.write(&cli.out)?;
    eprintln!("manifest: {}", path.display());
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
