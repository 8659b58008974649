use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use permprob_cli::commands::{cmd_compare, cmd_dist, cmd_exact, cmd_seq, cmd_validate, Artifact};
use permprob_cli::config::{CONFIG_ENV, DEFAULT_CONFIG_FILE};
use permprob_cli::{CliError, OutputFormat, RunConfig, Settings};
use permprob_core::MatrixFamily;

/// Permanent-expansion term counts and Q/P probabilities for random 0/1 matrices.
#[derive(Debug, Parser)]
#[command(name = "permprob", version)]
struct Cli {
    /// key=value config file (default: ./permprob.conf or $PERMPROB_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// E_n(m) triangle for n = 1..N
    Dist(Common),
    /// Q and P curves on a uniform grid (csv, json or svg)
    Compare(Common),
    /// Exact Bernstein coefficients by exhaustive enumeration
    Exact(Common),
    /// Run every offline cross-check; exit 1 on any failure
    Validate {
        #[command(flatten)]
        common: Common,
        /// dist CSV to check against generated counts (needs --family)
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Sequence checks against vendored OEIS terms
    Seq(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// matrix family: A, B or C
    #[arg(long)]
    family: Option<MatrixFamily>,
    /// matrix dimension
    #[arg(long)]
    n: Option<usize>,
    /// grid points on [0, 1] (default 101)
    #[arg(long)]
    grid: Option<usize>,
    /// csv (default), json or svg
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// lift the runtime guards
    #[arg(long)]
    force: bool,
    /// enable remote OEIS lookups
    #[arg(long)]
    oeis: bool,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            family: self.family,
            n: self.n,
            grid: self.grid,
            format: self.format,
            out: self.out.clone(),
            force: self.force.then_some(true),
            oeis: self.oeis.then_some(true),
            ..Settings::default()
        }
    }
}

fn resolve(config: Option<&PathBuf>, common: &Common) -> Result<RunConfig, CliError> {
    let file = match config {
        Some(path) => Settings::load(path, true)?,
        None => match std::env::var_os(CONFIG_ENV) {
            Some(path) => Settings::load(path.as_ref(), true)?,
            None => Settings::load(DEFAULT_CONFIG_FILE.as_ref(), false)?,
        },
    };
    Ok(RunConfig::from_settings(file.overlay(common.settings())))
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(path) => fs::write(path, body).map_err(|e| CliError::io(format!("writing {}", path.display()), e)),
        None => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::io("writing stdout", e)),
    }
}

fn emit_artifact(cfg: &RunConfig, art: Artifact) -> Result<(), CliError> {
    emit(cfg, &art.body)?;
    for note in art.notes {
        eprintln!("{note}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.config.as_ref();
    match &cli.command {
        Command::Dist(c) => {
            let cfg = resolve(config, c)?;
            emit_artifact(&cfg, cmd_dist(&cfg)?)
        }
        Command::Compare(c) => {
            let cfg = resolve(config, c)?;
            emit_artifact(&cfg, cmd_compare(&cfg)?)
        }
        Command::Exact(c) => {
            let cfg = resolve(config, c)?;
            emit_artifact(&cfg, cmd_exact(&cfg)?)
        }
        Command::Seq(c) => {
            let cfg = resolve(config, c)?;
            emit_artifact(&cfg, cmd_seq(&cfg)?)
        }
        Command::Validate { common, table } => {
            let cfg = resolve(config, common)?;
            let report = cmd_validate(&cfg, table.as_deref())?;
            emit(&cfg, &report.render())?;
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::ValidationFailed(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("permprob: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
