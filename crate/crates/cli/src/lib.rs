//! `rydline` command-line tool: single-point estimates, decoherence budgets,
//! parameter sweeps and time-domain simulations driven by a JSON config.

pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod setup;
pub mod simulate;
pub mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::{Format, LoadedConfig};
use crate::error::CliError;
use crate::output::Table;
use crate::report::Entry;

#[derive(Debug, Parser)]
#[command(
    name = "rydline",
    version,
    about = "Rydberg atoms coupled through a superconducting transmission line"
)]
pub struct Cli {
    /// Print the physical constants in use and exit.
    #[arg(long)]
    pub constants: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// JSON config file; missing fields take the flagship defaults.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Override a config field, e.g. `--set geometry.wire_length="1 mm"`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Write the result here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Treat validity warnings (RWA, L >> R) as errors.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Capacitances, mode, coupling g in three forms, κ and the static coupling.
    Estimate(Common),
    /// Itemized decoherence budget with the Q breakdown.
    Budget(Common),
    /// Estimate and budget over a list of values of one config field.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Dotted config path, e.g. `geometry.wire_length`.
        #[arg(long)]
        axis: String,
        /// Comma-separated values, e.g. `"1 mm,3 mm"` or `30,40,50`.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
        /// Unit appended to every value, e.g. `--values 1,3 --unit mm`.
        #[arg(long)]
        unit: Option<String>,
    },
    /// Time evolution of the configured scenario.
    Simulate(Common),
}

/// Bytes to emit plus warnings for the diagnostic stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct EstimateJson<'a> {
    items: &'a [Entry],
}

fn render_entries(entries: &[Entry], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => output::table_csv(&Table::from_entries(entries)),
        Format::Json => Ok(output::json(&EstimateJson { items: entries })),
    }
}

fn render_table(table: &Table, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => output::table_csv(table),
        Format::Json => Ok(output::json(table)),
    }
}

fn format_for(common: &Common, loaded: &LoadedConfig, fallback: Format) -> Format {
    common
        .format
        .or(loaded.config.output.format)
        .unwrap_or(fallback)
}

pub fn cmd_estimate(common: &Common) -> Result<Outcome, CliError> {
    let loaded = config::load(common.config.as_deref(), &common.set)?;
    let setup = setup::resolve(&loaded)?;
    let bytes = render_entries(
        &report::estimate(&setup)?,
        format_for(common, &loaded, Format::Csv),
    )?;
    Ok(Outcome {
        bytes,
        warnings: setup.warnings,
    })
}

pub fn cmd_budget(common: &Common) -> Result<Outcome, CliError> {
    let loaded = config::load(common.config.as_deref(), &common.set)?;
    let setup = setup::resolve(&loaded)?;
    let budget = report::budget(&setup)?;
    let bytes = match format_for(common, &loaded, Format::Json) {
        Format::Json => output::json(&budget),
        Format::Csv => output::table_csv(&Table::from_entries(&report::budget_entries(&budget)))?,
    };
    Ok(Outcome {
        bytes,
        warnings: setup.warnings,
    })
}

pub fn cmd_sweep(
    common: &Common,
    axis: &str,
    values: &[String],
    unit: Option<&str>,
) -> Result<Outcome, CliError> {
    let loaded = config::load(common.config.as_deref(), &common.set)?;
    let values: Vec<String> = match unit {
        Some(u) => values.iter().map(|v| format!("{} {u}", v.trim())).collect(),
        None => values.to_vec(),
    };
    let result = sweep::sweep(&loaded, axis, &values)?;
    let bytes = render_table(&result.table, format_for(common, &loaded, Format::Csv))?;
    Ok(Outcome {
        bytes,
        warnings: result.warnings,
    })
}

pub fn cmd_simulate(common: &Common) -> Result<Outcome, CliError> {
    let loaded = config::load(common.config.as_deref(), &common.set)?;
    let setup = setup::resolve(&loaded)?;
    let table = simulate::simulate(&setup)?;
    let bytes = render_table(&table, format_for(common, &loaded, Format::Csv))?;
    Ok(Outcome {
        bytes,
        warnings: setup.warnings,
    })
}

fn output_path(common: &Common) -> Result<Option<PathBuf>, CliError> {
    if common.output.is_some() {
        return Ok(common.output.clone());
    }
    let loaded = config::load(common.config.as_deref(), &common.set)?;
    Ok(loaded.config.output.path.map(PathBuf::from))
}

fn execute(command: &Command) -> Result<(), CliError> {
    let (common, outcome) = match command {
        Command::Estimate(c) => (c, cmd_estimate(c)),
        Command::Budget(c) => (c, cmd_budget(c)),
        Command::Sweep {
            common,
            axis,
            values,
            unit,
        } => (common, cmd_sweep(common, axis, values, unit.as_deref())),
        Command::Simulate(c) => (c, cmd_simulate(c)),
    };
    let outcome = outcome?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if common.strict && !outcome.warnings.is_empty() {
        return Err(CliError::Numerical(format!(
            "{} validity warning(s) under --strict",
            outcome.warnings.len()
        )));
    }
    output::emit(&outcome.bytes, output_path(common)?.as_deref())
}

/// Parse `args`, run, and return the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if cli.constants {
        let bytes = output::table_csv(&Table::from_entries(&report::constants()));
        return match bytes.and_then(|b| output::emit(&b, None)) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        };
    }
    let Some(command) = cli.command else {
        eprintln!(
            "error: a subcommand is required (estimate, budget, sweep, simulate); see --help"
        );
        return error::EXIT_CONFIG;
    };
    match execute(&command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
