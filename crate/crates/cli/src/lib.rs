//! Command-line front end: parameter scans as CSV/JSON tables, detection
//! reports on state files, and state export.

pub mod commands;
pub mod range;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qutrit_maps::states::StateFamily;

pub use range::AxisRange;
pub use table::{Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or input files.
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    TauX,
    SpaChoi,
    MaxEntangled,
}

impl From<Family> for StateFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::TauX => StateFamily::TauX,
            Family::SpaChoi => StateFamily::SpaChoi,
            Family::MaxEntangled => StateFamily::MaxEntangled,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qutrit-maps",
    version,
    about = "Scans and entanglement checks for qutrit positive maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// τ_x minor of (𝕀⊗Λ_α)(τ_x) over an (α, x) grid, with its root per α.
    ScanMinor {
        #[arg(long, default_value = "0.05:1:50")]
        alpha_range: AxisRange,
        #[arg(long, default_value = "0.01:1:100:log")]
        x_range: AxisRange,
        #[command(flatten)]
        output: Output,
    },
    /// Partial-transpose spectrum of the SPA Choi state.
    SpaSpectrum {
        #[arg(long, default_value = "0.05:1:50")]
        alpha_range: AxisRange,
        #[command(flatten)]
        output: Output,
    },
    /// Covariance matrix criterion on the SPA Choi state.
    CmcScan {
        #[arg(long, default_value = "0.05:1:50")]
        alpha_range: AxisRange,
        #[command(flatten)]
        output: Output,
    },
    /// Witness and dual-map readings on τ_x.
    WitnessTau {
        #[arg(long, default_value = "0.05:5:100")]
        x_range: AxisRange,
        #[command(flatten)]
        output: Output,
    },
    /// Full detection report for a state file, as JSON.
    Detect {
        state_file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a family member as a state file.
    Export {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        parameter: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("--out: cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

fn emit_table(table: &Table, output: &Output) -> Result<(), CliError> {
    let text = match output.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json()?,
    };
    emit(output.out.as_ref(), &text)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::ScanMinor {
            alpha_range,
            x_range,
            output,
        } => {
            alpha_range.check_alpha_domain("--alpha-range")?;
            x_range.check_x_domain("--x-range")?;
            emit_table(&commands::scan_minor(&alpha_range, &x_range)?, &output)
        }
        Command::SpaSpectrum {
            alpha_range,
            output,
        } => {
            alpha_range.check_alpha_domain("--alpha-range")?;
            emit_table(&commands::spa_spectrum(&alpha_range)?, &output)
        }
        Command::CmcScan {
            alpha_range,
            output,
        } => {
            alpha_range.check_alpha_domain("--alpha-range")?;
            emit_table(&commands::cmc_scan(&alpha_range)?, &output)
        }
        Command::WitnessTau { x_range, output } => {
            x_range.check_x_domain("--x-range")?;
            emit_table(&commands::witness_tau(&x_range)?, &output)
        }
        Command::Detect { state_file, out } => {
            let report = commands::detect(&state_file)?;
            let value =
                serde_json::to_value(&report).map_err(|e| CliError::Internal(e.to_string()))?;
            emit(out.as_ref(), &table::to_pretty(&table::round_json(value))?)
        }
        Command::Export {
            family,
            parameter,
            out,
        } => {
            let rho = commands::export(family.into(), parameter)?;
            let mut text =
                serde_json::to_string(&rho).map_err(|e| CliError::Internal(e.to_string()))?;
            text.push('\n');
            emit(out.as_ref(), &text)
        }
    }
}
