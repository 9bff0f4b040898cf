//! Config-driven command line: train, evaluate, ablate, export-figures.
//!
//! Every run is reproducible from one TOML config file; flags override
//! individual fields. Exit codes are stable: 0 success, 2 config error,
//! 3 training divergence, 4 missing artifact.

mod commands;
mod config;
mod error;
mod output;

pub use error::CliError;

use clap::{Parser, Subcommand};

use crate::config::Overrides;

#[derive(Parser, Debug)]
#[command(name = "invase", version, about = "Uncertainty-aware instance-wise feature selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train one model per resample; writes checkpoints and history CSVs.
    Train(Overrides),
    /// Evaluate saved checkpoints: gain tables and query-rate curves.
    Evaluate(Overrides),
    /// Paired runs with and without reward shaping, plus the
    /// log-variance/bias correlation comparison.
    Ablate(Overrides),
    /// Export uncertainty-band CSVs for the configured features.
    ExportFigures(Overrides),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(o) => commands::train::run(&o.resolve()?),
        Command::Evaluate(o) => commands::evaluate::run(&o.resolve()?),
        Command::Ablate(o) => commands::ablate::run(&o.resolve()?),
        Command::ExportFigures(o) => commands::export_figures::run(&o.resolve()?),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code);
    }
}
