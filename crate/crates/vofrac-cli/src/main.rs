use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

/// Deterministic simulator for variable-order fractional dynamical systems.
#[derive(Parser)]
#[command(name = "vofrac", version, about)]
enum Cli {
    /// Integrate one configured run and write CSV/SVG/summary artifacts
    Run {
        /// Path to a TOML run configuration
        config: PathBuf,
    },
    /// Integrate the same configuration under several schemes and tabulate them
    Compare {
        /// Path to a TOML configuration with `scheme.kinds = [...]`
        config: PathBuf,
    },
    /// List the built-in systems with parameters, presets, and provenance
    ListSystems,
}

fn main() -> ExitCode {
    let result = match Cli::parse() {
        Cli::Run { config } => vofrac_cli::commands::run(&config),
        Cli::Compare { config } => vofrac_cli::commands::compare(&config),
        Cli::ListSystems => vofrac_cli::commands::list_systems(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
