//! `minksurf` — curvature invariants, Chen classification and profile
//! construction for spacelike rotational surfaces in 4-dimensional Minkowski
//! space (plus the Euclidean reference family).
//!
//! Subcommands: `analyze`, `classify`, `construct`, `export`, `verify`.
//! Exit codes: 0 ok, 2 config error, 3 geometric precondition failure,
//! 4 empty admissible set.

// Negated comparisons like `!(lo < hi)` reject NaN along with bad ranges.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;
mod verify;

use clap::{Parser, Subcommand};

use crate::config::CliError;

#[derive(Parser)]
#[command(name = "minksurf", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the invariant pipeline over a parameter grid and emit a CSV
    /// table plus a JSON summary.
    Analyze(commands::AnalyzeArgs),
    /// Classify a rotational surface per the three Chen cases.
    Classify(commands::ClassifyArgs),
    /// Construct a profile realizing a classification target.
    Construct(commands::ConstructArgs),
    /// Export the surface as an OBJ mesh with a per-vertex attribute sidecar.
    Export(commands::ExportArgs),
    /// Run the cross-validation suite on the registry profiles.
    Verify(commands::VerifyArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(&args),
        Command::Classify(args) => commands::classify(&args),
        Command::Construct(args) => commands::construct(&args),
        Command::Export(args) => commands::export(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    match result {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Geometric(_) => 3,
            CliError::EmptyAdmissibleSet(_) => 4,
            CliError::Io(_) => 2,
            CliError::CheckFailed(_) => 1,
        }
    }
}
