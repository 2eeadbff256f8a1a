//! `mrpals`: simulate, search, model check and validate the airplane
//! turning control model.
//!
//! Exit codes: 0 success or property holds, 1 property violated or
//! solutions found, 2 usage error, 3 invalid model, 4 execution or
//! resource failure.

mod config;
mod error;
mod inputs;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mrpals::airplane::LawVersion;

#[derive(Debug, Parser)]
#[command(
    name = "mrpals",
    version,
    about = "Multirate synchronous airplane model analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one behavior and write its status records as CSV.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Environment input per step (a decimal or `none` per line).
        #[arg(long, value_name = "PATH")]
        choices: Option<PathBuf>,
    },
    /// Breadth-first search for states satisfying a proposition.
    Search {
        #[command(flatten)]
        common: Common,
        /// unsafe-yaw, unstable, reached, or any registered proposition.
        #[arg(long, value_name = "NAME")]
        pred: String,
        /// Largest number of solutions to report.
        #[arg(long, value_name = "N", default_value_t = 1)]
        max: usize,
    },
    /// Check a time-bounded LTL formula on all behaviors.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "STR", default_value = run::STABILITY_FORMULA)]
        formula: String,
    },
    /// Check the structural rules of the model.
    Validate {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Pilot scenario: one increment in degrees, or `bot`, per line.
    #[arg(long, value_name = "PATH")]
    scenario: Option<PathBuf>,
    /// Control law version; overrides the config file.
    #[arg(long, value_name = "v1|v2")]
    laws: Option<LawVersion>,
    /// Time bound in milliseconds.
    #[arg(long, value_name = "MS")]
    bound: Option<u64>,
    /// Output CSV path (stdout for simulate when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Outer environment inputs, one decimal per line.
    #[arg(long, value_name = "PATH")]
    env_rules: Option<PathBuf>,
    /// `key = value` parameter file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Round reals to this many decimals before deduplicating states.
    #[arg(long, value_name = "N")]
    quantize: Option<u32>,
    /// Largest number of distinct states to explore.
    #[arg(long, value_name = "N")]
    budget: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
