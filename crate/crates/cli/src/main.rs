mod commands;
mod input;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use input::{read_source, Failure};

/// Exact stability checks for framed pairs and coherent systems.
#[derive(Parser)]
#[command(name = "pairstab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input JSON file; `-` reads stdin.
    #[arg(default_value = "-", value_name = "FILE")]
    input: String,
    /// Decide stability instead of semistability.
    #[arg(long)]
    strict: bool,
    /// Include every evaluated inequality in the report.
    #[arg(long)]
    explain: bool,
}

#[derive(Subcommand)]
enum Command {
    /// δ-(semi)stability of a pair model: {"model", "delta"}.
    Check {
        #[command(flatten)]
        common: Common,
        /// Use the quotient form of the inequality.
        #[arg(long)]
        quotient: bool,
    },
    /// Jordan–Hölder graded object: {"model", "delta"}.
    Jh {
        #[command(flatten)]
        common: Common,
    },
    /// Walls and chambers along a ray: {"model", "ray": {"base"}}.
    Walls {
        #[command(flatten)]
        common: Common,
        /// Cross-check the walls on N grid points.
        #[arg(long, value_name = "N")]
        grid_check: Option<usize>,
    },
    /// Hilbert–Mumford weights: {"point", "weights"} or {"polynomial"}.
    Git {
        #[command(flatten)]
        common: Common,
    },
    /// Slope and section-count bounds.
    Bounds {
        #[command(flatten)]
        common: Common,
    },
    /// Coherent systems: {"model", "alpha"}.
    Systems {
        #[command(subcommand)]
        action: SystemsAction,
    },
    /// Run the built-in identity checks.
    Selftest,
}

#[derive(Subcommand)]
enum SystemsAction {
    /// α-(semi)stability of the system.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// The associated pair with δ = dim Γ·α, and its verdict.
    ToPair {
        #[command(flatten)]
        common: Common,
    },
    /// Walls along α(t) = t·alpha.
    Walls {
        #[command(flatten)]
        common: Common,
    },
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Check { common, quotient } => {
            let text = read_source(&common.input)?;
            commands::check(&text, common.strict, quotient, common.explain)
        }
        Command::Jh { common } => commands::jh(&read_source(&common.input)?, common.explain),
        Command::Walls { common, grid_check } => {
            commands::walls(&read_source(&common.input)?, grid_check)
        }
        Command::Git { common } => {
            commands::git(&read_source(&common.input)?, common.strict, common.explain)
        }
        Command::Bounds { common } => commands::bounds(&read_source(&common.input)?, common.strict),
        Command::Systems { action } => match action {
            SystemsAction::Check { common } => {
                commands::systems_check(&read_source(&common.input)?, common.strict)
            }
            SystemsAction::ToPair { common } => {
                commands::systems_to_pair(&read_source(&common.input)?, common.strict)
            }
            SystemsAction::Walls { common } => {
                commands::systems_walls(&read_source(&common.input)?)
            }
        },
        Command::Selftest => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selftest = cli.command {
        let tally = selftest::run();
        for f in &tally.failures {
            eprintln!("identity failed: {f}");
        }
        println!("identities verified: {}", tally.verified);
        return if tally.failures.is_empty() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        };
    }
    match std::panic::catch_unwind(|| run(cli.command)) {
        Ok(Ok(report)) => {
            match serde_json::to_string_pretty(&report) {
                Ok(s) => println!("{s}"),
                Err(e) => {
                    eprintln!("internal error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Ok(Err(failure)) => {
            eprintln!("{failure}");
            ExitCode::from(failure.exit_code())
        }
        Err(_) => ExitCode::from(2),
    }
}
