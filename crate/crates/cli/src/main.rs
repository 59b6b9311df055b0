//! `quasidiff`: solve, verify, check and classify fourth-order neutral difference equations.
//!
//! Exit status: 0 pass, 1 check or verification failure, 2 usage or document error,
//! 3 numeric failure. A solve that stops on overflow still exits 0 and prints a warning.

mod commands;
mod exit;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CheckArgs, ClassifyArgs, SolveArgs, VerifyArgs};

#[derive(Debug, Parser)]
#[command(name = "quasidiff", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve from a seed window and write the trajectory as CSV
    Solve(SolveArgs),
    /// Residuals of a closed-form candidate
    Verify(VerifyArgs),
    /// Hypothesis reports and certificates
    Check(CheckArgs),
    /// Classify a trajectory
    Classify(ClassifyArgs),
    /// List the bundled equations
    ListExamples,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => commands::solve_cmd(a),
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Check(a) => commands::check_cmd(a),
        Command::Classify(a) => commands::classify_cmd(a),
        Command::ListExamples => Ok(commands::list_examples()),
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status.into()
        }
    }
}
