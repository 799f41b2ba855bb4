//! `moonvol` — file-oriented CLI over the analytics pipeline.
//!
//! Each subcommand reads and writes plain files so stages are independently
//! testable and resumable. Exit codes: 0 success, 1 user/data error,
//! 2 internal invariant failure.

use std::process::ExitCode;

use clap::Parser;
use moonvol_cli::args::{Cli, Command};
use moonvol_cli::{commands, InternalError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => commands::ingest::run(a),
        Command::Score(a) => commands::score::run(a),
        Command::Vol(a) => commands::vol::run(a),
        Command::Features(a) => commands::features::run(a),
        Command::Fit(a) => commands::fit::run(a),
        Command::Report(a) => commands::report::run(a),
        Command::Simulate(a) => commands::simulate::run(a),
        Command::Pipeline(a) => commands::pipeline::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<InternalError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
