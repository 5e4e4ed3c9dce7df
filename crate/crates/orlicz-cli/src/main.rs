//! Command-line front door: norms, twisted convolution, criterion checks,
//! the counterexample builder, and parameter sweeps.
//!
//! Exit codes follow the report semantics: 0 = holds / success,
//! 1 = fails / denied, 2 = inconclusive, 64 = usage error, 70 = computation
//! error, 74 = I/O error.

mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match commands::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
