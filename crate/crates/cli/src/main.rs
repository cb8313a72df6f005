//! `vfrep`: command-line front end for `vfrep-core`.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a verification
//! fails, 3 on an internal error.

mod args;
mod commands;
mod input;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;
use vfrep_core::{CartanError, OracleError, ParseError, RepresentationError, SolutionError};

use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 3,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_error!(ParseError, CartanError, SolutionError, RepresentationError);

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge(_) | OracleError::Cartan(_) | OracleError::ZeroDiagonal(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<commands::Report, CliError> {
    match &cli.command {
        Command::Classify(a) => commands::classify(a),
        Command::Solutions(a) => commands::solutions(a),
        Command::Represent(a) => commands::represent(a),
        Command::Verify(a) => commands::verify(a),
        Command::LoopCheck(a) => commands::loop_check(a),
        Command::Search(a) => commands::search(a),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    let o = match &cli.command {
        Command::Classify(a) => &a.output,
        Command::Solutions(a) => &a.output,
        Command::Represent(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::LoopCheck(a) => &a.output,
        Command::Search(a) => &a.output,
    };
    o.out.as_deref()
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for failed checks
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("vfrep: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match out_path(&cli) {
        Some(path) => fs::write(path, &report.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => io::stdout()
            .write_all(report.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("vfrep: {e}");
        return ExitCode::from(1);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("vfrep: verification failed");
        ExitCode::from(2)
    }
}
