//! `design-forge`: enumerate, verify and cross-check zero-sum block designs.
//!
//! Exit codes: 0 success, 1 verification or cross-check failure, 2 usage or
//! range error, 3 enumeration budget exceeded.

mod args;
mod commands;
mod crosscheck;
mod error;
mod records;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> error::Result<bool> {
    match &cli.command {
        Command::Enumerate(a) => commands::enumerate(a, false),
        Command::Export(a) => commands::enumerate(a, true),
        Command::VerifyBibd(a) => commands::verify_bibd_cmd(a),
        Command::VerifyGdd(a) => commands::verify_gdd_cmd(a),
        Command::Params(a) => commands::params(a),
        Command::Crosscheck(a) => crosscheck::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
