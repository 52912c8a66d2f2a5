//! `bcs-spin`: spin correlations and entanglement of the BCS ground state.
//!
//! Subcommands: `coherence` and `sweep` stream figure-ready tables, `state`
//! prints the two-spin density matrix at one separation, `length` reports the
//! entanglement length against the coherence length. Run with `--help` for
//! the flag reference.

mod args;
mod commands;
mod config;

use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::RunConfig;

fn run() -> anyhow::Result<String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Coherence(job) => commands::coherence(&RunConfig::from_job(&job)?),
        Command::Sweep(job) => commands::sweep(&RunConfig::from_job(&job)?),
        Command::State(state) => {
            let (cfg, x) = RunConfig::from_state(&state)?;
            commands::state(&cfg, x)
        }
        Command::Length(job) => commands::length(&RunConfig::from_job(&job)?),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.as_bytes()).is_err() || stdout.flush().is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
