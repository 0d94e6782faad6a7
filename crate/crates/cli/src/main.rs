//! `mrdft` command-line tool.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when `verify`
//! finds a disagreement.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use mrdft::Execution;

use args::{Cli, Command};
use commands::Failure;

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let exec = if cli.threads > 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    let run = || match &cli.command {
        Command::Transform(a) => commands::transform(a, exec),
        Command::Verify(a) => commands::verify(a, exec),
        Command::Count(a) => commands::count(a),
        Command::Bench(a) => commands::bench(a, exec),
        Command::Spectrogram(a) => commands::spectrogram(a, exec),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(run)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
