mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// Completed with the expected outcome.
const EXIT_OK: u8 = 0;
/// Completed, but some tasks are unresolved.
const EXIT_UNRESOLVED: u8 = 2;
/// Bad arguments or unreadable input.
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::dispatch(&cli) {
        Ok(commands::Outcome::Completed) => ExitCode::from(EXIT_OK),
        Ok(commands::Outcome::Unresolved) => ExitCode::from(EXIT_UNRESOLVED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
