mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

/// Exit status for a malformed invocation.
const USAGE: u8 = 1;
/// Exit status for a well-formed invocation that failed on its data.
const DATA: u8 = 2;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            print_verb_help();
            return ExitCode::from(USAGE);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(DATA)
        }
    }
}

/// Long help of the verb named on the command line, if any, to stderr.
fn print_verb_help() {
    let mut cmd = args::Cli::command();
    let Some(verb) = std::env::args().nth(1) else { return };
    if let Some(sub) = cmd.find_subcommand_mut(&verb) {
        eprintln!();
        eprintln!("{}", sub.render_long_help());
    }
}
