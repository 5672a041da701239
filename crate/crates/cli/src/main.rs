mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use error::EXIT_USAGE;

fn configure_threads() {
    let Ok(value) = std::env::var("OXTOBY_LAB_THREADS") else {
        return;
    };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => {
            oxtoby_core::configure_threads(n);
        }
        _ => eprintln!("warning: ignoring OXTOBY_LAB_THREADS={value:?}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    configure_threads();
    let json = cli.json;
    match commands::run(cli.command) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("json value serializes"));
            } else {
                println!("{}", report.text);
            }
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
