//! `qrg`: command-line front end for the quasirandom library.
//!
//! Exit codes: 0 on success, 1 on usage or input errors (reported on
//! standard error as `error[CODE]: message`), 2 when a verified bound is
//! observed to fail.

mod args;
mod commands;
mod input;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// Error raised by the front end itself.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Whether every checked bound held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violation,
}

fn error_code(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<quasirandom::Error>() {
        e.code()
    } else if let Some(e) = err.downcast_ref::<CliError>() {
        e.code
    } else if err.downcast_ref::<serde_json::Error>().is_some() {
        "E_JSON"
    } else if err.downcast_ref::<std::io::Error>().is_some() {
        "E_IO"
    } else {
        "E_INPUT"
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                let text = e.to_string();
                let first = text.lines().next().unwrap_or("invalid arguments");
                let msg = first.strip_prefix("error: ").unwrap_or(first);
                eprintln!("error[E_USAGE]: {}", one_line(msg));
                return ExitCode::from(1);
            }
        },
    };
    match commands::run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => {
            eprintln!("error[E_VIOLATION]: a checked bound failed; see the report");
            ExitCode::from(2)
        }
        Err(err) => {
            let chain: Vec<String> = err.chain().map(|c| c.to_string()).collect();
            eprintln!("error[{}]: {}", error_code(&err), one_line(&chain.join(": ")));
            ExitCode::from(1)
        }
    }
}
