//! Command-line front end for `simpson-cert`.
//!
//! Every command builds a serializable report and renders it as JSON, an
//! aligned text table, or CSV. JSON keeps full `f64` precision; text and
//! CSV use ten significant digits.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;

use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub use args::{Cli, Command, Format};
pub use error::CliError;
pub use report::{AssumptionEntry, BoundEntry, RunReport};

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Renders the output of one command.
pub fn render(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Integrate(args) => {
            let report = commands::integrate(args)?;
            match args.output.format {
                Format::Json => json(&report),
                Format::Text => Ok(report.to_text()),
                Format::Csv => Ok(report.to_csv()),
            }
        }
        Command::Compare(args) => {
            let rows = commands::compare(args)?;
            match args.format {
                Format::Json => json(&rows),
                Format::Text => Ok(commands::compare_text(&rows)),
                Format::Csv => Ok(commands::compare_csv(&rows)),
            }
        }
        Command::WorkedExample(out) => {
            let example = commands::worked_example()?;
            match out.format {
                Format::Json => json(&example),
                Format::Text => Ok(example.to_text()),
                Format::Csv => Ok(example.to_csv()),
            }
        }
        Command::ListFns(out) => {
            let fns = commands::list_fns();
            match out.format {
                Format::Json => json(&fns),
                Format::Text => Ok(commands::list_fns_text(&fns)),
                Format::Csv => Ok(commands::list_fns_csv(&fns)),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let text = render(&cli.command)?;
    let out = match &cli.command {
        Command::Integrate(args) => args.output.out.as_deref(),
        Command::Compare(args) => args.out.as_deref(),
        Command::WorkedExample(out) | Command::ListFns(out) => out.out.as_deref(),
    };
    emit(&text, out)
}
