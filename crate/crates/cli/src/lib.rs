//! Command-line front end for `ualg`. [`run`] parses arguments and computes
//! a [`CommandResult`] without touching stdout, so tests can call it in
//! process; the `ual` binary only emits what it returns.

mod args;
mod commands;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};
use ualg::Error;

pub use args::{Cli, Command};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ValidationError,
    InputError,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ValidationError => 1,
            Status::InputError => 2,
            Status::BudgetExceeded => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::ValidationError => "validation_error",
            Status::InputError => "input_error",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }

    fn of(e: &Error) -> Status {
        match e {
            Error::BudgetExceeded { .. } => Status::BudgetExceeded,
            Error::Input(_)
            | Error::Field(_)
            | Error::UnknownBuiltin(_)
            | Error::InvalidParameter(_)
            | Error::InvalidAlgebra(_)
            | Error::InvalidGroup(_)
            | Error::DimensionMismatch(_)
            | Error::NotSquare => Status::InputError,
            _ => Status::ValidationError,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn from_error(e: &Error) -> Self {
        CommandResult {
            status: Status::of(e),
            payload: json!({ "error": e.code() }),
            diagnostics: vec![e.to_string()],
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }
}

/// What a run produced: the result (absent for `--help`/`--version`), the
/// text to emit and where to put it.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Option<CommandResult>,
    pub output: String,
    pub out: Option<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.result.as_ref().map_or(0, |r| r.status.exit_code())
    }

    /// Writes the output to the `--out` file, or stdout.
    pub fn emit(&self) -> std::io::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, &self.output),
            None => {
                print!("{}", self.output);
                Ok(())
            }
        }
    }
}

fn render(result: CommandResult, out: Option<PathBuf>) -> Outcome {
    let mut output = serde_json::to_string_pretty(&result.to_json()).expect("json values serialize");
    output.push('\n');
    Outcome {
        result: Some(result),
        output,
        out,
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                result: None,
                output: e.to_string(),
                out: None,
            };
        }
        Err(e) => {
            let result = CommandResult {
                status: Status::InputError,
                payload: json!({ "error": "usage" }),
                diagnostics: vec![e.to_string().trim_end().to_string()],
            };
            return render(result, None);
        }
    };
    let result = match commands::execute(&cli.command) {
        Ok(report) => CommandResult {
            status: if report.valid {
                Status::Ok
            } else {
                Status::ValidationError
            },
            payload: report.payload,
            diagnostics: report.diagnostics,
        },
        Err(e) => CommandResult::from_error(&e),
    };
    render(result, cli.out)
}
