//! Command-line front end of `remcalc`.
//!
//! [`run`] parses arguments, dispatches to the engine and renders one output
//! document. Exit codes: 0 on success, 1 on input errors, 2 on numerical
//! failures.

pub mod commands;
pub mod doc;
pub mod expr;
pub mod input;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{execute, Cli, Command, Format, Settings};
pub use doc::Doc;
pub use expr::{format_poly, parse_poly_expr, parse_poly_expr_in, ParseError, Var};
pub use input::CliError;

/// What a single invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn render(doc: &Doc, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let name = cli.command.name();
    match execute(&cli.command, Settings::from_cli(&cli)) {
        Ok(result) => {
            let doc = Doc::object().with("command", name).with("result", result);
            Outcome {
                code: 0,
                stdout: render(&doc, cli.format),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let error = Doc::object().with("code", e.code()).with("message", e.to_string());
            let doc = Doc::object().with("command", name).with("error", error);
            Outcome {
                code: e.exit_code(),
                stdout: render(&doc, cli.format),
                stderr: format!("remcalc {name}: {e}\n"),
            }
        }
    }
}
