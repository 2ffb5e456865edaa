//! File format and command-line front end for `novikov-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical property
//! fails, 2 for input or usage errors.

pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::{execute, Cli, CliError, Command, Outcome, Status};
pub use format::{parse, serialize, AlgebraFile, FileError, Metadata, Parsed};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let json = cli.command.json();
    match execute(&cli.command) {
        Ok(outcome) => {
            let body = if json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("report serializes");
                s.push('\n');
                s
            } else {
                outcome.text
            };
            let _ = out.write_all(body.as_bytes());
            match outcome.status {
                Status::Pass => EXIT_PASS,
                Status::Fail => EXIT_FAIL,
            }
        }
        Err(e) => {
            if json {
                let report = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            let _ = writeln!(err, "error[{}]: {e}", e.kind());
            EXIT_ERROR
        }
    }
}
