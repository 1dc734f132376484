//! Front end for `qsl2`: the expression language, command dispatch, JSON
//! documents and the verification suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod eval;
pub mod json;
pub mod parse;
pub mod suites;

use clap::error::ErrorKind;
use clap::Parser;

pub use error::{CliError, CliResult};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first) without touching the
/// process streams. Exit codes: 0 success, 1 failed verification, 2 usage,
/// syntax or domain error.
pub fn run<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunResult { code: 0, stdout: text, stderr: String::new() }
                }
                _ => RunResult { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match commands::execute(&cli) {
        Ok(out) => RunResult { code: out.code, stdout: out.stdout, stderr: out.stderr },
        Err(e) => RunResult { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
