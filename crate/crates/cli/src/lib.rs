//! File formats and the `reeb` command line front end for `reeb-metrics`.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod text;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

/// Runs one command line and returns the exit status: 0 on success, 1 on
/// I/O failures and landscape violations, 2 on usage and parse errors, 3
/// when a metric is not defined on the given inputs.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if status == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return status;
        }
    };
    match commands::execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.status()
        }
    }
}
