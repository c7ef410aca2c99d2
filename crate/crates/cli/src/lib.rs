//! Command-line front end for `nova-core`: JSON documents, residual checks,
//! derived constructions, the property harness and the exhaustive solver.
//!
//! Exit codes: 0 pass, 1 nonzero residual or counterexample, 2 input error.

pub mod commands;
pub mod doc;
pub mod props;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde_json::json;

use commands::{Cli, CliError, Command, Output};

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match &cli.command {
        Command::Derive { opts, .. } | Command::Solve { opts, .. } => opts.out.clone(),
        _ => None,
    };
    let (stdout, code) = match commands::execute(cli) {
        Ok(Output::Report(r)) => {
            eprintln!("{}", r.summary());
            (format!("{}\n", r.to_value()), r.exit_code())
        }
        Ok(Output::Document(d)) => (format!("{}\n", d.to_json()), 0),
        Ok(Output::Text(t, code)) => (t, code),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            (format!("{}\n", json!({"error": msg, "exit": 2})), 2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("precondition failed: {msg}");
            (format!("{}\n", json!({"error": msg, "exit": 1})), 1)
        }
    };
    match out {
        Some(path) if code == 0 => {
            if let Err(e) = std::fs::write(&path, &stdout) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        _ => {
            let mut so = std::io::stdout().lock();
            let _ = so.write_all(stdout.as_bytes());
            let _ = so.flush();
        }
    }
    code
}
