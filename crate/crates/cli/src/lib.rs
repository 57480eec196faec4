//! The `qmod` command-line tool: `eval`, `check` and `sweep` over `qmod-core`.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod check;
pub mod error;
pub mod eval;
pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use qmod_core::{RaySpec, Truncation};

pub use args::{Cli, Command, Format, RunArgs};
pub use error::{CliError, EXIT_CONVERGENCE, EXIT_DOMAIN, EXIT_FAILED_CHECK, EXIT_IO, EXIT_OK, EXIT_USAGE};

/// Rendered output and the exit code it should end with.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

/// Ray tolerances, with `--tol` overriding the relative quadrature tolerance.
pub(crate) fn ray_spec(args: &RunArgs, use_tol: bool) -> Result<RaySpec, CliError> {
    let mut spec = RaySpec::default();
    if use_tol {
        if let Some(t) = args.tol {
            if !(t > 0.0) {
                return Err(error::usage(format!("--tol must be positive (got {t})")));
            }
            spec.rel_tol = t;
        }
    }
    Ok(spec)
}

pub(crate) fn truncation() -> Truncation {
    Truncation::default()
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval(a) => eval::run(a),
        Command::Check(a) => check::run(a),
        Command::Sweep(a) => sweep::run(a),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Eval(a) | Command::Check(a) | Command::Sweep(a) => a.out.as_deref(),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match out_path(cli) {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parses `args`, runs the command, writes the output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = execute(&cli).and_then(|outcome| {
        emit(&cli, &outcome.text)?;
        Ok(outcome.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qmod: {e}");
            e.exit_code()
        }
    }
}
