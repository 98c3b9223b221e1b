//! Library half of the `hcurve` binary: argument definitions, deterministic
//! JSON output, and the subcommand implementations.
//!
//! Exit codes: 0 success (and verification passed), 1 a verification ran and
//! failed, 2 usage or input error (bad flags, unreadable or invalid files,
//! parameters outside their domain), 3 numerical failure (non-generic theta,
//! diverged continuation, unresolved transition structure, and similar).

pub mod args;
pub mod commands;
pub mod json;

use clap::Parser;
use harmonic_curves::Error;

use args::{Cli, Command};

/// A subcommand failure carrying the process exit code.
#[derive(Debug)]
pub struct AppError {
    pub code: i32,
    pub message: String,
}

/// Usage/input error (exit 2).
pub fn usage(message: impl Into<String>) -> AppError {
    AppError {
        code: 2,
        message: message.into(),
    }
}

/// Map library errors onto exit codes: malformed or out-of-domain input is
/// usage (2); failures discovered during computation are numerical (3).
pub fn classify(err: &Error) -> i32 {
    match err {
        Error::EmptyRootSet
        | Error::NonFinite { .. }
        | Error::MultiplicityCount { .. }
        | Error::ZeroMultiplicity { .. }
        | Error::RootOffCircle { .. }
        | Error::DegreeTooLow { .. }
        | Error::CoincidentUnitPoints
        | Error::InvalidParameter { .. }
        | Error::RootIndexOutOfRange { .. }
        | Error::InvalidWindow { .. } => 2,
        Error::RootFindingDidNotConverge { .. }
        | Error::DegenerateCircle
        | Error::NonGenericTheta { .. }
        | Error::CorrectorDiverged { .. }
        | Error::InconsistentContinuation { .. }
        | Error::InconsistentMatching { .. }
        | Error::UnresolvedTransition { .. }
        | Error::DeflationFailed { .. } => 3,
    }
}

impl From<Error> for AppError {
    fn from(err: Error) -> AppError {
        AppError {
            code: classify(&err),
            message: err.to_string(),
        }
    }
}

/// Parse `argv` and run the selected subcommand, returning the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return err.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Trace(a) => commands::trace_cmd(a),
        Command::Matching(a) => commands::matching_cmd(a),
        Command::Necklace(a) => commands::necklace_cmd(a),
        Command::Tangents(a) => commands::tangents_cmd(a),
        Command::Render(a) => commands::render_cmd(a),
        Command::Demo(a) => commands::demo(a),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    }
}
