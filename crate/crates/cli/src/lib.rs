//! `xtalk`: fidelity queries, parameter sweeps, scaling tables and coupling
//! calculations for cross-talk during a cavity-mediated iSWAP.
//!
//! Exit codes: 0 success, 2 perturbative model out of range, 64 usage error,
//! 65 bad input data or unphysical hardware, 70 numerical failure.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command, MethodArg, SweepVar};

pub const EXIT_OK: u8 = 0;
pub const EXIT_OUT_OF_RANGE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_SOFTWARE: u8 = 70;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "XTALK_THREADS";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<xtalk_core::Error> for CliError {
    fn from(err: xtalk_core::Error) -> Self {
        use xtalk_core::Error as E;
        let code = match &err {
            E::ModelOutOfRange { .. } => EXIT_OUT_OF_RANGE,
            E::RegisterSize { .. }
            | E::QubitIndex { .. }
            | E::SameQubit(_)
            | E::InvalidParameter { .. }
            | E::LambertDomain(_) => EXIT_USAGE,
            E::Resonance { .. }
            | E::NotDispersive { .. }
            | E::ZeroFrequency
            | E::SpecParse { .. }
            | E::InvalidHardware(_) => EXIT_DATA,
            E::DimensionMismatch(_)
            | E::NotHermitian { .. }
            | E::Eigen { .. }
            | E::Quadrature { .. } => EXIT_SOFTWARE,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Some(raw) = std::env::var_os(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .to_str()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer")))?;
    // a pool may already exist when called repeatedly in-process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Parse `args` and execute, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let result = configure_threads().and_then(|()| commands::execute(&cli.command, out, err));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
