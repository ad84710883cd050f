//! Command-line front end for the sweep API: tabulates the Bell expectation
//! of a dephasing W-class state over a time grid as CSV, prints a summary
//! with the crossing analysis, and with `--find-tau` runs only the
//! sudden-death search.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical self-check
//! failure, 1 any other failure.

use std::ffi::OsString;
use std::io::{self, Write};
use std::process::ExitCode;

use thiserror::Error;

use bnsd::config::{config_path, parse_cli, ConfigError};
use bnsd::sweep::{crossing_report, run_sweep, write_csv, SweepError};

#[derive(Debug, Error)]
enum Failure {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Sweep(
                SweepError::InvalidSteps { .. }
                | SweepError::InvalidHorizon { .. }
                | SweepError::InvalidThreshold { .. },
            ) => 2,
            Failure::Sweep(SweepError::SelfCheck { .. }) => 3,
            Failure::Sweep(_) | Failure::Io(_) => 1,
        }
    }
}

fn run(args: &[OsString]) -> Result<(), Failure> {
    let file_text = match config_path(args.iter().cloned())? {
        Some(path) => Some(std::fs::read_to_string(&path).map_err(|source| {
            ConfigError::Io { path: path.display().to_string(), source }
        })?),
        None => None,
    };
    let parsed = parse_cli(args.iter().cloned(), file_text.as_deref())?;

    let stdout = io::stdout();
    let mut out = stdout.lock();

    if parsed.find_tau {
        let report = crossing_report(&parsed.config)?;
        for line in report.lines() {
            writeln!(out, "{line}")?;
        }
        return Ok(());
    }

    let (rows, summary) = run_sweep(&parsed.config)?;
    if parsed.config.output == "-" {
        write_csv(&rows, &mut out)?;
        writeln!(out)?;
    } else {
        let file = std::fs::File::create(&parsed.config.output)?;
        let mut writer = io::BufWriter::new(file);
        write_csv(&rows, &mut writer)?;
        writer.flush()?;
    }
    for line in summary.lines() {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<OsString> = std::env::args_os().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(ConfigError::Cli(err))) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
