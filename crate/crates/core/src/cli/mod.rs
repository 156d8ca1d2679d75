//! Command-line drivers.
//!
//! Each subcommand resolves a [`RunConfig`] (defaults, then a `key=value`
//! file, then flags), runs on a rayon pool sized by [`WORKERS_ENV`], and
//! writes plot-ready CSV plus a `manifest.txt` that re-runs it via
//! `--config`. On any failure the files written so far are removed.
//!
//! Exit codes: 0 success, 1 invalid input, 2 invariant violated, 3 I/O.

mod commands;
mod config;

use std::ffi::OsString;
use std::io;
use std::path::{Path, PathBuf};

pub use config::{
    parse_config_file, parse_float_grid, parse_int_grid, Command, RunConfig,
    DEFAULT_MAX_ITERATIONS, DEFAULT_RECOVERY_TRIALS, DEFAULT_SEED, DEFAULT_SPECTRA_TRIALS,
    WORKERS_ENV,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(clap::Error),
    #[error("{0}")]
    Validation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) if !e.use_stderr() => 0,
            CliError::Usage(_) | CliError::Validation(_) => 1,
            CliError::Invariant(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::NoConvergence { .. } => CliError::Invariant(e.to_string()),
            e => CliError::Validation(e.to_string()),
        }
    }
}

/// What a successful command printed and wrote.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
}

/// Runs one command in-process.
pub fn execute(config: &RunConfig) -> Result<RunReport, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        std::fs::create_dir_all(&config.out).map_err(|e| CliError::io(&config.out, e))?;
        let mut outputs = commands::Outputs::default();
        match commands::run(config, &mut outputs) {
            Ok(lines) => Ok(RunReport {
                lines,
                files: outputs.into_files(),
            }),
            Err(e) => {
                outputs.discard();
                Err(e)
            }
        }
    })
}

/// Worker count from [`WORKERS_ENV`], if set.
pub fn workers_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Validation(format!(
                "{WORKERS_ENV}={v} is not a positive integer"
            ))),
        },
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = RunConfig::from_args(args).and_then(|mut config| {
        config.workers = workers_from_env()?;
        execute(&config)
    });
    match result {
        Ok(report) => {
            for line in report.lines {
                println!("{line}");
            }
            0
        }
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            CliError::Usage(e).exit_code()
        }
        Err(e) => {
            eprintln!("charsense: {e}");
            e.exit_code()
        }
    }
}
