//! Command-line front end for the kicked-top crates. The binary is `qkt`.
//!
//! Every subcommand writes CSV tables, each with a JSON sidecar holding the
//! command name, the full parameter set and any averaging descriptor, then
//! prints a one-line summary. Exit codes: 0 success, 2 invalid input,
//! 1 internal or I/O failure (and a failed `validate-exact` gate).

pub mod angle;
pub mod args;
pub mod artifact;
pub mod commands;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, FromArgMatches};

pub use angle::{parse_angle, Angle};
pub use args::{Cli, Command};

/// Environment variable with the default worker count.
pub const THREADS_ENV: &str = "QKT_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help or version text requested; not an error for the exit code.
    #[error("{0}")]
    Help(String),
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{0}")]
    GateFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) | CliError::Validation(_) => 2,
            CliError::Io(_) | CliError::Internal(_) | CliError::GateFailed(_) => 1,
        }
    }
}

impl From<classical_top::ClassicalError> for CliError {
    fn from(e: classical_top::ClassicalError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<spin_quantum::QuantumError> for CliError {
    fn from(e: spin_quantum::QuantumError) -> Self {
        use spin_quantum::QuantumError as Q;
        match e {
            Q::Internal(s) => CliError::Internal(s),
            Q::Io(s) => CliError::Io(s),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<chaos_diagnostics::DiagnosticsError> for CliError {
    fn from(e: chaos_diagnostics::DiagnosticsError) -> Self {
        match e {
            chaos_diagnostics::DiagnosticsError::Quantum(q) => q.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<exact_few_qubit::ExactError> for CliError {
    fn from(e: exact_few_qubit::ExactError) -> Self {
        match e {
            exact_few_qubit::ExactError::Quantum(q) => q.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn find_config(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

/// Turns a TOML table into `--key value` arguments. `true` becomes a bare
/// flag and `false` is dropped.
pub fn config_args(path: &Path) -> Result<Vec<OsString>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let table: toml::Table = text.parse().map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        let v = match value {
            toml::Value::Boolean(true) => {
                out.push(flag.into());
                continue;
            }
            toml::Value::Boolean(false) => continue,
            toml::Value::String(s) => s,
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Float(f) => format!("{f:?}"),
            other => return Err(CliError::Validation(format!("config key '{key}': unsupported value {other}"))),
        };
        out.push(format!("{flag}={v}").into());
    }
    Ok(out)
}

pub fn parse(argv: Vec<OsString>) -> Result<Cli, CliError> {
    let mut argv = argv;
    if let Some(path) = find_config(&argv) {
        argv.extend(config_args(&path)?);
    }
    let cmd = Cli::command().args_override_self(true).mut_subcommands(|s| s.args_override_self(true));
    let matches = cmd.try_get_matches_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    Cli::from_arg_matches(&matches).map_err(|e| CliError::Usage(e.to_string()))
}

fn thread_count(cli: &Cli) -> Result<Option<usize>, CliError> {
    if let Some(n) = cli.threads {
        return if n == 0 { Err(CliError::Validation("--threads must be positive".into())) } else { Ok(Some(n)) };
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Validation(format!("{THREADS_ENV}='{s}' is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

/// Parses, runs, and returns the one-line summary.
pub fn execute(argv: Vec<OsString>) -> Result<String, CliError> {
    let cli = parse(argv)?;
    let threads = thread_count(&cli)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| commands::dispatch(&cli))
}

/// Entry point for the binary: prints the summary or the error and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match execute(args.into_iter().map(Into::into).collect()) {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(CliError::Help(text)) => {
            print!("{text}");
            0
        }
        Err(CliError::Usage(text)) => {
            eprint!("{text}");
            2
        }
        Err(e) => {
            eprintln!("qkt: {e}");
            e.exit_code()
        }
    }
}
