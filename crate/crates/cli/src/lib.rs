//! Command-line front end for `slosh-iso`.
//!
//! [`run`] parses arguments, runs one subcommand and returns the process
//! exit code: 0 on success, 1 on I/O failure, 2 on usage or input errors,
//! 3 when an eigensolver failed to converge (the partial report is still
//! written).

pub mod args;
mod commands;
pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

use args::{Cli, Command};

pub const SCHEMA_VERSION: u32 = 1;
pub const THREADS_ENV: &str = "SLOSH_ISO_THREADS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Unreadable input file.
    Input(String),
    Core(slosh_iso::Error),
    Io(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Core(e) => e.code(),
            CliError::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<slosh_iso::Error> for CliError {
    fn from(e: slosh_iso::Error) -> Self {
        CliError::Core(e)
    }
}

/// Outcome of a command that ran to the end; failures are per-shape
/// numerical failures already reported in the output.
pub(crate) struct Finished {
    pub failures: usize,
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return report(&e),
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(Finished { failures: 0 }) => 0,
        Ok(Finished { failures }) => {
            eprintln!("error[no-convergence]: {failures} computation(s) failed; partial report written");
            3
        }
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> i32 {
    eprintln!("error[{}]: {e}", e.code());
    e.exit_code()
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Io(format!("thread pool: {e}")))
}

fn dispatch(command: Command) -> Result<Finished, CliError> {
    match command {
        Command::Eig(a) => commands::eig(&a),
        Command::Slosh(a) => commands::slosh(&a),
        Command::Check(a) => commands::check(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Troesch(a) => commands::troesch(&a),
        Command::Mesh(a) => commands::mesh(&a),
    }
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub(crate) fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("<stdout>: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Io("x".into()).exit_code(), 1);
        let stalled = slosh_iso::Error::NoConvergence {
            sweeps: 3,
            residuals: vec![1.0],
        };
        assert_eq!(CliError::Core(stalled).exit_code(), 3);
        assert_eq!(
            CliError::Core(slosh_iso::Error::InvalidParameter("x".into())).exit_code(),
            2
        );
    }
}
