//! `pathangle` command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 flag parse error, 3 domain
//! error, 4 output I/O error, 5 audit failure.

mod cli;
mod commands;
mod format;
mod output;
mod svg;

use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Command};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_AUDIT: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<pathangle::Error> for CliError {
    fn from(e: pathangle::Error) -> Self {
        use pathangle::Error as E;
        match e {
            E::AngleOutOfDomain(_)
            | E::ConcurrenceOutOfRange(_)
            | E::NonFinite(_)
            | E::InvalidArgument(_) => CliError::Domain(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let threads = match cli.threads {
        Some(n) => usize::from(n),
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;

    let rendered = pool.install(|| match &cli.command {
        Command::Probe(a) => commands::probe(a, cli.format),
        Command::Scan(a) => commands::scan(a, cli.format),
        Command::CriticalAngle(a) => commands::critical(a, cli.format),
        Command::Optimize(a) => commands::optimize(a, cli.format),
        Command::Audit(a) => commands::audit(a, cli.format),
        Command::LhvBound => commands::lhv_bound(cli.format),
    })?;
    output::emit(&cli.out, &rendered.body)?;
    Ok(rendered.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
