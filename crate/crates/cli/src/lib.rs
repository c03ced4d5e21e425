//! Library side of the `grzh` binary: every subcommand is a function that
//! returns its report, so the reports can be tested without a process.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use std::fs;

use args::{Cli, Command};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("property failure: {0}")]
    Property(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Property(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<grzh_core::Error> for CliError {
    fn from(e: grzh_core::Error) -> Self {
        match e {
            grzh_core::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Rendered output of one run.
#[derive(Debug)]
pub struct Output {
    /// Text for stdout.
    pub stdout: String,
    /// Reports that ran to completion but found a failing property.
    pub property_failure: bool,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.property_failure {
            4
        } else {
            0
        }
    }
}

fn read(path: &std::path::Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()));
    }
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &std::path::Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

enum Body {
    Report(Value),
    Text(String),
}

fn dispatch(cli: &Cli) -> CliResult<(Body, bool)> {
    let caps = &cli.caps;
    if let Command::Enumerate { h, n, m } = &cli.command {
        let family = commands::enumerate(*h, *n, *m, caps)?;
        return Ok(match &cli.out {
            Some(path) => {
                write(path, &family.text)?;
                (Body::Report(family.summary), false)
            }
            None => (Body::Text(family.text), false),
        });
    }
    let (report, failed) = match &cli.command {
        Command::Enumerate { .. } => unreachable!(),
        Command::Count { h, n, k, m } => (commands::count(*h, *n, *k, *m)?, false),
        Command::GraphStats { params, exact, edges } => {
            let (report, edge_list) = commands::graph_stats(params, *exact, edges.is_some(), caps)?;
            if let (Some(path), Some(list)) = (edges, edge_list) {
                write(path, &list)?;
            }
            (report, false)
        }
        Command::Verify { moduli, suite, seed, samples, inject_fault } => {
            let suites = if suite.is_empty() { args::Suite::ALL.to_vec() } else { suite.clone() };
            let report = verify::run(moduli, &suites, *seed, *samples, caps, *inject_fault)?;
            let passed = report.passed;
            (report::with_schema(report), !passed)
        }
        Command::Ekr { params, family } => {
            let text = family.as_deref().map(read).transpose()?;
            commands::ekr(params, text.as_deref())?
        }
        Command::Code { h, n, m, d, budget } => commands::code(*h, *n, *m, *d, budget.unwrap_or(caps.node_budget), caps)?,
        Command::Rank { matrix } => (commands::rank(&read(matrix)?)?, false),
    };
    Ok((Body::Report(report), failed))
}

/// Runs one command on a thread pool of the requested size.
pub fn execute(cli: &Cli) -> CliResult<Output> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Invalid("--threads must be positive".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let (body, property_failure) = pool.install(|| dispatch(cli))?;
    let stdout = match body {
        Body::Text(text) => text,
        Body::Report(report) => {
            let text = report::render(&report, cli.format)?;
            match (&cli.out, &cli.command) {
                (Some(path), c) if !matches!(c, Command::Enumerate { .. }) => {
                    write(path, &text)?;
                    String::new()
                }
                _ => text,
            }
        }
    };
    Ok(Output { stdout, property_failure })
}
