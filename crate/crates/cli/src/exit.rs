use std::fmt;
use std::process::ExitCode;

use quasidiff::{ModelError, SolveError};

/// Process exit status contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Failure = 1,
    Usage = 2,
    Numeric = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Usage,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Numeric,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(format!("i/o error: {e}"))
    }
}

fn model_status(e: &ModelError) -> Status {
    match e {
        ModelError::Malformed(_)
        | ModelError::ExcludedDeviation { .. }
        | ModelError::StartIndex { .. } => Status::Usage,
        _ => Status::Numeric,
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError {
            status: model_status(&e),
            message: e.to_string(),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let status = match &e {
            SolveError::Model(m) => model_status(m),
            SolveError::Pivot { .. } | SolveError::SmallD { .. } => Status::Numeric,
            SolveError::WrongMode { .. }
            | SolveError::AdvancedNeutral(_)
            | SolveError::SeedWindow { .. }
            | SolveError::NonFiniteSeed { .. }
            | SolveError::NotInvertible
            | SolveError::Evaluation { .. } => Status::Usage,
        };
        CliError {
            status,
            message: e.to_string(),
        }
    }
}

impl From<quasidiff::AnalysisError> for CliError {
    fn from(e: quasidiff::AnalysisError) -> Self {
        match e {
            quasidiff::AnalysisError::Model(m) => m.into(),
            other => CliError {
                status: Status::Failure,
                message: other.to_string(),
            },
        }
    }
}
