use std::fmt;

use hstrip_core::Error;

/// Failures that end a run, each with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    InvalidGraph(String),
    Quadrature(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidGraph(_) => 2,
            CliError::Quadrature(_) => 3,
            CliError::Domain(_) => 4,
            CliError::Usage(_) => 64,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::InvalidGraph(m) => write!(f, "invalid graph function: {m}"),
            CliError::Quadrature(m) => write!(f, "quadrature failure: {m}"),
            CliError::Domain(m) => write!(f, "domain violation: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Quadrature(_) => CliError::Quadrature(msg),
            Error::NonMonotoneGraph { .. } => CliError::InvalidGraph(msg),
            Error::InvalidParameter(_) => CliError::Usage(msg),
            Error::Domain(_)
            | Error::Characteristic { .. }
            | Error::DegenerateDefiningFunction { .. }
            | Error::OutsideInterval { .. }
            | Error::BallExitsDomain { .. }
            | Error::OffAxisCenter { .. }
            | Error::SupportTouchesBoundary(_) => CliError::Domain(msg),
        }
    }
}
