//! Library half of the `padic-mzv` binary: flag parsing, output formats and
//! the verification suites, exposed so the integration tests can drive them.

pub mod config;
pub mod output;
pub mod suites;
pub mod table;

use frobenius_ode::OdeError;
use iterated_sums::SumError;
use mzv_closed_forms::MzvError;
use padic_core::PadicError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("uncertified: {0}")]
    Uncertified(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) | CliError::Domain(_) => 2,
            CliError::Uncertified(_) => 3,
        }
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::PrecisionExhausted(_) | PadicError::DivisionByZero | PadicError::NonUnit(_) => {
                CliError::Uncertified(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SumError> for CliError {
    fn from(e: SumError) -> Self {
        match e {
            SumError::Padic(p) => p.into(),
            SumError::Budget(_) => CliError::Usage(e.to_string()),
            SumError::BadSpec(_) | SumError::NotLocallyAnalytic(_) => CliError::Domain(e.to_string()),
            SumError::Inconsistent { .. } => CliError::Uncertified(e.to_string()),
        }
    }
}

impl From<MzvError> for CliError {
    fn from(e: MzvError) -> Self {
        match e {
            MzvError::Domain(s) => CliError::Domain(s),
            MzvError::Uncertified { .. } => CliError::Uncertified(e.to_string()),
            MzvError::Sum(s) => s.into(),
            MzvError::Padic(p) => p.into(),
        }
    }
}

impl From<OdeError> for CliError {
    fn from(e: OdeError) -> Self {
        match e {
            OdeError::Config(_) | OdeError::NotRecorded(_) => CliError::Usage(e.to_string()),
            OdeError::Sum(s) => s.into(),
            OdeError::Padic(p) => p.into(),
        }
    }
}
