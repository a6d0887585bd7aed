use std::path::PathBuf;

use cyclocode_core::closedform::ClosedFormError;
use cyclocode_core::code::CodeError;
use cyclocode_core::cyclotomy::{SpecError, Violation};
use cyclocode_core::field::FieldError;
use cyclocode_core::ghw::GhwError;
use cyclocode_core::subspace::SubspaceError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid specification: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidSpec(Vec<Violation>),
    #[error("{0}")]
    Usage(String),
    #[error("grid line {line}: {message}")]
    GridParse { line: usize, message: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("consistency check failed: {0}")]
    Mismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec(_) | CliError::Usage(_) | CliError::GridParse { .. } => {
                EXIT_VALIDATION
            }
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Mismatch(_) | CliError::Internal(_) => EXIT_MISMATCH,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            CliError::InvalidSpec(v) => v,
            _ => &[],
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::FieldTooLarge { .. } => CliError::Budget(e.to_string()),
            FieldError::NotPrime(_) | FieldError::ZeroDegree { .. } => {
                CliError::InvalidSpec(vec![Violation::BadField {
                    reason: e.to_string(),
                }])
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Invalid(v) => CliError::InvalidSpec(v),
            SpecError::Field(f) => f.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SubspaceError> for CliError {
    fn from(e: SubspaceError) -> Self {
        match e {
            SubspaceError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            SubspaceError::BadDimension { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CodeError::NonIntegerResult(_) => CliError::Mismatch(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<GhwError> for CliError {
    fn from(e: GhwError) -> Self {
        match e {
            GhwError::BadR { .. } => CliError::Usage(e.to_string()),
            GhwError::Subspace(s) => s.into(),
            GhwError::Spec(s) => s.into(),
            GhwError::Code(c) => c.into(),
            GhwError::NonIntegerResult(_) | GhwError::NotIncreasing { .. } => {
                CliError::Mismatch(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<ClosedFormError> for CliError {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::BadR { .. } => CliError::Usage(e.to_string()),
            ClosedFormError::WitnessDisagreement { .. } | ClosedFormError::NonIntegral { .. } => {
                CliError::Mismatch(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}
