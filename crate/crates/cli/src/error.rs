use pff::MathError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{0}")]
    Math(MathError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::NotPrime(_)
            | MathError::InvalidArgument(_)
            | MathError::DomainViolation(_)
            | MathError::BadCoefficients { .. }
            | MathError::NotAutonomous => CliError::Validation(e.to_string()),
            e => CliError::Math(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Validation(msg.into()))
}
