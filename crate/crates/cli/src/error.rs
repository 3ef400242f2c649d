use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag, config entry or parameter value. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Design or analysis failed numerically. Exit code 1.
    #[error(transparent)]
    Numerical(nyqshape::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed input: {0}")]
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<nyqshape::Error> for CliError {
    fn from(e: nyqshape::Error) -> Self {
        use nyqshape::Error as E;
        match e {
            E::NumericalAsymmetry { .. } | E::DegenerateFilter | E::FamilyNotNyquist(_) => CliError::Numerical(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
