//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("convergence domain violated: {0}")]
    ConvergenceDomain(String),
    #[error("singular deformation: {0}")]
    SingularDeformation(String),
    #[error("singularity of the structure function: {0}")]
    Singularity(String),
    #[error("pole at origin: {0}")]
    PoleAtOrigin(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("invalid regime: {0}")]
    InvalidRegime(String),
    #[error("convergence unverified: {0}")]
    ConvergenceUnverified(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("not representable exactly: {0}")]
    NotExact(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
