use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableIndex { index: usize, num_vars: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("degree in the main variable must be at least {required}, found {found}")]
    DegreeTooLow { required: u32, found: u32 },

    #[error("expected a polynomial in at most one variable")]
    NotUnivariate,

    #[error("polynomial mentions x{} and cannot drop it", index + 1)]
    MentionsVariable { index: usize },

    #[error("need at least {min} variables, found {found}")]
    TooFewVariables { min: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{value} is not a root of the Lazard residual")]
    NotARoot { value: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
