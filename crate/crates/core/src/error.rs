use thiserror::Error;

use crate::matrix::MatrixFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A size guard was exceeded. Soft guards can be lifted with [`crate::Limits::forced`].
    #[error("{what} = {n} exceeds the limit of {limit}")]
    DimensionTooLarge { what: &'static str, n: usize, limit: usize },

    #[error("matrix dimension must be between 1 and 64, got {0}")]
    InvalidDimension(usize),

    #[error("family {family} at n = {n} has {expected} variable elements, assignment has {got}")]
    LengthMismatch {
        family: MatrixFamily,
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("index m = {m} is out of range for n = {n}")]
    IndexOutOfRange { n: usize, m: usize },

    #[error("probability r = {0} is outside [0, 1]")]
    ProbabilityDomain(f64),

    #[error("row {row} has bits set beyond column {n}")]
    RowOutOfRange { row: usize, n: usize },

    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
}

impl Error {
    /// True for violations of an overridable size guard.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::DimensionTooLarge { .. })
    }
}
