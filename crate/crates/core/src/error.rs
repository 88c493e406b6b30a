use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is singular: |det| = {det:e} is below {threshold:e}")]
    Singular { det: f64, threshold: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("matrix is not in SL(n, Z): determinant is {0}")]
    NotUnimodular(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{func} has a pole at {at}")]
    Pole { func: &'static str, at: String },

    #[error("quadrature missed its tolerance: error estimate {estimate:e} exceeds {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    ResourceCap { candidates: u128, cap: u128 },

    #[error("missing data: {0}")]
    Missing(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
