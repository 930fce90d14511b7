use thiserror::Error;

/// Errors raised by the numerical and exact routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not reach its tail criterion within the term budget.
    #[error("truncation failure: {what} did not converge within {terms} terms")]
    Truncation { what: String, terms: usize },

    /// A bound or envelope was requested below the point where it is valid.
    #[error("regime error: {what} requires p >= {floor}, got p = {p}")]
    Regime { what: String, floor: f64, p: f64 },

    /// An iterative solver failed to converge.
    #[error("solver error: {0}")]
    Solver(String),

    /// An internal cross-check failed (e.g. a value that must be an integer was not).
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Invalid, degenerate or unsupported input that is not a mathematical domain issue.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn regime(what: impl Into<String>, floor: f64, p: f64) -> Self {
        Error::Regime {
            what: what.into(),
            floor,
            p,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
