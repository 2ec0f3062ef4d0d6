use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible domain.
    #[error("parameter `{name}` = {value} violates: {constraint}")]
    Param {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// An input is degenerate (empty sample, all-zero path, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Provenance tags of two paths do not line up.
    #[error("alignment error: {0}")]
    Alignment(String),

    /// A coefficient table is too short for the requested operation.
    #[error("insufficient truncation: {0}")]
    Truncation(String),

    /// Numerical quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// A catalog reference could not be resolved.
    #[error("unresolved reference: {0}")]
    Unresolved(String),

    /// A configuration file failed to parse.
    #[error("config error: {0}")]
    Config(String),

    /// A parsed configuration failed the precondition sweep.
    #[error("validation failed: {0}")]
    Validation(String),

    /// Runtime numerical failure (NaN, overflow, non-convergence).
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn param(name: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::Param {
            name,
            value,
            constraint,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
