use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unbound parameter `{0}`")]
    UnboundParam(String),
    #[error("parameter `{name}` has non-finite value {value}")]
    NonFiniteParam { name: String, value: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("no regular variation: {0}")]
    NotRegularlyVarying(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("solver failed: {0}")]
    Solver(String),
    #[error("missing potential: {0}")]
    MissingPotential(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
