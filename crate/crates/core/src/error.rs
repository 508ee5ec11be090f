use thiserror::Error;

/// Errors raised by the combinatorial and algebraic layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments outside an operation's domain (unknown labels, repeated
    /// labels, out-of-range subsets, field too small, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data that violates a type invariant.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A graph whose partition/split data is not even well formed.
    #[error("malformed graph: {0}")]
    Structure(String),
    /// The complex is not at least triparted.
    #[error("complex is not at least triparted")]
    NotTriparted,
    /// Something that should be impossible happened; always a bug or a false
    /// modelling assumption.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
