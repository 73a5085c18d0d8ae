//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// Cohomology values are exact integers, so there is no tolerance anywhere:
/// anything that cannot be computed exactly is an error, and the variants
/// distinguish *why* so callers (and the CLI exit codes) can react.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: dimension mismatch, bad bounds, invalid parameters.
    #[error("input error: {0}")]
    Input(String),

    /// Operation not defined on this surface or expression shape.
    #[error("unsupported: {0}")]
    Feature(String),

    /// Checked integer arithmetic overflowed. Never silently wraps.
    #[error("arithmetic overflow: {0}")]
    Arithmetic(String),

    /// Syntax error while parsing a divisor or bundle expression.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// An assumption (or a duality refinement) contradicts a value the long
    /// exact sequence already forces. This is the verification failure signal.
    #[error("inconsistency at twist {twist}, h{index}: {msg}")]
    Inconsistency { twist: i64, index: usize, msg: String },

    /// The requested window is too small to certify tail vanishing.
    #[error("window insufficiency: {0}")]
    WindowInsufficiency(String),

    /// A predicate needed an exact entry but only an interval was available.
    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn feature(msg: impl Into<String>) -> Self {
        Error::Feature(msg.into())
    }

    pub fn indeterminate(msg: impl Into<String>) -> Self {
        Error::Indeterminate(msg.into())
    }
}
