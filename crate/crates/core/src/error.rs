//! Error vocabulary shared by every module.
//!
//! The split mirrors how callers must react: `Parse` and `Input` are caller
//! mistakes, `Cap` is a refusal to start an infeasible exhaustive search,
//! and `Invariant` marks a broken internal guarantee (a bug, never expected
//! on valid inputs).

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Text-format errors, reported with a 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Structurally invalid arguments (out-of-range ids, overlapping sets,
    /// class-M2 violations, malformed specs).
    #[error("invalid input: {0}")]
    Input(String),

    /// An operation-specific precondition does not hold for the given graph.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The instance exceeds a configured exhaustive-search cap.
    #[error("cap exceeded: {0}")]
    Cap(String),

    /// A guarantee the algorithms rely on failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::Cap(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
