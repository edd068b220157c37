use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The inputs are well-formed but the operation does not apply to them
    /// (e.g. decomposing by a word that never occurs).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Word-list text could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configured budget was exhausted before an answer was certain.
    /// The answer is never guessed; partial progress is reported instead.
    #[error("resource limit exceeded ({what}); explored {explored} items in {elapsed_ms} ms")]
    ResourceLimit {
        what: String,
        explored: u64,
        elapsed_ms: u64,
    },

    /// Two independent computation paths disagreed. This is a bug in the
    /// library, never a property of the input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn not_applicable(msg: impl Into<String>) -> Self {
        Error::NotApplicable(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
