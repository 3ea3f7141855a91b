use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed `.aut` input, with the 1-based line where it was detected.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search or construction outgrew its configured limit.
    #[error("{what} exceeded the limit of {limit}")]
    Budget { what: &'static str, limit: usize },

    /// A procedure whose success is guaranteed by a theorem did not succeed.
    /// The message carries the full instance dump.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
