use thiserror::Error;

/// Errors shared by every solver and parser in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SscError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A caller broke a documented precondition (bad witness length, invalid
    /// structural set, malformed decomposition, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A configured size or search budget was exceeded. Never a wrong answer.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl SscError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        SscError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SscError>;
