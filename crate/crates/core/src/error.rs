use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is out of range or inconsistent with its companions.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A matrix does not match the zero/nonzero pattern of its graph.
    #[error("pattern violation: {0}")]
    Pattern(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    /// The requested spectrum or list provably cannot be realized.
    #[error("infeasible target ({rule}): {reason}")]
    Infeasible { rule: String, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    /// A bounded search ended without success. This proves nothing.
    #[error("not found: {0}")]
    NotFound(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    pub(crate) fn infeasible(rule: &str, reason: impl Into<String>) -> Self {
        Error::Infeasible {
            rule: rule.to_string(),
            reason: reason.into(),
        }
    }
}
