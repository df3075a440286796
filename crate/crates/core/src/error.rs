use crate::realizability::RealizabilityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed its configured budget.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: String,
        limit: String,
    },

    /// An internal contract was violated. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("sequence is not exactly realizable: {0}")]
    NotRealizable(Box<RealizabilityReport>),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
