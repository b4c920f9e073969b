use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec {spec:?}: {reason}")]
    GroupSyntax { spec: String, reason: String },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("subgroup {k} is not contained in subgroup {h}")]
    NotContained { k: usize, h: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A randomized construction ran out of attempts.
    #[error("attempts exhausted: {0}")]
    Exhausted(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A post-check failed. Seeing this means a violated precondition slipped
    /// through or there is a bug; it is never an expected outcome.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
