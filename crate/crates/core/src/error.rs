use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k = {0} is not supported (need k >= 3)")]
    InvalidRank(i64),
    #[error("weight has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("weight {0} is not integral")]
    NotIntegral(String),
    #[error("weight {0} is not g0-dominant")]
    NotG0Dominant(String),
    #[error("weight {0} is not g-dominant")]
    NotDominant(String),
    #[error("weight {0} is not regular")]
    NotRegular(String),
    #[error("weight {0} is typical")]
    Typical(String),
    #[error("branch {branch} is not defined here: {reason}")]
    InvalidBranch { branch: String, reason: String },
    #[error("malformed atypicality type: {0}")]
    MalformedType(String),
    #[error("characters live on different windows")]
    WindowMismatch,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Malformed input rather than a mathematically invalid request.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::RankMismatch { .. } | Error::InvalidRank(_)
        )
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
