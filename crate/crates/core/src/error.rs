use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed user input: bad permutation, non-prime in a prime set, and so on.
    #[error("input error: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("element {0} is not a member of the group")]
    NotMember(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not {0}-separable")]
    NotSeparable(String),

    #[error("oracle {oracle} is undefined at {argument}")]
    OracleUndefined { oracle: String, argument: String },

    #[error("oracle {oracle} is not monotonic: {detail}")]
    OracleNotMonotonic { oracle: String, detail: String },

    #[error("{0} exceeds the digit limit")]
    TooLarge(String),

    /// A mathematical postcondition failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
