use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter is outside the range an operation is defined on.
    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("operation needs a nonempty family")]
    EmptyFamily,

    #[error("set is not a member of the family")]
    NotAMember,

    #[error("families live over different ground sets ({0})")]
    ParamsMismatch(String),

    #[error("common core is nonempty (size {0}); reduce the core first")]
    NonemptyCore(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid family spec `{0}`")]
    Spec(String),

    #[error("exhaustive enumeration refused: C(n,k) = {members} exceeds the limit {limit}")]
    Budget { members: String, limit: u64 },

    #[error("{0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
