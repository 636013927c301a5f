use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants fall into three broad kinds, see [`Error::kind`]: malformed or
/// inconsistent input, a violated precondition of an otherwise well-formed
/// request, and internal invariant violations that indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain must contain at least one point")]
    EmptyDomain,
    #[error("duplicate point identifier {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point identifier {0:?}")]
    UnknownPoint(String),
    #[error("concept class must contain at least one hypothesis")]
    EmptyClass,
    #[error("point index {index} out of range for a domain of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("hypothesis has {found} labels, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("sample is empty")]
    EmptySample,
    #[error("reference hypothesis {0} is not a member of the class")]
    NotAMember(String),
    #[error("points {0} and {1} are not separated by the class representation")]
    NotQuotiented(usize, usize),
    #[error("sample is not realizable: {0}")]
    NotRealizable(String),
    #[error("sample has no positively labeled point")]
    NoPositivePoint,
    #[error("invalid rank permutation: {0}")]
    InvalidPermutation(String),
    #[error("class has VC dimension at least 2: points {0} and {1} are shattered")]
    Shattered(usize, usize),
    #[error("refusing exact search: {0}")]
    SearchCap(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Coarse classification of an [`Error`], used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotRealizable(_)
            | Error::Shattered(..)
            | Error::SearchCap(_)
            | Error::NoPositivePoint => ErrorKind::Precondition,
            Error::Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
