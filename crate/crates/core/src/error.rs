use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature must contain at least one relation")]
    EmptySignature,
    #[error("relation arities must be positive")]
    ZeroArity,
    #[error("expected {expected} relations, found {found}")]
    RelationCount { expected: usize, found: usize },
    #[error("relation {relation}: tuple of length {found}, arity is {expected}")]
    ArityMismatch {
        relation: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} outside domain of size {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("relation 0 is not a linear order: {0}")]
    NotLinearOrder(String),
    #[error("structure is not ordered")]
    NotOrdered,
    #[error("signatures differ: {left:?} vs {right:?}")]
    SignatureMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown structure kind `{0}`")]
    UnknownKind(String),
    #[error("invalid option combination: {0}")]
    InvalidOptions(String),
    #[error("not enough data: {0}")]
    InsufficientData(String),
    #[error("input code sets are not hereditary: {0}")]
    NotHereditary(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("internal invariant violated: {0}")]
    Inconsistent(String),
    #[error("json: {0}")]
    Json(String),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    SearchFailure,
    Defect,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::SearchFailed(_) => ErrorClass::SearchFailure,
            Error::Inconsistent(_) => ErrorClass::Defect,
            _ => ErrorClass::Validation,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
