use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("non-canonical ordinal `{input}`; canonical form is `{hint}`")]
    NonCanonical { input: String, hint: String },

    #[error("left subtraction needs a <= b, got a = {a}, b = {b}")]
    NegativeDifference { a: String, b: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("cardinal level {level} is beyond the representable tower (max {max})")]
    LevelOverflow { level: usize, max: u8 },

    #[error("{0} is not a limit ordinal")]
    NotALimit(String),

    #[error("ordinal argument must be {expected}, got {got}")]
    BadOrdinal { expected: &'static str, got: String },

    #[error("relation has a cycle through vertices {witness:?}")]
    Cycle { witness: Vec<usize> },

    #[error("vertex {vertex} out of range for a poset on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("supremum cannot be computed exactly: {0}")]
    SupremumUnavailable(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed poset file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
