use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word uses symbol id {0} outside the alphabet")]
    AlphabetMismatch(usize),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("relation `{relation}` does not orient left-side-leading")]
    Orientation { relation: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid machine configuration: {0}")]
    InvalidConfig(String),
    #[error("word is not a main word: {0}")]
    Decode(String),
    #[error("parameter N must be nonzero (U = 1/N is undefined)")]
    ZeroParameter,
    #[error("assignment is missing variable `{0}`")]
    MissingVariable(String),
    #[error("inconsistent dimensions: {0}")]
    Dimension(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
