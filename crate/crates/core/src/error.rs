use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("non-parallel relation: {0}")]
    NonParallel(String),
    #[error("path does not compose: {0}")]
    NotComposable(String),
    #[error("cannot normalize presentation: {0}")]
    Normalize(String),
    #[error("rewrite completion exceeded its budget: {0}")]
    CompletionBudget(String),
    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("coefficient {0} is not defined in this field")]
    Coefficient(String),
    #[error("element is not in the radical: {0}")]
    NotInRadical(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a map of complexes: {0}")]
    NotChainMap(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
