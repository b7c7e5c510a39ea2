use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length vector needs at least 3 sides, got {0}")]
    TooFewSides(usize),
    #[error("side lengths must be strictly positive (entry {index} is {value})")]
    NonPositiveLength { index: usize, value: String },
    #[error("length vector is not generic: {0}")]
    NonGeneric(String),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("index {index} is outside [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("gee of size {size} exceeds n-3 = {limit}")]
    GeeTooLarge { size: usize, limit: usize },
    #[error("n = {n} is outside the supported range {min}..={max}")]
    UnsupportedN { n: usize, min: usize, max: usize },
    #[error("degree {d} is outside {min}..={max}")]
    DegreeOutOfRange { d: usize, min: usize, max: usize },
    #[error("genetic code {0} is empty (the polygon space is empty)")]
    EmptyCode(String),
    #[error("genetic code {0} has more than one gee")]
    NotMonogenic(String),
    #[error("identity precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
