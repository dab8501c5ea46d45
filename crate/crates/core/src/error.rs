use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate line: both x and y coefficients vanish")]
    DegenerateLine,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate line label `{0}`")]
    DuplicateLabel(String),
    #[error("lines `{0}` and `{1}` coincide")]
    DuplicateLine(String, String),
    #[error("unknown line label `{0}`")]
    UnknownLabel(String),
    #[error("line `{0}` has non-real coefficients")]
    NonReal(String),
    #[error("relator index {index} out of range ({len} relators)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("relator indices must differ")]
    SameIndex,
    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),
    #[error("generator `{0}` cannot be eliminated with the chosen relator")]
    NotEliminable(String),
    #[error("arrangement is not generic for the sweep: {0}")]
    NotGeneric(String),
    #[error("vertex multiplicity {0} is below 2")]
    BadMultiplicity(usize),
    #[error("multiplicity {0} is below 3")]
    MultiplicityTooSmall(usize),
    #[error("construction search exhausted: {0}")]
    SearchExhausted(String),
    #[error("relators mention generators outside h1..hn")]
    BadRelators,
    #[error("presentation does not have the expected shape: {0}")]
    ShapeMismatch(String),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("family degenerates at t = {0}")]
    DegenerateAtSample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
