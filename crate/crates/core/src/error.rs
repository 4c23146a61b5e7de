use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix must have dimension at least 1")]
    EmptyGram,
    #[error("reflection root has norm {0}, expected -2")]
    NotARoot(String),
    #[error("matrix entry {0} is not an integer")]
    NonInteger(String),
    #[error("unknown root label `{0}`")]
    UnknownLabel(String),
    #[error("model invariant violated: {0}")]
    ModelInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid generator letter {0}, expected 1..=4")]
    InvalidLetter(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vector {0} does not lie in the Neron-Severi lattice")]
    NotInLattice(String),
    #[error("expected norm {expected}, found {found}")]
    WrongNorm { expected: i64, found: String },
    #[error("vector {0} is not f or 2f for a primitive f of the curve lattice")]
    NotPrimitive(String),
    #[error("subset is not connected in the diagram")]
    Disconnected,
    #[error("affine recognition disagreement on {subset}: template says {template}, definiteness says {definiteness}")]
    RecognitionConflict { subset: String, template: String, definiteness: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by malformed input text rather than by a
    /// well-formed input that violates a precondition.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Self::Parse(_) | Self::UnknownLabel(_) | Self::DimensionMismatch { .. } | Self::InvalidLetter(_))
    }
}
