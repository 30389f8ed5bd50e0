use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{path}: {message}")]
    Field { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inner product matrix is not symmetric")]
    NotSymmetric,

    #[error("inner product matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("weyl group: {0}")]
    Weyl(String),

    #[error("n not large enough for this type: {0}")]
    NotLargeEnough(String),

    #[error("Harder-Narasimhan axiom violated: {0}")]
    HnAxiom(String),

    #[error("point is not in the attracting open set of Z_min: {0}")]
    NotInMinimalBasin(String),

    #[error("inconsistent flow graph at cell {cell}: {reason}")]
    InconsistentFlow { cell: String, reason: String },

    #[error("state already has constant unipotent stabiliser dimension {0}; nothing to blow up")]
    AlreadyConstant(u32),

    #[error("blow-up did not decrease d_max ({before} -> {after})")]
    NoDecrease { before: u32, after: u32 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Field { path: path.into(), message: message.into() }
    }

    /// Re-roots a field diagnostic under `prefix`; other errors become field errors at `prefix`.
    pub fn at(self, prefix: &str) -> Self {
        match self {
            Error::Field { path, message } => Error::Field { path: format!("{prefix}{path}"), message },
            other => Error::Field { path: prefix.to_string(), message: other.to_string() },
        }
    }
}
