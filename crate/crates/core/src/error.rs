use thiserror::Error;

/// Errors raised by the algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element or morphism is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("morphism is not idempotent")]
    NotIdempotent,
    #[error("section contract violated: g o s is not the identity")]
    SectionViolated,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

impl From<serde_json::Error> for AlgebraError {
    fn from(e: serde_json::Error) -> Self {
        AlgebraError::Json(e.to_string())
    }
}
