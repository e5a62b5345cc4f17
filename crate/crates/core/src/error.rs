use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("discriminant {0} is not square-free and greater than one")]
    Discriminant(u32),
    #[error("mixed quadratic fields in one configuration: sqrt({0}) and sqrt({1})")]
    MixedFields(u32, u32),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("point is not affine: {0}")]
    NotAffine(String),
    #[error("points are not collinear: {0}")]
    NotCollinear(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate point or label: {0}")]
    Duplicate(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
    #[error("witness does not satisfy the system: {0}")]
    Witness(String),
    #[error("placement failed after {attempts} attempts: {msg}")]
    PlacementFailed { attempts: usize, msg: String },
    #[error("limit exceeded: {0}")]
    CapExceeded(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
