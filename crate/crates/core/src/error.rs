use thiserror::Error;

/// Errors raised by the set-membership toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot bisect a degenerate or unbounded box")]
    DegenerateBox,
    #[error("domain must be bounded and non-empty")]
    UnboundedDomain,
    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),
    #[error("singular transform")]
    SingularTransform,
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}: {message}")]
    ParseAt { line: usize, message: String },
    #[error("pose is not in free space")]
    PoseNotFree,
    #[error("map error: {0}")]
    Map(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
