use thiserror::Error;

/// Errors raised by the algebra and atlas operations.
///
/// Validation of atlases and actions does not use this type: structural
/// checks collect their findings in a [`crate::bundle::ValidationReport`]
/// instead of failing on the first problem.
#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error("chart mismatch: expected `{expected}`, found `{found}`")]
    ChartMismatch { expected: String, found: String },

    #[error("parity mismatch for `{coord}`: {detail}")]
    ParityMismatch { coord: String, detail: String },

    #[error("no assignment for coordinate `{coord}`")]
    MissingAssignment { coord: String },

    #[error("unknown coordinate `{coord}` in chart `{chart}`")]
    UnknownCoordinate { coord: String, chart: String },

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("permutation size mismatch: expected {expected}, found {found}")]
    PermSize { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("action is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("provenance mismatch: {0}")]
    Provenance(String),

    #[error("coordinate change is not graded-unipotent: {0}")]
    NotUnipotent(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
