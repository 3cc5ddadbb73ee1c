use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field order {0} (supported: 2, 3, 4, 5, 7, 8, 9, 16)")]
    UnsupportedField(u16),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid Ferrers diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
