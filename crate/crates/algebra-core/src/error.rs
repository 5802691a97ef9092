use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("group of order {order} exceeds enumeration cap {cap}")]
    SizeCap { order: String, cap: u64 },
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("normalization required: {0}")]
    NormalizationRequired(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
