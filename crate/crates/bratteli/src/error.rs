use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BratteliError {
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("not a Bratteli diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram is not locally free at level {level}")]
    NotLocallyFree { level: usize },
    #[error("{what} of size {size} exceeds cap {cap}")]
    SizeCap { what: String, size: String, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, BratteliError>;
