use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex grade {grade} exceeds diagram height {max}")]
    Range { grade: usize, max: usize },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("inconsistent identification: {0}")]
    Gluing(String),
    #[error("word {0} is not admissible")]
    Admissibility(String),
    #[error(transparent)]
    Diagram(#[from] bratteli::BratteliError),
}

pub type Result<T> = std::result::Result<T, QuiverError>;
