use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SovError {
    #[error("structure: {0}")]
    Structure(String),
    #[error("inconsistent gluing: {0}")]
    Gluing(String),
    #[error("schedule: {0}")]
    Schedule(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Quiver(#[from] quiver_count::QuiverError),
    #[error(transparent)]
    Rep(#[from] gt_rep::RepError),
    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),
    #[error(transparent)]
    Diagram(#[from] bratteli::BratteliError),
}

pub type Result<T> = std::result::Result<T, SovError>;
