use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("generator word does not multiply to the element: {0}")]
    Factorization(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("structure: {0}")]
    Structure(String),
    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),
    #[error(transparent)]
    Diagram(#[from] bratteli::BratteliError),
}

pub type Result<T> = std::result::Result<T, RepError>;
