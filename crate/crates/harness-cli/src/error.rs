use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Sov(#[from] sov_engine::SovError),
    #[error(transparent)]
    Rep(#[from] gt_rep::RepError),
    #[error(transparent)]
    Quiver(#[from] quiver_count::QuiverError),
    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),
    #[error(transparent)]
    Diagram(#[from] bratteli::BratteliError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::Argument(_) => "argument",
            HarnessError::Sov(_) => "engine",
            HarnessError::Rep(_) => "representation",
            HarnessError::Quiver(_) => "quiver",
            HarnessError::Algebra(_) => "algebra",
            HarnessError::Diagram(_) => "diagram",
            HarnessError::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
