use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-square matrix: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("chain complex is not acyclic at degree {0}")]
    NotAcyclic(usize),

    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("presentation has deficiency != 1 after dropping a relator")]
    BadDeficiency,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
