use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = FccError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum FccError {
    #[error("vertex count mismatch: expected {expected}, found {found}")]
    VertexMismatch { expected: usize, found: usize },

    #[error("pair ({0}, {1}) is not an edge of the graph")]
    InvalidPair(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty color model")]
    EmptyColorModel,

    #[error("instance with {n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("no partition satisfies the fairness constraints")]
    FairInfeasible,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("empty graph")]
    EmptyGraph,

    #[error("LP solver failure: {0}")]
    Solver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl FccError {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        FccError::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
