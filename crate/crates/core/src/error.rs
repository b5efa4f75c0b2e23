use thiserror::Error;

/// Errors produced by graph construction, the coreness methods and the
/// evaluation helpers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex {0} is isolated; extract the largest connected component first")]
    IsolatedVertex(usize),

    #[error("matrix is not symmetric: |M[{row},{col}] - M[{col},{row}]| = {deviation:e}")]
    Asymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("correlation undefined: input has zero variance")]
    ZeroVariance,

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
