use thiserror::Error;

/// Errors raised by graph construction, parsing and the census machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices, capacity is 64")]
    Capacity(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0} is not an edge")]
    NotAnEdge(String),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("checkpoint corrupted: {0}")]
    Checkpoint(String),
    #[error("run interrupted after {0} shards")]
    Interrupted(usize),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, GraphError>;
