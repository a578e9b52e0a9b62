use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("graph needs at least {needed} vertices, has {actual}")]
    TooFewVertices { needed: usize, actual: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is not regular")]
    NotRegular,
    #[error("invalid topology: {0}")]
    InvalidSpec(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("measured {what} = {measured} but the family predicts {expected}")]
    FamilyMismatch {
        what: &'static str,
        measured: usize,
        expected: usize,
    },
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
