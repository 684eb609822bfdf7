use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window size must be at least 2, got {0}")]
    InvalidWindow(usize),
    #[error("sequence is empty")]
    EmptySequence,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("vertex {0} never occurs in the sequence; ids must be dense")]
    UnusedVertex(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) must have a weight of at least 1")]
    ZeroWeight(VertexId, VertexId),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("expected a {0} graph")]
    WrongVariant(&'static str),
    #[error("self-loop at vertex {0} is not allowed here")]
    SelfLoop(VertexId),
    #[error("search budget of {0} expansions exceeded")]
    BudgetExceeded(u64),
    #[error("size limit of {0} exceeded")]
    SizeLimit(usize),
    #[error("consecutive walk elements {0} and {1} are not adjacent")]
    NotAWalk(usize, usize),
    #[error("weights admit no valid realization length for window {0}")]
    NoValidLength(usize),
    #[error("sequence has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Precondition(String),
    #[error("constructed witness failed verification: {0}")]
    WitnessRejected(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
