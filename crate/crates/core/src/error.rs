use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fraction: {0}")]
    InvalidFraction(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(VertexId, VertexId),
    #[error("vertex {0} is not black")]
    NotBlack(VertexId),
    #[error("vertex {vertex} is not contractible: {reason}")]
    NotContractible { vertex: VertexId, reason: String },
    #[error("graph is not parabolic")]
    NotParabolic,
    #[error("kernel generator of a parabolic graph has mixed signs")]
    NonPositiveKernel,
    #[error("singular linear system on white component containing vertex {0}")]
    SingularSystem(VertexId),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("post-verification failed: {0}")]
    PostVerificationFailed(String),
    #[error("not a T-chain: {0}")]
    NotATChain(String),
    #[error("no derivation within {0} steps")]
    NotFound(usize),
    #[error(
        "search bounds too large: {partial_trees} partial trees exceed the budget of {budget}"
    )]
    BoundsTooLarge { partial_trees: u64, budget: u64 },
    #[error("classification gap: unlabeled graph {0}")]
    ClassificationGap(String),
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
