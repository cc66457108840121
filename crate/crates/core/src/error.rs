use thiserror::Error;

use crate::graph::EdgeId;

/// Errors raised while loading graphs, validating requests and planning
/// redistributions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight")]
    NegativeWeight { line: usize },

    #[error("line {line}: edge closes a cycle")]
    HasCycle { line: usize },

    #[error("line {line}: edge is not connected to the rest of the graph")]
    Disconnected { line: usize },

    #[error("graph has no edges")]
    Empty,

    #[error("no such edge: {0}")]
    NoSuchEdge(EdgeId),

    #[error("no edge between `{0}` and `{1}`")]
    NoEdgeBetween(String, String),

    #[error("contraction request has no target edges")]
    EmptyRequest,

    #[error("graph is not a path")]
    NotAPath,

    #[error("graph carries supernodes; use the supernode-pair planner")]
    HasSupernodes,

    #[error("target edges do not induce a matching (edges {0} and {1} share an endpoint)")]
    NotAMatching(EdgeId, EdgeId),

    #[error("target edges do not form a contiguous subpath")]
    NotContiguous,

    #[error("target edges are neither a matching nor a contiguous subpath")]
    MixedTargets,

    #[error("request must contract exactly one edge (got {0})")]
    ExpectedSingleEdge(usize),

    #[error("edge {0} does not join two adjacent supernodes of a path")]
    NotAdjacentSupernodes(EdgeId),

    #[error("redistribution gives edge {0} a negative weight")]
    NegativeResultWeight(EdgeId),

    #[error("redistribution alters edge {0}, which is being contracted")]
    DeltaOnContractedEdge(EdgeId),

    #[error("edge {0} is not a tree edge")]
    NotATreeEdge(EdgeId),

    #[error("marking does not cover exactly the neighbour edges of the contracted edge")]
    MarkingMismatch,

    #[error("marking contains fractional entries")]
    FractionalMarking,

    #[error("operation does not apply: edge is already {0}")]
    WrongState(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("oracle instance too large: {size} exceeds cap {cap}")]
    TooLarge { size: u128, cap: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
