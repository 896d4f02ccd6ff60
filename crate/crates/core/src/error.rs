use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} has endpoint ({u}, {v}) outside 0..{n}")]
    EndpointOutOfRange {
        edge: EdgeId,
        u: VertexId,
        v: VertexId,
        n: usize,
    },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error("base graph has isolated vertex {0}")]
    IsolatedVertex(VertexId),
    #[error("leaf multiplicity for vertex {vertex} must be at least 1, got {value}")]
    MultiplicityTooSmall { vertex: VertexId, value: usize },
    #[error("leaf multiplicity given for vertex {0}, which is not a leaf of the base graph")]
    NotALeaf(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoodSubgraphError {
    #[error("certificate refers to vertex {0}, which is out of range")]
    BadVertex(VertexId),
    #[error("certificate refers to edge {0}, which is out of range")]
    BadEdge(EdgeId),
    #[error("certificate rejected: {0}")]
    Rejected(crate::goodsub::Violation),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a forest")]
    NotAForest,
    #[error("graph has an isolated vertex")]
    IsolatedVertex,
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("constructed reduction does not verify: {0}")]
    ReductionFailed(String),
    #[error("no component of a good forest is good on its own")]
    NoGoodComponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: &'static str, reason: String },
    #[error("enumeration bound {0} is out of the supported range")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("graph6 encodes simple graphs only")]
    NotSimple,
    #[error("graph6 supports at most 62 vertices, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalityError {
    #[error("base graph is disconnected")]
    Disconnected,
    #[error("base graph has isolated vertex {0}")]
    IsolatedVertex(VertexId),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}
