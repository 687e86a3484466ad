use crate::gain_graph::Violation;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdgeId(String),
    #[error("gain of edge `{edge}` has length {found}, expected {expected}")]
    GainLength {
        edge: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid gain graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGraph(Vec<Violation>),
    #[error("operation requires a {expected} graph")]
    WrongMode { expected: &'static str },
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("lattice is singular (column rank {rank} < {k})")]
    SingularLattice { rank: usize, k: usize },
    #[error("pinning needs at least {needed} vertices, graph has {found}")]
    TooFewVertices { needed: usize, found: usize },
    #[error("count enumeration is capped at {cap} edges, graph has {edges}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("body-bar graph has no bodies")]
    NoBodies,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
