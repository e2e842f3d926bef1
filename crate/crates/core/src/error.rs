use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid rotation at vertex {vertex}: {message}")]
    InvalidRotation { vertex: usize, message: String },

    #[error("graph is not connected")]
    Disconnected,

    #[error("number of robots must be positive")]
    ZeroRobots,

    #[error("graph is not sufficiently subdivided for {n} robots")]
    InsufficientSubdivision { n: usize },

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("no degree-one vertex available for the root")]
    NoRoot,

    #[error("direction {direction} out of range at vertex {vertex}")]
    DirectionOutOfRange { vertex: usize, direction: usize },

    #[error("cycles are not vertex-disjoint: {0}")]
    CyclesNotDisjoint(String),

    #[error("cycle {index} cannot be placed in the tree: {message}")]
    CycleConstruction { index: usize, message: String },

    #[error("{0}")]
    NotAMember(String),

    #[error("cell is not redundant")]
    NotRedundant,

    #[error("spanning tree is not essential: deleted edge {0} has an endpoint of degree other than two")]
    NotEssentialTree(usize),

    #[error("gradient field inconsistency: {0}")]
    GradientInconsistency(String),

    #[error("flow did not stabilize within {cap} iterations")]
    FlowDidNotStabilize { cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("boundaries are not contained in the span of the cycles")]
    BoundaryOutsideCycles,

    #[error("cochain is not a sum of products of degree-one classes: {0}")]
    NotGenerated(String),

    #[error("non-unique one-cell factorization: {0}")]
    FactorizationNotUnique(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certificate step `{step}` failed: {message}")]
    ProofStep { step: String, message: String },
}
