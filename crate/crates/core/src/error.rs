use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is not a pendant vertex")]
    NotPendant(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions {rows}x{cols} do not match {len} entries")]
    DimensionMismatch { rows: usize, cols: usize, len: usize },
    #[error("underlying graph is not a single cycle")]
    NotACycle,
    #[error("cycle closed form needs length >= 3, got {0}")]
    CycleTooShort(usize),
    #[error("vertex sequence is not a pendant cycle: {0}")]
    NotPendantCycle(String),
    #[error("cycles are not vertex-disjoint: vertex {0} lies on two cycles")]
    SharedCycleVertex(usize),
    #[error("block {0:?} is neither an edge nor a cycle")]
    NonCycleBlock(Vec<usize>),
    #[error("oriented graph is not lower-optimal (sr = {sr}, r - 2d = {bound})")]
    NotLowerOptimal { sr: usize, bound: i64 },
    #[error("exhaustive enumeration supports at most 6 vertices, got {0}")]
    EnumerationTooLarge(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
