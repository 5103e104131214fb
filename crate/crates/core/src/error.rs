use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { index: usize, vertex_count: usize },

    #[error("edge index {index} out of range for a graph with {edge_count} edges")]
    EdgeOutOfRange { index: usize, edge_count: usize },

    #[error("subdivision factor must be at least 1")]
    ZeroSubdivision,

    #[error("torsion order r must be at least 1")]
    ZeroTorsionOrder,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("chain is not a cycle: its boundary is nonzero")]
    NotACycle,

    #[error("chain is not a single simple cycle")]
    NotASimpleCycle,

    #[error("graph must be connected")]
    Disconnected,

    #[error("divisor degrees differ: {0} vs {1}")]
    DegreeMismatch(i64, i64),

    #[error("integer overflow converting an exact value to a machine integer")]
    Overflow,

    #[error("stabilizer order of edge {edge} is zero; orders must be at least 1")]
    ZeroStabilizer { edge: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
