use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("matching is not a matching of this graph: {0}")]
    InvalidMatching(String),
    #[error("matching is not near-perfect")]
    NotNearPerfect,
    #[error("root {0} is not exposed by the matching")]
    RootNotExposed(usize),
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("graph has no perfect matching")]
    NotFactorizable,
    #[error("decomposition does not belong to this graph: {0}")]
    InconsistentDecomposition(String),
    #[error("vertices {0} and {1} lie in different factor-components")]
    DifferentComponents(usize, usize),
    #[error("component index {index} out of range ({len} components)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no augmenting edge set found")]
    NotFound,
    #[error("instance too large for exhaustive search: {what} = {size} exceeds bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}
