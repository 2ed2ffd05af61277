use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph would have {requested} vertices, capacity is {}", crate::graph::MAX_VERTICES)]
    CapacityExceeded { requested: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set is not a subset of the graph's vertices")]
    NotASubset,

    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("density of the empty graph is undefined")]
    EmptyGraph,

    #[error("graph is not in G({max_degree},{clique_bound}): max degree {actual_degree}, clique number {actual_clique}")]
    ClassViolation {
        max_degree: usize,
        clique_bound: usize,
        actual_degree: usize,
        actual_clique: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("search size {requested} exceeds the cap of {cap} vertices")]
    CapExceeded { requested: usize, cap: usize },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
