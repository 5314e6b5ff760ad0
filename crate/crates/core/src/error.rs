use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}: only simple graphs are supported")]
    Loop(usize),
    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("vertex {b0} is not a neighbour of the measured vertex {vertex}")]
    NotANeighbor { vertex: usize, b0: usize },
    #[error("graph is not 2-colorable (odd cycle {0:?})")]
    NotTwoColorable(Vec<usize>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("outcome has probability zero")]
    ZeroProbability,
    #[error("invalid measurement step {index}: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
