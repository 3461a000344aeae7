use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("zero weight on edge {{{u}, {v}}}")]
    ZeroWeight { u: usize, v: usize },

    #[error("vertex index {index} out of range for graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("operation is undefined for graphs with loops")]
    HasLoops,

    #[error("graph too large: {n} vertices exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("graph must be simple with all weights equal to 1")]
    NotUnweightedSimple,

    #[error("adjacency matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("graph does not have a unique Sachs subgraph")]
    NotUniqueSachs,

    #[error("edge set is not a perfect matching of the graph")]
    NotPerfectMatching,

    #[error("graph is not the stellation of a tree: {0}")]
    NotStellatedTree(String),

    #[error("graph is not a corona graph under the pendant labeling: {0}")]
    NotCorona(String),

    #[error("inverse has entries outside {{0, 1, -1}}")]
    NotSigned,

    #[error("spectrum does not split about the origin")]
    NoSplit,

    #[error("graph is not in the declared family: {0}")]
    WrongFamily(String),

    #[error("independent computations disagree: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
