use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} limit exceeded: {got} > {cap}{hint}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("vertex set is empty")]
    EmptySet,

    #[error("induced subgraph is not connected")]
    Disconnected,

    #[error("size mismatch: graph has {graph} vertices, tree has {tree}")]
    SizeMismatch { graph: usize, tree: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("vertex partition violated: {0}")]
    Partition(String),

    #[error("missing table entry for a vertex set of size {0}")]
    MissingEntry(usize),

    #[error("state store inconsistency: {0}")]
    Store(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
