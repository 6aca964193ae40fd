use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// Vertex indices carried by variants are 0-based; `Display` prints them
/// 1-based to match the usual `v1..vn` labelling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid family descriptor: {0}")]
    InvalidFamily(String),

    #[error("unknown builtin graph `{0}`")]
    UnknownBuiltin(String),

    #[error("graph is disconnected: v{} cannot reach v{}", .u + 1, .v + 1)]
    Disconnected { u: usize, v: usize },

    #[error("graph is not bipartite: odd closed walk of length {}", .walk.len().saturating_sub(1))]
    NotBipartite { walk: Vec<usize> },

    #[error("graph is not a cactus: a block on {vertices} vertices has {edges} edges")]
    NotCactus { vertices: usize, edges: usize },

    #[error("graph is acyclic: circumference is undefined")]
    Acyclic,

    #[error("degenerate partition: {0}")]
    Degenerate(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

impl Error {
    /// True for errors caused by a well-formed input that falls outside an
    /// operation's domain (disconnected, non-bipartite, non-cactus, ...).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Disconnected { .. }
                | Error::NotBipartite { .. }
                | Error::NotCactus { .. }
                | Error::Acyclic
                | Error::Degenerate(_)
                | Error::Precondition(_)
        )
    }
}
