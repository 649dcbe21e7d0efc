use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(VertexId),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("{what}: {n} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("graph is not connected")]
    Disconnected,

    #[error("no compatible spanning tree found")]
    NoCompatibleTree,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("generator output failed verification: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { what, n, limit })
    } else {
        Ok(())
    }
}
