use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The surface does not support the requested operation (for ideal
    /// triangulations this means n = 0 or non-negative Euler characteristic).
    #[error("unsupported surface (g={genus}, n={punctures}): {reason}")]
    UnsupportedSurface {
        genus: u32,
        punctures: u32,
        reason: String,
    },

    /// Both sides of the edge lie in a single triangle, so no quadrilateral
    /// exists to exchange diagonals in.
    #[error("edge {edge} is self-folded and cannot be flipped")]
    SelfFoldedEdge { edge: usize },

    /// A configured search budget was exhausted.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// An arc anchor refers to a triangulation or edge the registry does not
    /// hold.
    #[error("registry miss: {0}")]
    RegistryMiss(String),

    /// A coordinate vector violates the per-triangle matching conditions.
    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),

    /// A vertex id is not present in the ball.
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    /// The operation requires a ball whose every vertex has a complete link.
    #[error("ball is incomplete: {0}")]
    IncompleteBall(String),

    /// Path rewriting found no admissible replacement curve. On surfaces with
    /// 2g+n >= 5 this indicates a bug, not a data condition.
    #[error("no candidate replacement curve for pair ({left}, {right})")]
    NoCandidate { left: usize, right: usize },

    /// A path violates the simplicial path invariants.
    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// The two vertices lie in different components of the ball.
    #[error("vertices {0} and {1} are unreachable from each other in the ball")]
    Unreachable(usize, usize),

    /// Malformed input data (serialization, CLI arguments, foreign files).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
