use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for graph with {nodes} nodes")]
    NodeOutOfRange { id: u64, nodes: usize },

    /// The residual distribution cannot supply enough distinct nodes: fewer
    /// than `needed` nodes carry positive weight in the current snapshot.
    #[error("residual distribution exhausted: fewer than {needed} nodes have positive weight")]
    Exhausted { needed: usize },

    /// A plain decrement was applied to a node whose residual degree is
    /// already zero. Generators guard against this; hitting it from library
    /// code indicates a caller bug.
    #[error("residual degree underflow at node {0}")]
    ResidualUnderflow(u32),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// SIEGE needs an edge-bridge count to budget its second phase.
    #[error("siege requires an edge-bridge count (eb_count) and none was provided")]
    MissingEbCount,

    #[error("schema mismatch: expected version {expected}, found {found}")]
    SchemaMismatch { expected: u32, found: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
