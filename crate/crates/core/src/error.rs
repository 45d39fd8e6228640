use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A dimension index or ambient dimension disagrees between arguments.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An operation needs nonempty input and got none.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A numeric or structural parameter is out of its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A box family violates its direction vector (wrong extents on some axis).
    #[error("family does not conform to its direction vector: {0}")]
    Conformance(String),

    /// Operation requires the canonical direction vector ([d]∖{j} per part).
    #[error("family is not canonical: {0}")]
    NotCanonical(String),

    /// Operation requires a separated family (distinct collapsed values per part).
    #[error("family is not separated: {0}")]
    NotSeparated(String),

    /// Operation requires a restricted family (all cross pairs among the
    /// first d−1 parts intersecting).
    #[error("family is not restricted: {0}")]
    NotRestricted(String),

    /// Operation requires collapsed coordinates on the integer grid 1..n.
    #[error("family is not on the unit grid: {0}")]
    NotRescaled(String),

    /// A planar-construction input is already planar; nothing to do.
    #[error("direction vector is already planar: {0}")]
    AlreadyPlanar(String),

    /// Operation requires a 2-coherent direction vector and got a
    /// non-coherent one.
    #[error("direction vector is not 2-coherent: {0}")]
    NotCoherent(String),

    /// Direction vector lacks the disjoint-complement shape needed for the
    /// transfer embedding.
    #[error("direction vector does not have the transfer shape: {0}")]
    NotTransferShape(String),

    /// A bounded search ran out of its node budget before reaching a verdict.
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    /// The instance is too large for an exhaustive routine's hard cap.
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    /// A construction promised K_{t,…,t}-freeness and the check found a copy.
    #[error("claimed forbidden pattern is present: {0}")]
    NotFree(String),

    /// Text input (direction literal, rational, JSON field) failed to parse.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
