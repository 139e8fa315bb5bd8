use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex token `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidToken(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("a network needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("arc ({0},{1}) given twice")]
    DuplicateArc(String, String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("source and sink are both `{0}`")]
    SameEndpoints(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("paths do not share source `{source_token}` and sink `{sink}`")]
    MixedEndpoints { source_token: String, sink: String },
    #[error("sequence is not arc-disjoint: arc ({tail},{head}) used {used} times, capacity {capacity}")]
    NotArcDisjoint {
        tail: String,
        head: String,
        used: u64,
        capacity: u64,
    },
    #[error("not an augmenting path: {0}")]
    NotAugmenting(String),
    #[error("invalid flow: {0}")]
    InvalidFlow(String),
    #[error("singleton shortcut requested for a set of {0} vertices")]
    ShortcutInvalid(usize),
    #[error("enumeration budget of {budget} exceeded after {reached} steps")]
    BudgetExceeded { budget: u64, reached: u64 },
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
