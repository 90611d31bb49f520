use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("level {level} out of range for a complex of rank {rank}")]
    LevelOutOfRange { level: usize, rank: usize },

    #[error("levels must satisfy {lower} <= {upper} <= rank")]
    LevelOrder { lower: usize, upper: usize },

    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),

    #[error("pinning depth {depth} exceeds the maximum {max}")]
    PinningTooDeep { depth: usize, max: usize },

    #[error("operation requires a partite complex")]
    NotPartite,

    #[error("graph has {found} vertices, expected {expected}")]
    GraphSizeMismatch { expected: usize, found: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("no graph with these parameters: {0}")]
    InfeasibleGraph(String),

    #[error(
        "no certified graph after {tries} tries: best lambda {best_lambda:.6} > target {target:.6}"
    )]
    CertificationFailed {
        tries: usize,
        best_lambda: f64,
        target: f64,
    },

    #[error("operator is not reversible (max detailed-balance violation {0:.3e})")]
    NotReversible(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("measure has zero or negative mass at index {0}")]
    ZeroMass(usize),

    #[error("function has a negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("Φ fails convexity on the sample grid near {0}")]
    NotConvex(f64),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("{what} exceeds the limit {limit}")]
    GuardExceeded { what: String, limit: usize },

    #[error("bound diverges: {0}")]
    Diverges(String),

    #[error("invalid constant {0}")]
    InvalidConstant(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
