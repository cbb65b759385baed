use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator column {column} of the sublattice is not in the ambient lattice")]
    NotContained { column: usize },

    #[error("cochain value at index {index} is not an integer")]
    NonInteger { index: usize },

    #[error("character level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: u64, found: u64 },

    #[error("{what} has size {size}, exceeding the enumeration guard {limit}")]
    GuardExceeded {
        what: &'static str,
        size: String,
        limit: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("formula check failed: {0}")]
    FormulaMismatch(String),

    #[error("cochain is not a divisor (not in the lattice spanned by the edge boundaries)")]
    NotADivisor,
}
