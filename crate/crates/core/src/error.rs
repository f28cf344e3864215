use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex set: {0}")]
    InvalidSet(String),
    #[error("invalid arity {d}: expected 1..={max}")]
    InvalidArity { d: usize, max: usize },
    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<usize>, reason: String },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("invalid hypergraph parameters: {0}")]
    BadParameters(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("vertex set of size {size} is smaller than k = {k}")]
    TooSmall { size: usize, k: usize },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("parts are not a balanced partition: {0}")]
    UnbalancedParts(String),
    #[error("edge is not disjoint from the absorbed set")]
    NotDisjoint,
    #[error("absorption conflict: {0}")]
    Conflict(String),
    #[error("no unused absorbing edge for {0:?}")]
    ExhaustedCapability(Vec<usize>),
    #[error("set is not independent")]
    NotIndependent,
    #[error("independent set of size {size} is below the extremal bound {bound:.3}")]
    TooSmallWitness { size: usize, bound: f64 },
    #[error("k = {k} divides n = {n}")]
    DivisibleOrder { k: usize, n: usize },
    #[error("{step} infeasible: {detail}")]
    Infeasible { step: &'static str, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
