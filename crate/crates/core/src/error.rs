use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("expected two distinct vertices, got {0} twice")]
    EqualVertices(usize),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis violated for {lemma}: {reason}")]
    Hypothesis { lemma: &'static str, reason: String },

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("eigensolver stalled after {iterations} iterations with residual {residual:e}")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("walk series does not converge at x = {x}")]
    SeriesDiverged { x: f64 },

    #[error("bracket not established: f({lo}) = {value} is not below {target}")]
    BracketNotEstablished { lo: f64, value: f64, target: f64 },

    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),

    #[error("invalid edit: {0}")]
    InvalidEdit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
