use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undeclared vertex {name}")]
    UndeclaredVertex { name: String },

    #[error("duplicate vertex name {name}")]
    DuplicateVertex { name: String },

    #[error("shift vector has {found} components, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex {name} is isolated (degree 0)")]
    IsolatedVertex { name: String },

    #[error("fundamental graph disconnected")]
    FundamentalDisconnected,

    #[error("periodic graph disconnected (cycle vectors generate a proper sublattice{})",
        match .index { Some(i) => format!(" of index {i}"), None => " of lower rank".to_string() })]
    PeriodicDisconnected { index: Option<u64> },

    #[error("graph is not a loop graph")]
    NotLoopGraph,

    #[error("unknown builtin graph {0}")]
    UnknownBuiltin(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("flat band at ±1 detected (value {0})")]
    FlatBandAtEdge(f64),

    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("torus of {size} vertices exceeds the cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
