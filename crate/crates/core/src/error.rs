use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: Vertex },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge} out of range (m = {m})")]
    EdgeOutOfRange { edge: EdgeId, m: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("odd-set enumeration refused: {n} vertices exceeds budget {budget}")]
    VertexBudget { n: usize, budget: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("coloring has {got} entries, graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {color} outside palette 1..={palette}")]
    ColorOutOfPalette { color: usize, palette: usize },
    #[error("palette of {0} colors exceeds the supported maximum of 64")]
    PaletteTooLarge(usize),
    #[error("Kempe walk needs two distinct colors, got {0} twice")]
    SameColors(usize),
    #[error("Kempe walk is stale: edge {edge} no longer carries the recorded color")]
    StaleWalk { edge: EdgeId },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("bad generator parameters: {0}")]
    BadParameters(String),
    #[error("search budget exhausted")]
    BudgetExhausted,
}

pub type Result<T> = std::result::Result<T, Error>;
