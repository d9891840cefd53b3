use thiserror::Error;

use crate::graph::{SwapMove, Vertex};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid swap {0}: {1}")]
    InvalidSwap(SwapMove, &'static str),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("invalid edge {{{0}, {1}}}: {2}")]
    InvalidEdge(Vertex, Vertex, &'static str),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("minimum degree is {0}, at least 2 required")]
    MinDegreeTooLow(usize),

    #[error("runs do not share (n, c): expected {expected:?}, found {found:?}")]
    MixedConfig {
        expected: (usize, Option<usize>),
        found: (usize, Option<usize>),
    },

    #[error("bad spec: {0}")]
    BadSpec(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
