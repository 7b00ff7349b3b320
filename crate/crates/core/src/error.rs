use thiserror::Error;

use crate::graph::VertexId;
use crate::oracle::ExceptionId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),
    #[error("edge weight {0} is not a finite positive number")]
    InvalidWeight(f64),
    #[error("no edge {from} -> {to}")]
    MissingEdge { from: VertexId, to: VertexId },
    #[error("a path needs at least one vertex")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExceptionError {
    #[error("an exception needs at least two vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} appears twice in an exception")]
    NotSimple(VertexId),
    #[error("exception step {from} -> {to} is not an edge of the graph")]
    NotAnEdge { from: VertexId, to: VertexId },
    #[error("exception vertex {0} is not an original vertex")]
    NotOriginal(VertexId),
    #[error("duplicate exception {0}")]
    Duplicate(ExceptionId),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouteError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} is not an original vertex of the input graph")]
    NotOriginal(VertexId),
    #[error("oracle reply does not match the tried path: {0}")]
    OracleContract(String),
    #[error("exception {0} was reported twice")]
    RepeatedException(ExceptionId),
}

/// Input file problems, reported with the 1-based line they occur on.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}
