//! Graph documents: the line-based text format, the JSON format, and the
//! built-in corpus of example graphs.

mod corpus;
mod json;
mod text;

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use corpus::{
    builtin_corpus, corpus_names, corpus_sweep, parse_corpus_spec, CorpusError, CorpusSpec,
};
pub use json::{parse_graph_json, to_json, JsonError};
pub use text::{parse_document, parse_graph_text, to_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeclSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for DeclSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecl {
    pub id: String,
    pub span: DeclSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub source: String,
    pub range: String,
    pub span: DeclSpan,
    pub source_span: DeclSpan,
    pub range_span: DeclSpan,
}

/// A parsed text document with the position of every declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub name: String,
    pub vertices: Vec<VertexDecl>,
    pub edges: Vec<EdgeDecl>,
}

impl GraphDocument {
    pub fn into_graph(self) -> Result<Graph, ParseError> {
        let first = DeclSpan { line: 1, column: 1 };
        Graph::new(
            &self.name,
            self.vertices.iter().map(|v| v.id.clone()),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.source.clone(), e.range.clone())),
        )
        .map_err(|err| ParseError::new(first, ParseErrorKind::Graph(err)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("missing `graph <name>` header")]
    MissingHeader,
    #[error("second `graph` header")]
    DuplicateHeader,
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("identifier {0} is used for both a vertex and an edge")]
    IdentifierClash(String),
    #[error("edge {edge}: undeclared vertex {vertex}")]
    UndeclaredVertex { edge: String, vertex: String },
    #[error("{0}")]
    Graph(GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub span: DeclSpan,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(span: DeclSpan, kind: ParseErrorKind) -> Self {
        ParseError { span, kind }
    }

    pub(crate) fn syntax(span: DeclSpan, msg: impl Into<String>) -> Self {
        ParseError {
            span,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Text(#[from] ParseError),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// Serializes `g` in the requested format.
pub fn serialize(g: &Graph, format: Format) -> String {
    match format {
        Format::Text => to_text(g),
        Format::Json => to_json(g),
    }
}

/// Parses either format, choosing JSON when the first non-blank character is
/// `{`.
pub fn parse_graph_auto(input: &str) -> Result<Graph, ReadError> {
    if input.trim_start().starts_with('{') {
        Ok(parse_graph_json(input)?)
    } else {
        Ok(parse_graph_text(input)?)
    }
}
