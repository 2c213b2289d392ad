//! Line-based graph format:
//!
//! ```text
//! graph <name>
//! vertex <id> [<id> ...]
//! edge <id> : <src> -> <dst>
//! # comment
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{DeclSpan, EdgeDecl, GraphDocument, ParseError, ParseErrorKind, VertexDecl};
use crate::graph::{is_identifier, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Colon,
    Arrow,
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<(Tok<'_>, DeclSpan)>, ParseError> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let bytes = code.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let span = DeclSpan {
            line: lineno,
            column: i + 1,
        };
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b':' {
            toks.push((Tok::Colon, span));
            i += 1;
        } else if c == b'-' && bytes.get(i + 1) == Some(&b'>') {
            toks.push((Tok::Arrow, span));
            i += 2;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Ident(&code[start..i]), span));
        } else {
            let ch = code[i..].chars().next().unwrap_or('?');
            return Err(ParseError::syntax(
                span,
                format!("unexpected character `{ch}`"),
            ));
        }
    }
    Ok(toks)
}

/// Parses the text format into a document, keeping source positions.
pub fn parse_document(input: &str) -> Result<GraphDocument, ParseError> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<VertexDecl> = Vec::new();
    let mut edges: Vec<EdgeDecl> = Vec::new();
    let mut seen: HashMap<String, bool> = HashMap::new(); // id -> is_vertex

    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let toks = lex_line(line, lineno)?;
        let Some((first, first_span)) = toks.first().cloned() else {
            continue;
        };
        let keyword = match first {
            Tok::Ident(k) => k,
            _ => {
                return Err(ParseError::syntax(
                    first_span,
                    "expected a declaration keyword",
                ))
            }
        };
        if name.is_none() && keyword != "graph" {
            return Err(ParseError::new(first_span, ParseErrorKind::MissingHeader));
        }
        match keyword {
            "graph" => {
                if name.is_some() {
                    return Err(ParseError::new(first_span, ParseErrorKind::DuplicateHeader));
                }
                match toks.as_slice() {
                    [_, (Tok::Ident(n), _)] => name = Some(n.to_string()),
                    _ => return Err(ParseError::syntax(first_span, "expected `graph <name>`")),
                }
            }
            "vertex" => {
                if toks.len() < 2 {
                    return Err(ParseError::syntax(
                        first_span,
                        "expected at least one vertex id",
                    ));
                }
                for (tok, span) in &toks[1..] {
                    let Tok::Ident(id) = tok else {
                        return Err(ParseError::syntax(*span, "expected a vertex identifier"));
                    };
                    check_fresh(&seen, id, true, *span)?;
                    seen.insert(id.to_string(), true);
                    vertices.push(VertexDecl {
                        id: id.to_string(),
                        span: *span,
                    });
                }
            }
            "edge" => match toks.as_slice() {
                [_, (Tok::Ident(id), id_span), (Tok::Colon, _), (Tok::Ident(src), src_span), (Tok::Arrow, _), (Tok::Ident(dst), dst_span)] =>
                {
                    check_fresh(&seen, id, false, *id_span)?;
                    seen.insert(id.to_string(), false);
                    edges.push(EdgeDecl {
                        id: id.to_string(),
                        source: src.to_string(),
                        range: dst.to_string(),
                        span: *id_span,
                        source_span: *src_span,
                        range_span: *dst_span,
                    });
                }
                _ => {
                    return Err(ParseError::syntax(
                        first_span,
                        "expected `edge <id> : <src> -> <dst>`",
                    ))
                }
            },
            other => {
                return Err(ParseError::syntax(
                    first_span,
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }

    let name = name.ok_or(ParseError::new(
        DeclSpan {
            line: input.lines().count().max(1),
            column: 1,
        },
        ParseErrorKind::MissingHeader,
    ))?;

    for e in &edges {
        for (v, span) in [(&e.source, e.source_span), (&e.range, e.range_span)] {
            if seen.get(v.as_str()) != Some(&true) {
                return Err(ParseError::new(
                    span,
                    ParseErrorKind::UndeclaredVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    },
                ));
            }
        }
    }

    Ok(GraphDocument {
        name,
        vertices,
        edges,
    })
}

fn check_fresh(
    seen: &HashMap<String, bool>,
    id: &str,
    as_vertex: bool,
    span: DeclSpan,
) -> Result<(), ParseError> {
    match seen.get(id) {
        None => Ok(()),
        Some(&was_vertex) => {
            let kind = match (was_vertex, as_vertex) {
                (true, true) => ParseErrorKind::DuplicateVertex(id.to_string()),
                (false, false) => ParseErrorKind::DuplicateEdge(id.to_string()),
                _ => ParseErrorKind::IdentifierClash(id.to_string()),
            };
            Err(ParseError::new(span, kind))
        }
    }
}

pub fn parse_graph_text(input: &str) -> Result<Graph, ParseError> {
    parse_document(input)?.into_graph()
}

/// Canonical text rendering. Parsing it back yields an equal graph, and
/// canonical input round-trips byte for byte.
pub fn to_text(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {}", g.name());
    if !g.is_empty() {
        let _ = writeln!(out, "vertex {}", g.vertex_names().join(" "));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "edge {} : {} -> {}",
            e.id,
            g.vertex_name(e.source),
            g.vertex_name(e.range)
        );
    }
    out
}

pub(crate) fn check_name(name: &str) -> bool {
    is_identifier(name)
}
