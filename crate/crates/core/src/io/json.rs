use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("invalid JSON at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn string_at<'a>(v: &'a Value, pointer: &str) -> Result<&'a str, JsonError> {
    v.as_str()
        .ok_or_else(|| schema(pointer, "expected a string"))
}

fn field<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
    at: &str,
) -> Result<&'a Value, JsonError> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{at}/{key}"), "missing required field"))
}

/// Parses `{name, vertices: [string], edges: [{id, source, range}]}`.
pub fn parse_graph_json(input: &str) -> Result<Graph, JsonError> {
    let root: Value = serde_json::from_str(input).map_err(|e| JsonError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "name" | "vertices" | "edges") {
            return Err(schema(format!("/{key}"), "unknown field"));
        }
    }
    let name = string_at(field(obj, "name", "")?, "/name")?;
    if !super::text::check_name(name) {
        return Err(schema("/name", "not a valid identifier"));
    }

    let vertices = field(obj, "vertices", "")?
        .as_array()
        .ok_or_else(|| schema("/vertices", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| string_at(v, &format!("/vertices/{i}")).map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;

    let mut edges = Vec::new();
    let raw_edges = field(obj, "edges", "")?
        .as_array()
        .ok_or_else(|| schema("/edges", "expected an array"))?;
    for (i, e) in raw_edges.iter().enumerate() {
        let at = format!("/edges/{i}");
        let eo = e
            .as_object()
            .ok_or_else(|| schema(&at, "expected an object"))?;
        for key in eo.keys() {
            if !matches!(key.as_str(), "id" | "source" | "range") {
                return Err(schema(format!("{at}/{key}"), "unknown field"));
            }
        }
        let id = string_at(field(eo, "id", &at)?, &format!("{at}/id"))?;
        let src = string_at(field(eo, "source", &at)?, &format!("{at}/source"))?;
        let dst = string_at(field(eo, "range", &at)?, &format!("{at}/range"))?;
        edges.push((id.to_string(), src.to_string(), dst.to_string()));
    }
    Ok(Graph::new(name, vertices, edges)?)
}

#[derive(Serialize)]
struct JsonEdge<'a> {
    id: &'a str,
    source: &'a str,
    range: &'a str,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    name: &'a str,
    vertices: &'a [String],
    edges: Vec<JsonEdge<'a>>,
}

/// Pretty-printed JSON with keys in `name, vertices, edges` order and a
/// trailing newline.
pub fn to_json(g: &Graph) -> String {
    let doc = JsonGraph {
        name: g.name(),
        vertices: g.vertex_names(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge {
                id: &e.id,
                source: g.vertex_name(e.source),
                range: g.vertex_name(e.range),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("graph documents serialize");
    out.push('\n');
    out
}
