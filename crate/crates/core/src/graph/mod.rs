//! Finite directed graphs and the graph-theoretic predicates the rest of the
//! crate quantifies over.
//!
//! A [`Graph`] is immutable once built. Vertices and edges are addressed by
//! dense indices ([`VertexId`], [`EdgeId`]) in declaration order; their
//! string identifiers are kept for reports and parsing.

mod classify;
mod closure;
mod cycles;
mod iso;
mod paths;
mod quotient;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

pub use classify::{classify_vertices, VertexKind, VertexProfile};
pub use closure::{
    closure_trace, hereditary_saturated_closure, hsat_subsets_bruteforce, is_downward_directed,
    is_hereditary, is_saturated, DownwardDirected, DownwardWitness, BRUTEFORCE_MAX_VERTICES,
};
pub use cycles::{cycles_pairwise_disjoint, shared_cycle_vertex, simple_cycles, CycleReport};
pub use iso::is_isomorphic;
pub use paths::{paths_ending_at, paths_ending_at_where, paths_up_to};
pub use quotient::quotient_graph;

/// Index of a vertex in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

/// Index of an edge in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("identifier {0} is used for both a vertex and an edge")]
    VertexEdgeClash(String),
    #[error("edge {edge}: unknown endpoint {vertex}")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("vertex set belongs to a different graph")]
    ForeignVertexSet,
    #[error("edges do not compose: r({prev}) != s({next})")]
    NotComposable { prev: String, next: String },
    #[error("path does not start at {0}")]
    WrongStart(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("set is not hereditary: edge {edge} leaves it towards {range}")]
    NotHereditary { edge: String, range: String },
    #[error("set is not saturated: regular vertex {0} emits only into the set")]
    NotSaturated(String),
    #[error("brute-force enumeration refused: {vertices} vertices exceeds the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub source: VertexId,
    pub range: VertexId,
}

/// A finite directed graph `E = (E^0, E^1, s, r)`.
#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    fingerprint: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    /// Builds a graph from identifier lists. Edges are `(id, source, range)`.
    pub fn new<V, E>(name: &str, vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !is_identifier(v) {
                return Err(GraphError::InvalidIdentifier(v.clone()));
            }
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut resolved = Vec::new();
        for (id, src, dst) in edges {
            if !is_identifier(&id) {
                return Err(GraphError::InvalidIdentifier(id));
            }
            if vertex_index.contains_key(&id) {
                return Err(GraphError::VertexEdgeClash(id));
            }
            if edge_index.contains_key(&id) {
                return Err(GraphError::DuplicateEdge(id));
            }
            let lookup = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownEndpoint {
                        edge: id.clone(),
                        vertex: v.clone(),
                    })
            };
            let source = lookup(&src)?;
            let range = lookup(&dst)?;
            edge_index.insert(id.clone(), EdgeId(resolved.len()));
            resolved.push(Edge { id, source, range });
        }
        Ok(Self::from_parts(
            name.to_string(),
            vertices,
            resolved,
            vertex_index,
            edge_index,
        ))
    }

    fn from_parts(
        name: String,
        vertices: Vec<String>,
        edges: Vec<Edge>,
        vertex_index: HashMap<String, VertexId>,
        edge_index: HashMap<String, EdgeId>,
    ) -> Self {
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.range.0].push(EdgeId(i));
        }
        let mut hasher = DefaultHasher::new();
        vertices.hash(&mut hasher);
        edges.hash(&mut hasher);
        Graph {
            name,
            vertices,
            edges,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
            fingerprint: hasher.finish(),
        }
    }

    /// Convenience constructor taking string slices.
    pub fn from_strs(
        name: &str,
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
    ) -> Result<Self, GraphError> {
        Graph::new(
            name,
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string())),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Structural identity of the graph (vertices and edges, not the name).
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].id
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// `s^{-1}(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r^{-1}(v)` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v.0].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_sink(v)).collect()
    }

    /// The tree `T(v)`: every vertex reachable from `v`, including `v`.
    pub fn tree(&self, v: VertexId) -> VertexSet {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v.0] = true;
        while let Some(u) = stack.pop() {
            for &e in self.out_edges(u) {
                let w = self.range(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        self.vertex_set(self.vertex_ids().filter(|w| seen[w.0]))
    }

    /// Reflexive reachability matrix: `reach[u][w]` iff `u >= w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        self.vertex_ids()
            .map(|v| {
                let t = self.tree(v);
                let mut row = vec![false; self.vertex_count()];
                for w in t.iter() {
                    row[w.0] = true;
                }
                row
            })
            .collect()
    }

    /// Builds a vertex set from ids of this graph.
    pub fn vertex_set<I: IntoIterator<Item = VertexId>>(&self, ids: I) -> VertexSet {
        VertexSet {
            graph: self.fingerprint,
            members: ids
                .into_iter()
                .filter(|v| v.0 < self.vertex_count())
                .collect(),
        }
    }

    pub fn vertex_set_by_name<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        let ids = names
            .iter()
            .map(|n| self.require_vertex(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.vertex_set(ids))
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertex_set(self.vertex_ids())
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        if set.graph != self.fingerprint || set.members.iter().any(|v| v.0 >= self.vertex_count()) {
            return Err(GraphError::ForeignVertexSet);
        }
        Ok(())
    }

    /// Graph induced on the vertices outside `removed`, keeping every edge
    /// whose endpoints both survive. Identifiers are preserved.
    pub(crate) fn restrict_to_complement(&self, removed: &VertexSet) -> Graph {
        let vertices: Vec<String> = self
            .vertex_ids()
            .filter(|v| !removed.contains(*v))
            .map(|v| self.vertex_name(v).to_string())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !removed.contains(e.source) && !removed.contains(e.range))
            .map(|e| {
                (
                    e.id.clone(),
                    self.vertex_name(e.source).to_string(),
                    self.vertex_name(e.range).to_string(),
                )
            });
        Graph::new(&self.name, vertices, edges).expect("restriction of a valid graph is valid")
    }
}

/// A subset of a graph's vertices, iterated in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    graph: u64,
    members: BTreeSet<VertexId>,
}

impl VertexSet {
    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.members.insert(v)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            graph: self.graph,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            graph: self.graph,
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        self.iter().map(|v| g.vertex_name(v).to_string()).collect()
    }
}

/// A finite path: a start vertex and a (possibly empty) composable edge
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    /// The length-zero path at `v`.
    pub fn vertex(v: VertexId) -> Self {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn new(g: &Graph, start: VertexId, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        if let Some(&first) = edges.first() {
            if g.source(first) != start {
                return Err(GraphError::WrongStart(g.vertex_name(start).to_string()));
            }
        }
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return Err(GraphError::NotComposable {
                    prev: g.edge_name(w[0]).to_string(),
                    next: g.edge_name(w[1]).to_string(),
                });
            }
        }
        Ok(Path { start, edges })
    }

    /// Path from a non-empty composable edge list.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        let start = match edges.first() {
            Some(&e) => g.source(e),
            None => return Err(GraphError::NotACycle("empty edge list".into())),
        };
        Path::new(g, start, edges)
    }

    pub fn from_names(g: &Graph, names: &[&str]) -> Result<Self, GraphError> {
        let edges = names
            .iter()
            .map(|n| {
                g.edge_by_name(n)
                    .ok_or_else(|| GraphError::UnknownEdge(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(g, edges)
    }

    /// Trusted constructor for callers that already maintain composability.
    pub(crate) fn from_raw(start: VertexId, edges: Vec<EdgeId>) -> Self {
        Path { start, edges }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Concatenation `self · other`; caller guarantees `r(self) = s(other)`.
    pub(crate) fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            start: self.start,
            edges,
        }
    }

    /// Vertices visited, starting with `s(p)` and ending with `r(p)`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = vec![self.start];
        out.extend(self.edges.iter().map(|&e| g.range(e)));
        out
    }

    pub fn edge_names<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.edges.iter().map(|&e| g.edge_name(e)).collect()
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            graph: g,
        }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return f.write_str(self.graph.vertex_name(self.path.start));
        }
        f.write_str(&self.path.edge_names(self.graph).join(" "))
    }
}

/// A closed path of positive length whose edge sources are pairwise
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    path: Path,
}

impl Cycle {
    pub fn new(g: &Graph, path: Path) -> Result<Self, GraphError> {
        if path.is_empty() || path.end(g) != path.start() {
            return Err(GraphError::NotACycle(path.display(g).to_string()));
        }
        let mut seen = BTreeSet::new();
        for &e in path.edges() {
            if !seen.insert(g.source(e)) {
                return Err(GraphError::NotACycle(path.display(g).to_string()));
            }
        }
        Ok(Cycle { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[EdgeId] {
        self.path.edges()
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.path.edges().iter().map(|&e| g.source(e)).collect()
    }

    pub fn contains_vertex(&self, g: &Graph, v: VertexId) -> bool {
        self.path.edges().iter().any(|&e| g.source(e) == v)
    }

    /// Vertex on the cycle with the least identifier.
    pub fn base_vertex(&self, g: &Graph) -> VertexId {
        self.vertices(g)
            .into_iter()
            .min_by(|a, b| g.vertex_name(*a).cmp(g.vertex_name(*b)))
            .expect("cycles are non-empty")
    }

    /// The same cycle read starting (and ending) at `v`.
    pub fn rotated_to(&self, g: &Graph, v: VertexId) -> Option<Path> {
        let edges = self.path.edges();
        let k = edges.iter().position(|&e| g.source(e) == v)?;
        let mut rotated = edges[k..].to_vec();
        rotated.extend_from_slice(&edges[..k]);
        Some(Path::from_raw(v, rotated))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_dangling_edges() {
        assert_eq!(
            Graph::from_strs("g", &["a", "a"], &[]).unwrap_err(),
            GraphError::DuplicateVertex("a".into())
        );
        assert!(matches!(
            Graph::from_strs("g", &["a"], &[("e", "a", "b")]),
            Err(GraphError::UnknownEndpoint { .. })
        ));
        assert!(matches!(
            Graph::from_strs("g", &["a"], &[("a", "a", "a")]),
            Err(GraphError::VertexEdgeClash(_))
        ));
        assert!(matches!(
            Graph::from_strs("g", &["1a"], &[]),
            Err(GraphError::InvalidIdentifier(_))
        ));
    }

    #[test]
    fn path_composition_is_checked() {
        let g =
            Graph::from_strs("g", &["a", "b", "c"], &[("e", "a", "b"), ("f", "b", "c")]).unwrap();
        let p = Path::from_names(&g, &["e", "f"]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.end(&g), g.vertex("c").unwrap());
        assert!(Path::from_names(&g, &["f", "e"]).is_err());
    }

    #[test]
    fn cycle_requires_distinct_sources() {
        let g = Graph::from_strs("g", &["v"], &[("c", "v", "v")]).unwrap();
        let cc = Path::from_names(&g, &["c", "c"]).unwrap();
        assert!(Cycle::new(&g, cc).is_err());
        let c = Path::from_names(&g, &["c"]).unwrap();
        assert!(Cycle::new(&g, c).is_ok());
    }
}
