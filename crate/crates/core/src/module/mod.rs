//! Graded modules given by explicit generator actions: the sink modules
//! `N_w` (basis: paths ending at the sink `w`, graded by length), operator
//! checks of the defining relations, a graded-simplicity oracle, and tail
//! equivalence of eventually periodic paths.

mod lasso;
mod oracle;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::grading::sink_index_paths;
use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};
use crate::linalg::{SparseMatrix, Q};

pub use lasso::{tail_equivalent, tail_equivalent_window, Lasso};
pub use oracle::{graded_simplicity_oracle, ORACLE_MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("{0} is not a sink")]
    NotASink(String),
    #[error("the basis of N_{sink} is infinite: the cycle through {via} reaches it")]
    InfiniteBasis { sink: String, via: String },
    #[error("the module is zero-dimensional")]
    Empty,
    #[error("dimension {dim} exceeds the oracle limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("generator {0} does not act homogeneously")]
    NotGraded(String),
    #[error("simplicity undecided in degree {degree}: the commutant is a proper division algebra")]
    Inconclusive { degree: i64 },
    #[error("objects belong to different graphs")]
    GraphMismatch,
    #[error("invalid lasso: {0}")]
    InvalidLasso(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A generator of `L_K(E)`: a vertex, an edge or a ghost edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

impl Generator {
    pub fn degree(&self) -> i64 {
        match self {
            Generator::Vertex(_) => 0,
            Generator::Edge(_) => 1,
            Generator::Ghost(_) => -1,
        }
    }

    pub fn name(&self, g: &Graph) -> String {
        match *self {
            Generator::Vertex(v) => g.vertex_name(v).to_string(),
            Generator::Edge(e) => g.edge_name(e).to_string(),
            Generator::Ghost(e) => format!("{}^*", g.edge_name(e)),
        }
    }

    /// Every generator of `g`: vertices, then edges, then ghosts.
    pub fn all(g: &Graph) -> Vec<Generator> {
        let mut out: Vec<Generator> = g.vertex_ids().map(Generator::Vertex).collect();
        out.extend(g.edge_ids().map(Generator::Edge));
        out.extend(g.edge_ids().map(Generator::Ghost));
        out
    }
}

/// The matrix of one generator; column `j` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAction {
    pub generator: Generator,
    pub matrix: SparseMatrix,
}

/// A finite-dimensional graded module over `L_K(E)` given by generator
/// actions on a homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    graph: u64,
    labels: Vec<String>,
    degrees: Vec<i64>,
    actions: Vec<GeneratorAction>,
}

impl ModuleRep {
    /// Builds a module from explicit actions; every generator of `g` must
    /// appear exactly once, with a `dim × dim` matrix.
    pub fn new(
        g: &Graph,
        labels: Vec<String>,
        degrees: Vec<i64>,
        actions: Vec<GeneratorAction>,
    ) -> Self {
        let dim = degrees.len();
        assert_eq!(labels.len(), dim, "one label per basis vector");
        let mut sorted = actions;
        sorted.sort_by_key(|a| a.generator);
        assert_eq!(
            sorted.iter().map(|a| a.generator).collect::<Vec<_>>(),
            {
                let mut all = Generator::all(g);
                all.sort();
                all
            },
            "one action per generator"
        );
        assert!(sorted
            .iter()
            .all(|a| a.matrix.rows() == dim && a.matrix.cols() == dim));
        ModuleRep {
            graph: g.fingerprint(),
            labels,
            degrees,
            actions: sorted,
        }
    }

    pub fn graph_fingerprint(&self) -> u64 {
        self.graph
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actions(&self) -> &[GeneratorAction] {
        &self.actions
    }

    pub fn action(&self, gen: Generator) -> &SparseMatrix {
        let i = self
            .actions
            .binary_search_by_key(&gen, |a| a.generator)
            .expect("every generator acts");
        &self.actions[i].matrix
    }

    pub fn action_mut(&mut self, gen: Generator) -> &mut SparseMatrix {
        let i = self
            .actions
            .binary_search_by_key(&gen, |a| a.generator)
            .expect("every generator acts");
        &mut self.actions[i].matrix
    }

    /// First generator whose action moves some basis vector to a degree
    /// other than its own plus the generator's degree.
    pub fn grading_violation(&self) -> Option<Generator> {
        self.actions.iter().find_map(|a| {
            a.matrix
                .entries()
                .any(|(&(r, c), _)| self.degrees[r] != self.degrees[c] + a.generator.degree())
                .then_some(a.generator)
        })
    }
}

/// External direct sum, basis of `a` first.
pub fn direct_sum(a: &ModuleRep, b: &ModuleRep) -> Result<ModuleRep, ModuleError> {
    if a.graph != b.graph {
        return Err(ModuleError::GraphMismatch);
    }
    let (da, db) = (a.dim(), b.dim());
    let actions = a
        .actions
        .iter()
        .zip(&b.actions)
        .map(|(x, y)| {
            debug_assert_eq!(x.generator, y.generator);
            let mut m = SparseMatrix::zeros(da + db, da + db);
            for (&(r, c), v) in x.matrix.entries() {
                m.set(r, c, v.clone());
            }
            for (&(r, c), v) in y.matrix.entries() {
                m.set(da + r, da + c, v.clone());
            }
            GeneratorAction {
                generator: x.generator,
                matrix: m,
            }
        })
        .collect();
    let labels = a
        .labels
        .iter()
        .map(|l| format!("{l}⊕0"))
        .chain(b.labels.iter().map(|l| format!("0⊕{l}")))
        .collect();
    let degrees = a.degrees.iter().chain(&b.degrees).copied().collect();
    Ok(ModuleRep {
        graph: a.graph,
        labels,
        degrees,
        actions,
    })
}

/// The module `N_w` of a sink `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkModule {
    pub sink: VertexId,
    pub basis: Vec<Path>,
    pub rep: ModuleRep,
}

/// Builds `N_w`: basis all paths ending at `w` in canonical order, with
/// `deg(p) = |p|`, and actions `u·q = δ_{u,s(q)} q`,
/// `e·q = eq` when `r(e) = s(q)`, `e*·q = q₁` when `q = e q₁`, zero otherwise.
pub fn build_sink_module(g: &Graph, w: VertexId) -> Result<SinkModule, ModuleError> {
    if !g.is_sink(w) {
        return Err(ModuleError::NotASink(g.vertex_name(w).to_string()));
    }
    let reach = g.reachability();
    if let Some(x) = g
        .vertex_ids()
        .find(|&x| reach[x.0][w.0] && g.out_edges(x).iter().any(|&e| reach[g.range(e).0][x.0]))
    {
        return Err(ModuleError::InfiniteBasis {
            sink: g.vertex_name(w).to_string(),
            via: g.vertex_name(x).to_string(),
        });
    }
    let basis = sink_index_paths(g, w);
    let dim = basis.len();
    let index: HashMap<(VertexId, Vec<EdgeId>), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.start(), p.edges().to_vec()), i))
        .collect();

    let mut actions = Vec::new();
    for gen in Generator::all(g) {
        let mut m = SparseMatrix::zeros(dim, dim);
        for (j, q) in basis.iter().enumerate() {
            let image = match gen {
                Generator::Vertex(u) => (q.start() == u).then_some(j),
                Generator::Edge(e) => (g.range(e) == q.start()).then(|| {
                    let mut edges = vec![e];
                    edges.extend_from_slice(q.edges());
                    index[&(g.source(e), edges)]
                }),
                Generator::Ghost(e) => (q.edges().first() == Some(&e))
                    .then(|| index[&(g.range(e), q.edges()[1..].to_vec())]),
            };
            if let Some(i) = image {
                m.set(i, j, Q::one());
            }
        }
        actions.push(GeneratorAction {
            generator: gen,
            matrix: m,
        });
    }
    let labels = basis.iter().map(|p| p.display(g).to_string()).collect();
    let degrees = basis.iter().map(|p| p.len() as i64).collect();
    Ok(SinkModule {
        sink: w,
        basis,
        rep: ModuleRep::new(g, labels, degrees, actions),
    })
}

/// Which defining relation an operator identity instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `v w = δ_{v,w} v`.
    Vertices,
    /// `s(e) e = e = e r(e)` and `r(e) e* = e* = e* s(e)`.
    Endpoints,
    /// `e* f = δ_{e,f} r(e)`.
    Ck1,
    /// `Σ_{s(e) = v} e e* = v` for regular `v`.
    Ck2,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Vertices => "vertex orthogonality",
            Relation::Endpoints => "edge endpoints",
            Relation::Ck1 => "CK1",
            Relation::Ck2 => "CK2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: Relation,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub identities_checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every defining relation as an identity of matrices.
pub fn check_module_relations(g: &Graph, m: &ModuleRep) -> Result<RelationReport, ModuleError> {
    if m.graph != g.fingerprint() {
        return Err(ModuleError::GraphMismatch);
    }
    let dim = m.dim();
    let zero = SparseMatrix::zeros(dim, dim);
    let mut report = RelationReport {
        identities_checked: 0,
        violations: Vec::new(),
    };
    let mut expect = |relation: Relation, lhs: SparseMatrix, rhs: &SparseMatrix, what: String| {
        report.identities_checked += 1;
        if &lhs != rhs {
            report.violations.push(RelationViolation {
                relation,
                detail: what,
            });
        }
    };
    let a = |gen: Generator| m.action(gen);
    let name = |gen: Generator| gen.name(g);

    for v in g.vertex_ids() {
        for w in g.vertex_ids() {
            let (gv, gw) = (Generator::Vertex(v), Generator::Vertex(w));
            let rhs = if v == w { a(gv) } else { &zero };
            let expected = if v == w { name(gv) } else { "0".into() };
            expect(
                Relation::Vertices,
                a(gv).mul(a(gw)),
                rhs,
                format!("{} {} != {}", name(gv), name(gw), expected),
            );
        }
    }
    for e in g.edge_ids() {
        let (ge, gs) = (Generator::Edge(e), Generator::Ghost(e));
        let src = Generator::Vertex(g.source(e));
        let rng = Generator::Vertex(g.range(e));
        for (lhs, rhs, what) in [
            (
                a(src).mul(a(ge)),
                ge,
                format!("{} {} != {}", name(src), name(ge), name(ge)),
            ),
            (
                a(ge).mul(a(rng)),
                ge,
                format!("{} {} != {}", name(ge), name(rng), name(ge)),
            ),
            (
                a(rng).mul(a(gs)),
                gs,
                format!("{} {} != {}", name(rng), name(gs), name(gs)),
            ),
            (
                a(gs).mul(a(src)),
                gs,
                format!("{} {} != {}", name(gs), name(src), name(gs)),
            ),
        ] {
            expect(Relation::Endpoints, lhs, a(rhs), what);
        }
        for f in g.edge_ids() {
            let gf = Generator::Edge(f);
            let (rhs, expected) = if e == f {
                (a(rng), name(rng))
            } else {
                (&zero, "0".into())
            };
            expect(
                Relation::Ck1,
                a(gs).mul(a(gf)),
                rhs,
                format!("{} {} != {}", name(gs), name(gf), expected),
            );
        }
    }
    for v in g.vertex_ids().filter(|&v| !g.is_sink(v)) {
        let mut sum = SparseMatrix::zeros(dim, dim);
        for &e in g.out_edges(v) {
            sum = sum.add(&a(Generator::Edge(e)).mul(a(Generator::Ghost(e))));
        }
        let gv = Generator::Vertex(v);
        expect(
            Relation::Ck2,
            sum,
            a(gv),
            format!("sum of e e^* over s(e) = {0} != {0}", name(gv)),
        );
    }
    Ok(report)
}

/// Report for one sink module. `relations` serializes as `"pass"` or as
/// the first violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub sink: String,
    pub dim: usize,
    pub degrees: Vec<i64>,
    #[serde(serialize_with = "relations_summary")]
    pub relations: RelationReport,
    /// `None` when the oracle's size guard refused the module.
    pub graded_simple: Option<bool>,
}

fn relations_summary<S: serde::Serializer>(r: &RelationReport, s: S) -> Result<S::Ok, S::Error> {
    match r.violations.first() {
        None => s.serialize_str("pass"),
        Some(v) => v.serialize(s),
    }
}

/// Builds `N_w`, checks the relations and runs the simplicity oracle.
pub fn sink_module_report(g: &Graph, w: VertexId) -> Result<ModuleReport, ModuleError> {
    let module = build_sink_module(g, w)?;
    let relations = check_module_relations(g, &module.rep)?;
    let graded_simple = match graded_simplicity_oracle(&module.rep) {
        Ok(b) => Some(b),
        Err(ModuleError::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ModuleReport {
        sink: g.vertex_name(w).to_string(),
        dim: module.rep.dim(),
        degrees: module.rep.degrees().to_vec(),
        relations,
        graded_simple,
    })
}

pub(crate) fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_corpus;
    use crate::linalg::q;

    #[test]
    fn line2_module() {
        let g = builtin_corpus("line", Some(2)).unwrap();
        let w = g.vertex("v2").unwrap();
        let n = build_sink_module(&g, w).unwrap();
        let labels: Vec<String> = n.basis.iter().map(|p| p.display(&g).to_string()).collect();
        assert_eq!(labels, vec!["v2", "v1_v2_0"]);
        let e = g.edge_by_name("v1_v2_0").unwrap();
        assert_eq!(n.rep.action(Generator::Edge(e)).get(1, 0), q(1));
        assert_eq!(n.rep.action(Generator::Ghost(e)).get(0, 1), q(1));
        assert!(check_module_relations(&g, &n.rep).unwrap().passed());
        assert_eq!(n.rep.grading_violation(), None);
    }

    #[test]
    fn single_vertex_module() {
        let g = Graph::from_strs("one", &["v"], &[]).unwrap();
        let n = build_sink_module(&g, VertexId(0)).unwrap();
        assert_eq!(n.rep.dim(), 1);
        assert_eq!(
            n.rep.action(Generator::Vertex(VertexId(0))),
            &SparseMatrix::identity(1)
        );
        assert!(check_module_relations(&g, &n.rep).unwrap().passed());
    }

    #[test]
    fn join_has_three_paths() {
        let g = Graph::from_strs(
            "join",
            &["v1", "v2", "v3"],
            &[("a", "v1", "v3"), ("b", "v2", "v3")],
        )
        .unwrap();
        assert_eq!(build_sink_module(&g, VertexId(2)).unwrap().rep.dim(), 3);
    }

    #[test]
    fn zeroed_entry_breaks_ck2() {
        let g = builtin_corpus("line", Some(2)).unwrap();
        let mut n = build_sink_module(&g, VertexId(1)).unwrap();
        let e = g.edge_by_name("v1_v2_0").unwrap();
        n.rep.action_mut(Generator::Edge(e)).set(1, 0, q(0));
        let r = check_module_relations(&g, &n.rep).unwrap();
        assert!(r.violations.iter().any(|v| v.relation == Relation::Ck2));
    }

    #[test]
    fn report_json() {
        let g = builtin_corpus("line", Some(2)).unwrap();
        let r = sink_module_report(&g, VertexId(1)).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"sink": "v2", "dim": 2, "degrees": [0, 1], "relations": "pass", "graded_simple": true})
        );
    }

    #[test]
    fn preconditions() {
        let g1 = builtin_corpus("G1", None).unwrap();
        assert!(matches!(
            build_sink_module(&g1, VertexId(0)),
            Err(ModuleError::NotASink(_))
        ));
        let g = Graph::from_strs("lw", &["v", "w"], &[("c", "v", "v"), ("e", "v", "w")]).unwrap();
        assert!(matches!(
            build_sink_module(&g, VertexId(1)),
            Err(ModuleError::InfiniteBasis { .. })
        ));
    }
}
