//! The graded Naimark test, the socular chain and the count of graded-simple
//! classes (one class per matrix block, shifts identified).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grading::{
    acyclic_decomposition, comet_decomposition, graded_socle, MatrixBlock, DEFAULT_SAMPLE_BOUND,
};
use crate::graph::{
    classify_vertices, closure_trace, hereditary_saturated_closure, hsat_subsets_bruteforce,
    is_downward_directed, quotient_graph, shared_cycle_vertex, simple_cycles, DownwardWitness,
    Graph, VertexId, VertexSet, BRUTEFORCE_MAX_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the graph has no vertices")]
    EmptyGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    /// A counterexample when the condition fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ConditionCheck {
    fn pass() -> Self {
        ConditionCheck {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        ConditionCheck {
            holds: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    /// Always true: finite graphs are row-finite.
    pub row_finite: bool,
    pub downward_directed: ConditionCheck,
    /// The only hereditary saturated subsets are the empty set and `E^0`.
    pub trivial_hereditary_saturated: ConditionCheck,
    /// Whether the subset enumeration agreed; absent above the size limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce_agrees: Option<bool>,
    pub cycles_disjoint: ConditionCheck,
}

impl NecessaryConditions {
    pub fn all_hold(&self) -> bool {
        self.row_finite
            && self.downward_directed.holds
            && self.trivial_hereditary_saturated.holds
            && self.cycles_disjoint.holds
    }
}

fn set_display(g: &Graph, s: &VertexSet) -> String {
    format!("{{{}}}", s.names(g).join(","))
}

fn downward_check(g: &Graph) -> ConditionCheck {
    match is_downward_directed(g).witness {
        DownwardWitness::FailingPair(u, v) => ConditionCheck::fail(format!(
            "{} and {} have no common descendant",
            g.vertex_name(u),
            g.vertex_name(v)
        )),
        DownwardWitness::CommonDescendants(_) => ConditionCheck::pass(),
    }
}

fn single_closure(g: &Graph, v: VertexId) -> VertexSet {
    hereditary_saturated_closure(g, &g.vertex_set([v])).expect("vertex belongs to the graph")
}

/// Row-finiteness, downward directedness, triviality of the hereditary
/// saturated subsets and pairwise disjointness of cycles.
pub fn necessary_conditions(g: &Graph) -> NecessaryConditions {
    let all = g.all_vertices();
    let trivial = match g
        .vertex_ids()
        .map(|v| (v, single_closure(g, v)))
        .find(|(_, c)| *c != all)
    {
        Some((v, c)) => ConditionCheck::fail(format!(
            "cl({{{}}}) = {} is proper",
            g.vertex_name(v),
            set_display(g, &c)
        )),
        None => ConditionCheck::pass(),
    };
    let bruteforce_agrees = (g.vertex_count() <= BRUTEFORCE_MAX_VERTICES).then(|| {
        let subsets = hsat_subsets_bruteforce(g).expect("size checked");
        let only_trivial = subsets.iter().all(|s| s.is_empty() || *s == all);
        only_trivial == trivial.holds
    });
    let cycles_disjoint = match shared_cycle_vertex(g) {
        Some((v, a, b)) => ConditionCheck::fail(format!(
            "cycles {} and {} share {}",
            a.path().display(g),
            b.path().display(g),
            g.vertex_name(v)
        )),
        None => ConditionCheck::pass(),
    };
    NecessaryConditions {
        row_finite: true,
        downward_directed: downward_check(g),
        trivial_hereditary_saturated: trivial,
        bruteforce_agrees,
        cycles_disjoint,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    LinePoint,
    NoExitCycle,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::LinePoint => "line point",
            WitnessKind::NoExitCycle => "cycle without exits",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaimarkWitness {
    pub vertex: String,
    pub kind: WitnessKind,
    /// Stages of the closure induction from `{vertex}` to `E^0`.
    pub closure_trace: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCondition {
    pub condition: String,
    pub counterexample: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaimarkVerdict {
    pub holds: bool,
    pub witness: Option<NaimarkWitness>,
    pub failed: Option<FailedCondition>,
    pub form: Option<MatrixBlock>,
}

impl fmt::Display for NaimarkVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.witness, &self.form, &self.failed) {
            (Some(w), Some(form), _) => {
                write!(f, "HOLDS; witness {} ({}); form {}", w.vertex, w.kind, form)
            }
            (_, _, Some(failed)) => {
                write!(f, "FAILS; {}: {}", failed.condition, failed.counterexample)
            }
            _ => f.write_str("FAILS"),
        }
    }
}

/// Whether `L_K(E)` has exactly one graded-simple module up to isomorphism
/// and shift: `E` is downward directed and `E^0` is the hereditary saturated
/// closure of a line point or of a vertex on a cycle without exits. The
/// least such vertex name is the witness.
pub fn graded_naimark(g: &Graph) -> Result<NaimarkVerdict, ClassifyError> {
    graded_naimark_with_bound(g, DEFAULT_SAMPLE_BOUND)
}

pub fn graded_naimark_with_bound(g: &Graph, bound: usize) -> Result<NaimarkVerdict, ClassifyError> {
    if g.is_empty() {
        return Err(ClassifyError::EmptyGraph);
    }
    let fail = |condition: &str, counterexample: String| NaimarkVerdict {
        holds: false,
        witness: None,
        failed: Some(FailedCondition {
            condition: condition.to_string(),
            counterexample,
        }),
        form: None,
    };
    if let Some(w) = downward_check(g).witness {
        return Ok(fail("downward directed", w));
    }

    let profiles = classify_vertices(g);
    let mut candidates: Vec<(VertexId, WitnessKind)> = profiles
        .iter()
        .filter_map(|(&v, p)| {
            if p.is_line_point {
                Some((v, WitnessKind::LinePoint))
            } else if p.on_no_exit_cycle {
                Some((v, WitnessKind::NoExitCycle))
            } else {
                None
            }
        })
        .collect();
    candidates.sort_by(|a, b| g.vertex_name(a.0).cmp(g.vertex_name(b.0)));
    if candidates.is_empty() {
        return Ok(fail(
            "single-vertex closure",
            "no line point and no vertex on a cycle without exits".into(),
        ));
    }

    let all = g.all_vertices();
    let Some(&(v, kind)) = candidates
        .iter()
        .find(|(v, _)| single_closure(g, *v) == all)
    else {
        let closures: Vec<String> = candidates
            .iter()
            .map(|&(v, _)| {
                format!(
                    "cl({{{}}}) = {}",
                    g.vertex_name(v),
                    set_display(g, &single_closure(g, v))
                )
            })
            .collect();
        return Ok(fail(
            "single-vertex closure",
            format!("{} != E^0", closures.join("; ")),
        ));
    };

    let form = match kind {
        WitnessKind::LinePoint => acyclic_decomposition(g, v, bound),
        WitnessKind::NoExitCycle => {
            let report = simple_cycles(g)
                .into_iter()
                .find(|r| !r.has_exits() && r.cycle.contains_vertex(g, v))
                .expect("the witness lies on a cycle without exits");
            comet_decomposition(g, &report.cycle, bound)
        }
    }
    .expect("witness satisfies the decomposition preconditions");
    let trace = closure_trace(g, &g.vertex_set([v]))
        .expect("vertex belongs to the graph")
        .iter()
        .map(|s| s.names(g))
        .collect();
    Ok(NaimarkVerdict {
        holds: true,
        witness: Some(NaimarkWitness {
            vertex: g.vertex_name(v).to_string(),
            kind,
            closure_trace: trace,
        }),
        failed: None,
        form: Some(form),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLayer {
    /// Vertices added by this layer, `H_{α+1} ∖ H_α`.
    pub vertices: Vec<String>,
    /// Line points and no-exit-cycle vertices of the layer's graph.
    pub generators: Vec<String>,
    /// Graded socle of the layer's graph.
    pub blocks: Vec<MatrixBlock>,
    /// The graph this layer was computed on.
    #[serde(skip)]
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassCount {
    Count(usize),
    Uncountable { reason: String },
}

impl fmt::Display for ClassCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassCount::Count(n) => write!(f, "classes: {n}"),
            ClassCount::Uncountable { reason } => write!(f, "classes: uncountable ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocularChainReport {
    pub layers: Vec<ChainLayer>,
    /// Length of the chain.
    pub tau: usize,
    pub verdict: ClassCount,
}

/// Peels off the graded socle layer by layer: close the socle generators of
/// the current graph, record its socle blocks, pass to the quotient. Stops
/// with an uncountable verdict at the first nonempty graph without
/// generators.
pub fn socular_chain(g: &Graph) -> SocularChainReport {
    socular_chain_with_bound(g, DEFAULT_SAMPLE_BOUND)
}

pub fn socular_chain_with_bound(g: &Graph, bound: usize) -> SocularChainReport {
    let mut layers = Vec::new();
    let mut current = g.clone();
    let verdict = loop {
        if current.is_empty() {
            break ClassCount::Count(layers.iter().map(|l: &ChainLayer| l.blocks.len()).sum());
        }
        let profiles = classify_vertices(&current);
        let generators: Vec<VertexId> = profiles
            .iter()
            .filter(|(_, p)| p.is_line_point || p.on_no_exit_cycle)
            .map(|(&v, _)| v)
            .collect();
        if generators.is_empty() {
            break ClassCount::Uncountable {
                reason: format!(
                    "layer {}: {} has no line points and no cycles without exits",
                    layers.len() + 1,
                    set_display(&current, &current.all_vertices())
                ),
            };
        }
        let h =
            hereditary_saturated_closure(&current, &current.vertex_set(generators.iter().copied()))
                .expect("generators belong to the graph");
        let next = quotient_graph(&current, &h).expect("closures are hereditary and saturated");
        layers.push(ChainLayer {
            vertices: h.names(&current),
            generators: generators
                .iter()
                .map(|&v| current.vertex_name(v).to_string())
                .collect(),
            blocks: graded_socle(&current, bound),
            graph: current,
        });
        current = next;
    };
    SocularChainReport {
        tau: layers.len(),
        layers,
        verdict,
    }
}

/// Number of graded-simple classes, one per socle block over the chain.
pub fn count_graded_simple_classes(g: &Graph) -> ClassCount {
    socular_chain(g).verdict
}
