//! Checks the isomorphisms `p_i p_j* ↦ e_ij` and `p_i c^k p_j* ↦ e_ij(x^{km})`
//! on every generator up to a length bound.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::Serialize;

use crate::graph::{simple_cycles, Graph, Path};
use crate::linalg::{rank_of, Q};
use crate::term::{Leavitt, LpaElement, Monomial, TermError};

use super::{
    comet_index_paths, entry_degree, sink_index_paths, Anchor, Base, GradedMatrix, GradingError,
    MatrixBlock,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Multiplicativity,
    Grading,
    Independence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessViolation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    /// Generators `p_i c^k p_j*` enumerated.
    pub monomials: usize,
    /// Ordered pairs checked for multiplicativity.
    pub pairs_checked: usize,
    pub violation_count: usize,
    /// The first violations found, at most [`MAX_REPORTED`].
    pub violations: Vec<WitnessViolation>,
}

const MAX_REPORTED: usize = 16;

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, kind: ViolationKind, detail: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(WitnessViolation { kind, detail });
        }
    }
}

/// `(i, j, k)` stands for `p_i c^k p_j*` (`k = 0` in the field case).
type Triple = (usize, usize, i64);

struct Setup {
    paths: Vec<Path>,
    cycle: Option<Path>,
}

fn check_hypotheses(g: &Graph, block: &MatrixBlock) -> Result<Setup, GradingError> {
    let hyp = |msg: &str| Err(GradingError::Hypotheses(msg.to_string()));
    if !block.index.is_finite() {
        return Err(GradingError::InfiniteIndex);
    }
    let cycles = simple_cycles(g);
    let setup = match (&block.base, &block.anchor) {
        (Base::Field, Anchor::Sink { vertex }) => {
            if !cycles.is_empty() {
                return hyp("the graph has a cycle");
            }
            let w = g.require_vertex(vertex).map_err(TermError::from)?;
            if g.sinks() != vec![w] {
                return hyp("the anchor is not the only sink");
            }
            Setup {
                paths: sink_index_paths(g, w),
                cycle: None,
            }
        }
        (Base::Laurent { period }, Anchor::Cycle { vertex, .. }) => {
            let [report] = cycles.as_slice() else {
                return hyp("the graph does not have exactly one cycle");
            };
            if report.has_exits() {
                return hyp("the cycle has exits");
            }
            let u = g.require_vertex(vertex).map_err(TermError::from)?;
            let Some(cu) = report.cycle.rotated_to(g, u) else {
                return hyp("the anchor vertex is not on the cycle");
            };
            if cu.len() != *period {
                return hyp("the period differs from the cycle length");
            }
            let reach = g.reachability();
            if g.vertex_ids().any(|v| !reach[v.0][u.0]) {
                return hyp("some vertex does not reach the cycle");
            }
            Setup {
                paths: comet_index_paths(g, &cu),
                cycle: Some(cu),
            }
        }
        _ => return hyp("base and anchor kinds disagree"),
    };
    if Some(setup.paths.len()) != block.size() {
        return hyp("the grading vector does not match the index set");
    }
    Ok(setup)
}

fn power(c: &Path, k: usize) -> Path {
    let mut out = Path::vertex(c.start());
    for _ in 0..k {
        out = out.concat(c);
    }
    out
}

impl Setup {
    fn monomial(&self, g: &Graph, (i, j, k): Triple) -> Monomial {
        let (pi, pj) = (&self.paths[i], &self.paths[j]);
        let (p, q) = match &self.cycle {
            Some(c) if k > 0 => (pi.concat(&power(c, k as usize)), pj.clone()),
            Some(c) if k < 0 => (pi.clone(), pj.concat(&power(c, k.unsigned_abs() as usize))),
            _ => (pi.clone(), pj.clone()),
        };
        Monomial::new(g, p, q).expect("index paths share their range")
    }

    fn period(&self) -> i64 {
        self.cycle.as_ref().map_or(0, |c| c.len() as i64)
    }
}

struct Images<'a, 'g> {
    ctx: &'a Leavitt<'g>,
    setup: &'a Setup,
    cache: HashMap<Triple, LpaElement>,
}

impl Images<'_, '_> {
    fn element(&mut self, t: Triple) -> Result<LpaElement, GradingError> {
        if let Some(e) = self.cache.get(&t) {
            return Ok(e.clone());
        }
        let m = self.setup.monomial(self.ctx.graph(), t);
        let e = self.ctx.normal_form(&self.ctx.from_monomial(m, Q::one()))?;
        self.cache.insert(t, e.clone());
        Ok(e)
    }

    /// `φ⁻¹`, extended linearly.
    fn preimage(&mut self, a: &GradedMatrix) -> Result<LpaElement, GradingError> {
        let m = self.setup.period();
        let mut out = self.ctx.zero();
        for (&(i, j), poly) in a.entries() {
            for (exp, c) in poly.terms() {
                let k = if m == 0 { 0 } else { exp / m };
                out = out.add(&self.element((i, j, k))?.scale(c))?;
            }
        }
        Ok(out)
    }
}

/// Verifies, for all generators `p_i c^k p_j*` with
/// `|p_i| + |p_j| + |k|·m ≤ len_bound`:
///
/// * multiplicativity: `φ⁻¹(φ(a) φ(b)) = a b` in normal form,
/// * grading: `deg(a) = entry_degree(φ(a))` under the block's grading vector,
/// * linear independence of the normal forms.
///
/// Requires a finite block whose anchor spans the whole graph: an acyclic
/// graph with a single sink, or a graph with one exit-free cycle that every
/// vertex reaches.
pub fn iso_witness_check(
    g: &Graph,
    block: &MatrixBlock,
    len_bound: usize,
) -> Result<WitnessReport, GradingError> {
    let setup = check_hypotheses(g, block)?;
    let m = setup.period();
    let base = block.base;
    let n = setup.paths.len();

    let mut triples: Vec<Triple> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let used = setup.paths[i].len() + setup.paths[j].len();
            if used > len_bound {
                continue;
            }
            if m == 0 {
                triples.push((i, j, 0));
            } else {
                let kmax = ((len_bound - used) as i64) / m;
                triples.extend((-kmax..=kmax).map(|k| (i, j, k)));
            }
        }
    }

    let ctx = Leavitt::new(g).with_max_path_len(4 * len_bound + 4 * g.vertex_count() + 8);
    let mut images = Images {
        ctx: &ctx,
        setup: &setup,
        cache: HashMap::new(),
    };
    let mut report = WitnessReport {
        monomials: triples.len(),
        pairs_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
    };

    let name = |t: Triple| setup.monomial(g, t).display(g).to_string();
    let mut elements = Vec::with_capacity(triples.len());
    let mut phis = Vec::with_capacity(triples.len());
    for &t in &triples {
        let (i, j, k) = t;
        let mono = setup.monomial(g, t);
        let expected = entry_degree(block, i, j, k * m)?;
        if mono.degree() != expected {
            report.record(
                ViolationKind::Grading,
                format!(
                    "{}: degree {} but entry degree {}",
                    name(t),
                    mono.degree(),
                    expected
                ),
            );
        }
        elements.push(images.element(t)?);
        phis.push(GradedMatrix::unit(n, base, i, j, k * m, Q::one())?);
    }

    let mut support: BTreeMap<Monomial, usize> = BTreeMap::new();
    for e in &elements {
        for (mono, _) in e.terms() {
            let next = support.len();
            support.entry(mono.clone()).or_insert(next);
        }
    }
    let vectors: Vec<Vec<Q>> = elements
        .iter()
        .map(|e| {
            let mut v = vec![Q::from_integer(0.into()); support.len()];
            for (mono, c) in e.terms() {
                v[support[mono]] = c.clone();
            }
            v
        })
        .collect();
    let rank = rank_of(&vectors);
    if rank != elements.len() {
        report.record(
            ViolationKind::Independence,
            format!(
                "{} generators span a space of dimension {}",
                elements.len(),
                rank
            ),
        );
    }

    for (a, ea) in triples
        .iter()
        .zip(&elements)
        .enumerate()
        .map(|(i, (t, e))| ((*t, i), e))
    {
        for (b, eb) in triples
            .iter()
            .zip(&elements)
            .enumerate()
            .map(|(i, (t, e))| ((*t, i), e))
        {
            report.pairs_checked += 1;
            let lhs = ctx.multiply(ea, eb)?;
            let rhs = images.preimage(&phis[a.1].mul(&phis[b.1]))?;
            if lhs != rhs {
                report.record(
                    ViolationKind::Multiplicativity,
                    format!(
                        "({}) · ({}) = {} but the matrix product maps back to {}",
                        name(a.0),
                        name(b.0),
                        ctx.format(&lhs),
                        ctx.format(&rhs)
                    ),
                );
            }
        }
    }
    Ok(report)
}
