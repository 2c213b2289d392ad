//! Exact arithmetic in the Leavitt path algebra `L_K(E)` over `K = Q`.
//!
//! Elements are finite rational combinations of monomials `p q*` with
//! `r(p) = r(q)`. Products use the defining relations
//!
//! - `v w = δ_{v,w} v`,
//! - `s(e) e = e = e r(e)` and `r(e) e* = e* = e* s(e)`,
//! - (CK1) `e* f = δ_{e,f} r(e)`,
//! - (CK2) `v = Σ_{s(e) = v} e e*` for every regular `v`.
//!
//! CK2 is oriented as a rewrite rule that removes `e_v e_v*` for one chosen
//! special edge `e_v` per regular vertex; what remains is a basis.

mod expr;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};
pub use crate::linalg::Q as Scalar;

pub use expr::{parse_expression, ExprError};

/// Default bound on path lengths produced while multiplying or rewriting.
pub const DEFAULT_MAX_PATH_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("elements belong to different graphs")]
    GraphMismatch,
    #[error("path of length {len} exceeds the bound {limit}")]
    PathTooLong { len: usize, limit: usize },
    #[error("monomial ranges differ: r(p) = {p_range}, r(q) = {q_range}")]
    RangeMismatch { p_range: String, q_range: String },
    #[error("special edge {edge} does not start at {vertex}")]
    SpecialEdgeSource { vertex: String, edge: String },
    #[error("special-edge file line {line}: {message}")]
    SpecialEdgeSyntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A monomial `p q*` with `r(p) = r(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    p: Path,
    q: Path,
}

impl Monomial {
    pub fn new(g: &Graph, p: Path, q: Path) -> Result<Self, TermError> {
        let (rp, rq) = (p.end(g), q.end(g));
        if rp != rq {
            return Err(TermError::RangeMismatch {
                p_range: g.vertex_name(rp).to_string(),
                q_range: g.vertex_name(rq).to_string(),
            });
        }
        Ok(Monomial { p, q })
    }

    pub fn vertex(v: VertexId) -> Self {
        Monomial {
            p: Path::vertex(v),
            q: Path::vertex(v),
        }
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    /// `|p| - |q|`.
    pub fn degree(&self) -> i64 {
        self.p.len() as i64 - self.q.len() as i64
    }

    pub fn is_vertex(&self) -> bool {
        self.p.is_empty() && self.q.is_empty()
    }

    /// `(p q*)* = q p*`.
    pub fn involute(&self) -> Monomial {
        Monomial {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// Canonical text: the edges of `p`, then the edges of `q` reversed and
    /// starred; a vertex monomial prints as its vertex.
    pub fn display<'a>(&'a self, g: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, g }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.p.edges().cmp(other.p.edges()))
            .then_with(|| self.p.start().cmp(&other.p.start()))
            .then_with(|| self.q.edges().cmp(other.q.edges()))
            .then_with(|| self.q.start().cmp(&other.q.start()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    g: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Monomial { p, q } = self.m;
        if p.is_empty() && q.is_empty() {
            return f.write_str(self.g.vertex_name(p.start()));
        }
        let mut parts: Vec<String> = p.edge_names(self.g).iter().map(|s| s.to_string()).collect();
        parts.extend(q.edge_names(self.g).iter().rev().map(|s| format!("{s}^*")));
        f.write_str(&parts.join(" "))
    }
}

/// The special edge `e_v` chosen at every regular vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialEdgeChoice {
    edges: Vec<Option<EdgeId>>,
}

impl SpecialEdgeChoice {
    /// First-declared out-edge of each regular vertex.
    pub fn first_declared(g: &Graph) -> Self {
        SpecialEdgeChoice {
            edges: g
                .vertex_ids()
                .map(|v| g.out_edges(v).first().copied())
                .collect(),
        }
    }

    /// Defaults overridden by `(vertex, edge)` pairs.
    pub fn with_overrides(g: &Graph, pairs: &[(VertexId, EdgeId)]) -> Result<Self, TermError> {
        let mut choice = Self::first_declared(g);
        for &(v, e) in pairs {
            if g.source(e) != v {
                return Err(TermError::SpecialEdgeSource {
                    vertex: g.vertex_name(v).to_string(),
                    edge: g.edge_name(e).to_string(),
                });
            }
            choice.edges[v.0] = Some(e);
        }
        Ok(choice)
    }

    /// Reads lines `<vertex> <edge>`; `#` starts a comment.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, TermError> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TermError::SpecialEdgeSyntax {
                line: i + 1,
                message,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            let [v, e] = words.as_slice() else {
                return Err(err("expected `<vertex> <edge>`".into()));
            };
            let v = g
                .vertex(v)
                .ok_or_else(|| err(format!("unknown vertex {v}")))?;
            let e = g
                .edge_by_name(e)
                .ok_or_else(|| err(format!("unknown edge {e}")))?;
            pairs.push((v, e));
        }
        Self::with_overrides(g, &pairs)
    }

    pub fn get(&self, v: VertexId) -> Option<EdgeId> {
        self.edges.get(v.0).copied().flatten()
    }
}

/// An element of `L_K(E)`: monomial → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpaElement {
    graph: u64,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LpaElement {
    pub fn zero(g: &Graph) -> Self {
        LpaElement {
            graph: g.fingerprint(),
            terms: BTreeMap::new(),
        }
    }

    pub fn graph_fingerprint(&self) -> u64 {
        self.graph
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    fn same_graph(&self, other: &LpaElement) -> Result<(), TermError> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(TermError::GraphMismatch)
        }
    }

    pub fn add(&self, other: &LpaElement) -> Result<LpaElement, TermError> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LpaElement) -> Result<LpaElement, TermError> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> LpaElement {
        let mut out = LpaElement {
            graph: self.graph,
            terms: BTreeMap::new(),
        };
        if !s.is_zero() {
            for (m, c) in &self.terms {
                out.terms.insert(m.clone(), c * s);
            }
        }
        out
    }

    /// Degree-`n` component.
    pub fn homogeneous_part(&self, n: i64) -> LpaElement {
        LpaElement {
            graph: self.graph,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        d.dedup();
        d
    }

    /// The degree when the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Coefficient-wise `(p q*)* = q p*`.
    pub fn involute(&self) -> LpaElement {
        LpaElement {
            graph: self.graph,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.involute(), c.clone()))
                .collect(),
        }
    }

    /// Canonical text, e.g. `v - h h^*` or `3/2*e1 c^*`; the zero element
    /// prints as `0`.
    pub fn display<'a>(&'a self, g: &'a Graph) -> ElementDisplay<'a> {
        ElementDisplay { a: self, g }
    }
}

pub struct ElementDisplay<'a> {
    a: &'a LpaElement,
    g: &'a Graph,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.a.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", m.display(self.g))?;
        }
        Ok(())
    }
}

/// Arithmetic context: a graph, its special edges and the path-length bound.
#[derive(Debug, Clone)]
pub struct Leavitt<'g> {
    graph: &'g Graph,
    special: SpecialEdgeChoice,
    max_path_len: usize,
}

impl<'g> Leavitt<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Leavitt {
            graph,
            special: SpecialEdgeChoice::first_declared(graph),
            max_path_len: DEFAULT_MAX_PATH_LEN,
        }
    }

    pub fn with_special_edges(mut self, special: SpecialEdgeChoice) -> Self {
        self.special = special;
        self
    }

    pub fn with_max_path_len(mut self, max_path_len: usize) -> Self {
        self.max_path_len = max_path_len;
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn special_edges(&self) -> &SpecialEdgeChoice {
        &self.special
    }

    pub fn max_path_len(&self) -> usize {
        self.max_path_len
    }

    fn check(&self, a: &LpaElement) -> Result<(), TermError> {
        if a.graph == self.graph.fingerprint() {
            Ok(())
        } else {
            Err(TermError::GraphMismatch)
        }
    }

    pub fn zero(&self) -> LpaElement {
        LpaElement::zero(self.graph)
    }

    /// `1 = Σ_v v`.
    pub fn one(&self) -> LpaElement {
        let mut a = self.zero();
        for v in self.graph.vertex_ids() {
            a.add_term(Monomial::vertex(v), Scalar::one());
        }
        a
    }

    pub fn from_monomial(&self, m: Monomial, c: Scalar) -> LpaElement {
        let mut a = self.zero();
        a.add_term(m, c);
        a
    }

    pub fn vertex(&self, v: VertexId) -> LpaElement {
        self.from_monomial(Monomial::vertex(v), Scalar::one())
    }

    pub fn edge(&self, e: EdgeId) -> LpaElement {
        let g = self.graph;
        let m = Monomial {
            p: Path::from_raw(g.source(e), vec![e]),
            q: Path::vertex(g.range(e)),
        };
        self.from_monomial(m, Scalar::one())
    }

    pub fn ghost(&self, e: EdgeId) -> LpaElement {
        self.edge(e).involute()
    }

    /// `p q*` as given, without normalization.
    pub fn monomial(&self, p: Path, q: Path) -> Result<LpaElement, TermError> {
        Ok(self.from_monomial(Monomial::new(self.graph, p, q)?, Scalar::one()))
    }

    /// Product of two monomials, before any use of CK2.
    pub fn multiply_monomials(
        &self,
        a: &Monomial,
        b: &Monomial,
    ) -> Result<Option<Monomial>, TermError> {
        let (p, q) = (&a.p, &a.q);
        let (r, s) = (&b.p, &b.q);
        if q.start() != r.start() {
            return Ok(None);
        }
        let (qe, re) = (q.edges(), r.edges());
        let out = if re.starts_with(qe) {
            let rest = Path::from_raw(q.end(self.graph), re[qe.len()..].to_vec());
            Monomial {
                p: p.concat(&rest),
                q: s.clone(),
            }
        } else if qe.starts_with(re) {
            let rest = Path::from_raw(r.end(self.graph), qe[re.len()..].to_vec());
            Monomial {
                p: p.clone(),
                q: s.concat(&rest),
            }
        } else {
            return Ok(None);
        };
        self.check_len(&out)?;
        Ok(Some(out))
    }

    fn check_len(&self, m: &Monomial) -> Result<(), TermError> {
        let len = m.p.len().max(m.q.len());
        if len > self.max_path_len {
            return Err(TermError::PathTooLong {
                len,
                limit: self.max_path_len,
            });
        }
        Ok(())
    }

    /// Bilinear product without CK2 rewriting.
    pub fn multiply_raw(&self, a: &LpaElement, b: &LpaElement) -> Result<LpaElement, TermError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some(m) = self.multiply_monomials(ma, mb)? {
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Product in normal form.
    pub fn multiply(&self, a: &LpaElement, b: &LpaElement) -> Result<LpaElement, TermError> {
        let raw = self.multiply_raw(a, b)?;
        self.normal_form(&raw)
    }

    /// Product of several factors, normalized after each step.
    pub fn product(&self, factors: &[LpaElement]) -> Result<LpaElement, TermError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// The special edge `e` when `m = p' e (q' e)*`, i.e. when `m` is
    /// reducible.
    pub fn redex(&self, m: &Monomial) -> Option<EdgeId> {
        let (&a, &b) = (m.p.edges().last()?, m.q.edges().last()?);
        (a == b && self.special.get(self.graph.source(a)) == Some(a)).then_some(a)
    }

    pub fn is_normal(&self, a: &LpaElement) -> bool {
        a.terms.keys().all(|m| self.redex(m).is_none())
    }

    /// One rewrite step: `p' e e* q'* ↦ p' q'* − Σ_{f ≠ e} p' f f* q'*`.
    pub fn rewrite_once(&self, m: &Monomial) -> Option<Vec<(Monomial, Scalar)>> {
        let e = self.redex(m)?;
        let g = self.graph;
        let v = g.source(e);
        let p1 = Path::from_raw(m.p.start(), m.p.edges()[..m.p.len() - 1].to_vec());
        let q1 = Path::from_raw(m.q.start(), m.q.edges()[..m.q.len() - 1].to_vec());
        let mut out = vec![(
            Monomial {
                p: p1.clone(),
                q: q1.clone(),
            },
            Scalar::one(),
        )];
        for &f in g.out_edges(v).iter().filter(|&&f| f != e) {
            let tail = Path::from_raw(v, vec![f]);
            out.push((
                Monomial {
                    p: p1.concat(&tail),
                    q: q1.concat(&tail),
                },
                -Scalar::one(),
            ));
        }
        Some(out)
    }

    /// Canonical representative: rewrites every reducible monomial until
    /// none is left.
    pub fn normal_form(&self, a: &LpaElement) -> Result<LpaElement, TermError> {
        self.normal_form_with(a, |pending| pending.len() - 1)
    }

    /// [`Self::normal_form`] where `choose` picks which pending reducible
    /// term to rewrite next. The result does not depend on the choices.
    pub fn normal_form_with<F>(
        &self,
        a: &LpaElement,
        mut choose: F,
    ) -> Result<LpaElement, TermError>
    where
        F: FnMut(&[(Monomial, Scalar)]) -> usize,
    {
        self.check(a)?;
        let mut done = self.zero();
        let mut pending: Vec<(Monomial, Scalar)> = Vec::new();
        for (m, c) in &a.terms {
            self.check_len(m)?;
            if self.redex(m).is_some() {
                pending.push((m.clone(), c.clone()));
            } else {
                done.add_term(m.clone(), c.clone());
            }
        }
        while !pending.is_empty() {
            let idx = choose(&pending).min(pending.len() - 1);
            let (m, c) = pending.swap_remove(idx);
            for (n, k) in self.rewrite_once(&m).expect("pending terms are reducible") {
                let coeff = &c * &k;
                if self.redex(&n).is_some() {
                    pending.push((n, coeff));
                } else {
                    done.add_term(n, coeff);
                }
            }
        }
        Ok(done)
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.degree()
    }

    pub fn homogeneous_part(&self, a: &LpaElement, n: i64) -> LpaElement {
        a.homogeneous_part(n)
    }

    pub fn involute(&self, a: &LpaElement) -> LpaElement {
        a.involute()
    }

    pub fn parse(&self, input: &str) -> Result<LpaElement, ExprError> {
        parse_expression(self, input)
    }

    pub fn format(&self, a: &LpaElement) -> String {
        a.display(self.graph).to_string()
    }
}
