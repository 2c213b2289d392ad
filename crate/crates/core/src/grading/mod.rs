//! Graded matrix rings `M_Λ(K)(δ̄)` and `M_Υ(K[x^m, x^-m])(δ̄)`, where
//! `deg(e_ij(x^k)) = k + δ_i − δ_j`, and the decompositions of graded
//! Leavitt path algebras into them.

mod decompose;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Q;
use crate::term::TermError;

pub use decompose::{
    acyclic_decomposition, comet_decomposition, comet_index_paths, graded_socle, sink_index_paths,
    DEFAULT_SAMPLE_BOUND, SAMPLE_CAP,
};
pub use witness::{iso_witness_check, ViolationKind, WitnessReport, WitnessViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("{0} is not a line point")]
    NotALinePoint(String),
    #[error("cycle {0} has exits")]
    CycleHasExits(String),
    #[error("entry ({i}, {j}) outside a {n}-element index")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("x-degree {xdeg} is not allowed by the base ring (period {period}, 0 for K)")]
    PeriodViolation { xdeg: i64, period: usize },
    #[error("the block has an infinite index")]
    InfiniteIndex,
    #[error("decomposition hypotheses fail: {0}")]
    Hypotheses(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Coefficient ring of a block: `K`, or `K[x^m, x^-m]` with period `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Base {
    Field,
    Laurent { period: usize },
}

impl Base {
    pub fn period(&self) -> Option<usize> {
        match self {
            Base::Field => None,
            Base::Laurent { period } => Some(*period),
        }
    }

    /// Checks that `x^xdeg` lies in the base ring.
    pub fn admits(&self, xdeg: i64) -> Result<(), GradingError> {
        match *self {
            Base::Field if xdeg != 0 => Err(GradingError::PeriodViolation { xdeg, period: 0 }),
            Base::Laurent { period } if xdeg.rem_euclid(period as i64) != 0 => {
                Err(GradingError::PeriodViolation { xdeg, period })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Field => f.write_str("K"),
            Base::Laurent { period: 1 } => f.write_str("K[x,x^-1]"),
            Base::Laurent { period } => write!(f, "K[x^{period},x^-{period}]"),
        }
    }
}

/// The index set of a block with its grading vector. Infinite index sets
/// carry the gradings of the first paths in canonical order, up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IndexSet {
    Finite { gradings: Vec<i64> },
    Infinite { sample: Vec<i64>, bound: usize },
}

impl IndexSet {
    pub fn gradings(&self) -> &[i64] {
        match self {
            IndexSet::Finite { gradings } => gradings,
            IndexSet::Infinite { sample, .. } => sample,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IndexSet::Finite { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Anchor {
    Sink {
        vertex: String,
    },
    /// An exit-free cycle read from its base vertex.
    Cycle {
        vertex: String,
        edges: Vec<String>,
    },
}

impl Anchor {
    pub fn vertex(&self) -> &str {
        match self {
            Anchor::Sink { vertex } | Anchor::Cycle { vertex, .. } => vertex,
        }
    }
}

/// One graded matrix summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixBlock {
    pub base: Base,
    pub index: IndexSet,
    pub anchor: Anchor,
}

impl MatrixBlock {
    /// Replaces the grading vector, keeping everything else.
    pub fn with_gradings(&self, gradings: Vec<i64>) -> MatrixBlock {
        let index = match &self.index {
            IndexSet::Finite { .. } => IndexSet::Finite { gradings },
            IndexSet::Infinite { bound, .. } => IndexSet::Infinite {
                sample: gradings,
                bound: *bound,
            },
        };
        MatrixBlock {
            index,
            ..self.clone()
        }
    }

    /// Number of indices when finite.
    pub fn size(&self) -> Option<usize> {
        match &self.index {
            IndexSet::Finite { gradings } => Some(gradings.len()),
            IndexSet::Infinite { .. } => None,
        }
    }
}

impl fmt::Display for MatrixBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.index.gradings().iter().map(i64::to_string).collect();
        match &self.index {
            IndexSet::Finite { gradings } => {
                write!(f, "M_{}({})({})", gradings.len(), self.base, g.join(","))
            }
            IndexSet::Infinite { .. } => write!(f, "M_inf({})({},...)", self.base, g.join(",")),
        }
    }
}

/// `deg(e_ij(x^xdeg)) = xdeg + δ_i − δ_j` (indices from 0).
pub fn entry_degree(
    block: &MatrixBlock,
    i: usize,
    j: usize,
    xdeg: i64,
) -> Result<i64, GradingError> {
    let d = block.index.gradings();
    if i >= d.len() || j >= d.len() {
        return Err(GradingError::IndexOutOfRange { i, j, n: d.len() });
    }
    block.base.admits(xdeg)?;
    Ok(xdeg + d[i] - d[j])
}

/// A Laurent polynomial `Σ c_k x^k` with nonzero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn monomial(exp: i64, c: Q) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(exp, c);
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

/// A sparse `n × n` matrix over the base ring of a block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    n: usize,
    base: Base,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl GradedMatrix {
    pub fn zero(n: usize, base: Base) -> Self {
        GradedMatrix {
            n,
            base,
            entries: BTreeMap::new(),
        }
    }

    /// The matrix unit `e_ij(c · x^xdeg)`.
    pub fn unit(
        n: usize,
        base: Base,
        i: usize,
        j: usize,
        xdeg: i64,
        c: Q,
    ) -> Result<Self, GradingError> {
        let mut m = GradedMatrix::zero(n, base);
        m.add_entry(i, j, xdeg, c)?;
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn add_entry(&mut self, i: usize, j: usize, xdeg: i64, c: Q) -> Result<(), GradingError> {
        if i >= self.n || j >= self.n {
            return Err(GradingError::IndexOutOfRange { i, j, n: self.n });
        }
        self.base.admits(xdeg)?;
        let slot = self.entries.entry((i, j)).or_default();
        slot.add_term(xdeg, c);
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let mut out = GradedMatrix::zero(self.n, self.base);
        for (&(i, k), a) in &self.entries {
            for (&(k2, j), b) in other.entries.range((k, 0)..=(k, usize::MAX)) {
                debug_assert_eq!(k, k2);
                let slot = out.entries.entry((i, j)).or_default();
                for (exp, c) in a.mul(b).terms() {
                    slot.add_term(exp, c.clone());
                }
            }
        }
        out.entries.retain(|_, p| !p.is_zero());
        out
    }

    /// The common degree of every nonzero term under `block`'s grading, if
    /// the matrix is homogeneous and nonzero.
    pub fn degree(&self, block: &MatrixBlock) -> Result<Option<i64>, GradingError> {
        let mut found = None;
        for (&(i, j), p) in &self.entries {
            for (exp, _) in p.terms() {
                let d = entry_degree(block, i, j, exp)?;
                match found {
                    None => found = Some(d),
                    Some(prev) if prev != d => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(found)
    }
}
