//! Rational infinite paths `μ c c c ⋯` and their tail equivalence.

use num_integer::Integer;

use crate::graph::{EdgeId, Graph, Path};

use super::ModuleError;

/// The infinite path `prefix · cycle · cycle ⋯`. The cycle is any closed
/// path of positive length starting where the prefix ends, so `c c` is as
/// valid as `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    graph: u64,
    prefix: Path,
    cycle: Path,
}

impl Lasso {
    pub fn new(g: &Graph, prefix: Path, cycle: Path) -> Result<Self, ModuleError> {
        if cycle.is_empty() {
            return Err(ModuleError::InvalidLasso("the cycle is empty".into()));
        }
        if cycle.end(g) != cycle.start() {
            return Err(ModuleError::InvalidLasso(format!(
                "{} is not closed",
                cycle.display(g)
            )));
        }
        if prefix.end(g) != cycle.start() {
            return Err(ModuleError::InvalidLasso(format!(
                "{} does not end where {} starts",
                prefix.display(g),
                cycle.display(g)
            )));
        }
        Ok(Lasso {
            graph: g.fingerprint(),
            prefix,
            cycle,
        })
    }

    /// `c c c ⋯` with an empty prefix.
    pub fn periodic(g: &Graph, cycle: Path) -> Result<Self, ModuleError> {
        Lasso::new(g, Path::vertex(cycle.start()), cycle)
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn cycle(&self) -> &Path {
        &self.cycle
    }

    /// The `i`-th edge of the infinite path.
    pub fn edge_at(&self, i: usize) -> EdgeId {
        let (p, c) = (self.prefix.edges(), self.cycle.edges());
        if i < p.len() {
            p[i]
        } else {
            c[(i - p.len()) % c.len()]
        }
    }
}

fn check_same_graph(a: &Lasso, b: &Lasso) -> Result<(), ModuleError> {
    if a.graph == b.graph {
        Ok(())
    } else {
        Err(ModuleError::GraphMismatch)
    }
}

/// Whether `a` and `b` agree after dropping finitely many edges from each.
///
/// Only the shifts `m ∈ [|μa|, |μa| + |ca|)` against `n = |μb|` need
/// testing, each over one common period `lcm(|ca|, |cb|)`.
pub fn tail_equivalent(a: &Lasso, b: &Lasso) -> Result<bool, ModuleError> {
    check_same_graph(a, b)?;
    let (pa, ca) = (a.prefix.len(), a.cycle.len());
    let n = b.prefix.len();
    let period = ca.lcm(&b.cycle.len());
    Ok((pa..pa + ca).any(|m| (0..period).all(|i| a.edge_at(m + i) == b.edge_at(n + i))))
}

/// The same predicate by exhaustive comparison: every pair of shifts below
/// `W = |μa| + |μb| + |ca| + |cb| + lcm(|ca|, |cb|)`, each over `W` edges.
pub fn tail_equivalent_window(a: &Lasso, b: &Lasso) -> Result<bool, ModuleError> {
    check_same_graph(a, b)?;
    let w = a.prefix.len()
        + b.prefix.len()
        + a.cycle.len()
        + b.cycle.len()
        + a.cycle.len().lcm(&b.cycle.len());
    Ok((0..w).any(|m| (0..w).any(|n| (0..w).all(|i| a.edge_at(m + i) == b.edge_at(n + i)))))
}
