//! Seeded random graphs, vertex sets and algebra elements for the fuzz
//! suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{paths_up_to, Graph, Path, VertexId, VertexSet};
use crate::linalg::Q;
use crate::term::{Leavitt, LpaElement, Monomial};

fn assemble(name: &str, n: usize, pairs: &[(usize, usize)]) -> Graph {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let edges: Vec<(String, String, String)> = pairs
        .iter()
        .map(|&(s, d)| {
            let k = counts.entry((s, d)).or_insert(0);
            let id = format!("v{}_v{}_{}", s + 1, d + 1, k);
            *k += 1;
            (id, vertices[s].clone(), vertices[d].clone())
        })
        .collect();
    Graph::new(name, vertices.clone(), edges).expect("generated graphs are well formed")
}

/// `n` vertices; each ordered pair, loops included, carries an edge with
/// probability `p`, doubled with probability `p / 4`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if rng.gen_bool(p) {
                pairs.push((s, d));
                if rng.gen_bool(p / 4.0) {
                    pairs.push((s, d));
                }
            }
        }
    }
    assemble("random", n, &pairs)
}

/// An acyclic graph on `n ≥ 1` vertices whose only sink is the last one:
/// every other vertex emits one or two edges to later vertices.
pub fn random_acyclic_single_sink<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 1);
    let mut pairs = Vec::new();
    for s in 0..n - 1 {
        let out = rng.gen_range(1..=2);
        for _ in 0..out {
            pairs.push((s, rng.gen_range(s + 1..n)));
        }
    }
    assemble("acyclic", n, &pairs)
}

/// Each vertex independently with probability one half.
pub fn random_vertex_set<R: Rng>(rng: &mut R, g: &Graph) -> VertexSet {
    g.vertex_set(g.vertex_ids().filter(|_| rng.gen_bool(0.5)))
}

/// Samples monomials `pq*` with `|p|, |q| ≤ max_len`.
pub struct MonomialSampler {
    by_range: Vec<(VertexId, Vec<Path>)>,
}

impl MonomialSampler {
    pub fn new(g: &Graph, max_len: usize) -> Self {
        let mut groups: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
        for p in paths_up_to(g, max_len) {
            groups.entry(p.end(g)).or_default().push(p);
        }
        MonomialSampler {
            by_range: groups.into_iter().collect(),
        }
    }

    pub fn monomial<R: Rng>(&self, rng: &mut R, g: &Graph) -> Monomial {
        let (_, paths) = self
            .by_range
            .choose(rng)
            .expect("graphs sampled are nonempty");
        let p = paths
            .choose(rng)
            .expect("every group holds its vertex")
            .clone();
        let q = paths
            .choose(rng)
            .expect("every group holds its vertex")
            .clone();
        Monomial::new(g, p, q).expect("grouped by range")
    }

    /// Up to `terms` monomials with coefficients `a/b`, `|a| ≤ 3`, `1 ≤ b ≤ 2`.
    pub fn element<R: Rng>(&self, rng: &mut R, ctx: &Leavitt<'_>, terms: usize) -> LpaElement {
        let mut out = ctx.zero();
        for _ in 0..rng.gen_range(1..=terms) {
            let c = Q::new(
                rng.gen_range(-3i64..=3).into(),
                rng.gen_range(1i64..=2).into(),
            );
            out.add_term(self.monomial(rng, ctx.graph()), c);
        }
        out
    }
}
