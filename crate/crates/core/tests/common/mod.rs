#![allow(dead_code)]

use std::collections::BTreeMap;

use lpa_core::graph::Graph;
use proptest::prelude::*;

/// Vertex count and edge list as index pairs.
#[derive(Debug, Clone)]
pub struct RawGraph {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl RawGraph {
    pub fn build(&self) -> Graph {
        let vertices: Vec<String> = (0..self.n).map(|i| format!("v{i}")).collect();
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let edges = self.pairs.iter().map(|&(s, d)| {
            let k = seen.entry((s, d)).or_insert(0);
            *k += 1;
            (
                format!("e{s}_{d}_{k}"),
                vertices[s].clone(),
                vertices[d].clone(),
            )
        });
        Graph::new("raw", vertices.clone(), edges.collect::<Vec<_>>()).unwrap()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.pairs.iter().filter(|p| p.0 == v).count()
    }

    /// `reach[u][w]`: a path (possibly trivial) from `u` to `w`.
    pub fn reach(&self) -> Vec<Vec<bool>> {
        let mut r = vec![vec![false; self.n]; self.n];
        for (u, row) in r.iter_mut().enumerate() {
            let mut stack = vec![u];
            while let Some(x) = stack.pop() {
                if !row[x] {
                    row[x] = true;
                    stack.extend(self.pairs.iter().filter(|p| p.0 == x).map(|p| p.1));
                }
            }
        }
        r
    }

    pub fn is_hereditary(&self, mask: u32) -> bool {
        self.pairs
            .iter()
            .all(|&(s, d)| mask & (1 << s) == 0 || mask & (1 << d) != 0)
    }

    pub fn is_saturated(&self, mask: u32) -> bool {
        (0..self.n).all(|v| {
            mask & (1 << v) != 0
                || self.out_degree(v) == 0
                || self
                    .pairs
                    .iter()
                    .any(|&(s, d)| s == v && mask & (1 << d) == 0)
        })
    }

    /// Intersection of every hereditary saturated superset of `x`.
    pub fn closure_by_enumeration(&self, x: u32) -> u32 {
        let full = (1u32 << self.n) - 1;
        (0..=full)
            .filter(|&m| m & x == x && self.is_hereditary(m) && self.is_saturated(m))
            .fold(full, |acc, m| acc & m)
    }
}

pub fn raw_graph(max_n: usize, max_edges_per_vertex: usize) -> impl Strategy<Value = RawGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges_per_vertex * n)
            .prop_map(move |pairs| RawGraph { n, pairs })
    })
}

pub fn mask_of(set: &lpa_core::graph::VertexSet) -> u32 {
    set.iter().fold(0, |m, v| m | (1 << v.0))
}
