//! Hereditary and saturated vertex sets, their closure, and downward
//! directedness.

use super::{Graph, GraphError, VertexId, VertexSet};

/// Largest vertex count accepted by [`hsat_subsets_bruteforce`].
pub const BRUTEFORCE_MAX_VERTICES: usize = 12;

/// `u ∈ H` and `u ≥ v` imply `v ∈ H`. For finite graphs it suffices to check
/// single edges.
pub fn is_hereditary(g: &Graph, h: &VertexSet) -> bool {
    first_hereditary_violation(g, h).is_none()
}

pub(crate) fn first_hereditary_violation(g: &Graph, h: &VertexSet) -> Option<super::EdgeId> {
    g.edge_ids()
        .find(|&e| h.contains(g.source(e)) && !h.contains(g.range(e)))
}

/// Every regular vertex emitting only into `H` belongs to `H`.
pub fn is_saturated(g: &Graph, h: &VertexSet) -> bool {
    first_saturation_violation(g, h).is_none()
}

pub(crate) fn first_saturation_violation(g: &Graph, h: &VertexSet) -> Option<VertexId> {
    g.vertex_ids()
        .find(|&v| !h.contains(v) && emits_only_into(g, v, h))
}

fn emits_only_into(g: &Graph, v: VertexId, set: &VertexSet) -> bool {
    !g.is_sink(v) && g.out_edges(v).iter().all(|&e| set.contains(g.range(e)))
}

/// The stages `X_0 ⊆ X_1 ⊆ …` of the closure induction, ending at the first
/// stable stage. `X_0` is the union of the trees of `X`; `X_{k+1}` adds every
/// regular vertex whose out-edges all land in `X_k`.
pub fn closure_trace(g: &Graph, x: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
    g.check_set(x)?;
    let mut current = g.vertex_set([]);
    for v in x.iter() {
        current = current.union(&g.tree(v));
    }
    let mut trace = vec![current.clone()];
    loop {
        let added: Vec<VertexId> = g
            .vertex_ids()
            .filter(|&v| !current.contains(v) && emits_only_into(g, v, &current))
            .collect();
        if added.is_empty() {
            return Ok(trace);
        }
        for v in added {
            current.insert(v);
        }
        trace.push(current.clone());
    }
}

/// Smallest hereditary saturated superset of `x`.
pub fn hereditary_saturated_closure(g: &Graph, x: &VertexSet) -> Result<VertexSet, GraphError> {
    Ok(closure_trace(g, x)?.pop().expect("trace is never empty"))
}

/// Every hereditary saturated subset, ordered by size and then by the
/// declaration-order bitmask. Refuses graphs above
/// [`BRUTEFORCE_MAX_VERTICES`].
pub fn hsat_subsets_bruteforce(g: &Graph) -> Result<Vec<VertexSet>, GraphError> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(GraphError::TooLarge {
            vertices: n,
            limit: BRUTEFORCE_MAX_VERTICES,
        });
    }
    let mut out: Vec<(u32, u32, VertexSet)> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let set = g.vertex_set(g.vertex_ids().filter(|v| mask & (1 << v.0) != 0));
        if is_hereditary(g, &set) && is_saturated(g, &set) {
            out.push((mask.count_ones(), mask, set));
        }
    }
    out.sort_by_key(|(size, mask, _)| (*size, *mask));
    Ok(out.into_iter().map(|(_, _, s)| s).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DownwardWitness {
    /// A pair of vertices with no common descendant.
    FailingPair(VertexId, VertexId),
    /// For each unordered pair `u < v`, the lowest-index common descendant.
    CommonDescendants(Vec<((VertexId, VertexId), VertexId)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownwardDirected {
    pub holds: bool,
    pub witness: DownwardWitness,
}

/// Every pair of vertices has a common descendant.
pub fn is_downward_directed(g: &Graph) -> DownwardDirected {
    let reach = g.reachability();
    let mut common = Vec::new();
    for u in g.vertex_ids() {
        for v in g.vertex_ids().filter(|v| *v > u) {
            match g.vertex_ids().find(|w| reach[u.0][w.0] && reach[v.0][w.0]) {
                Some(w) => common.push(((u, v), w)),
                None => {
                    return DownwardDirected {
                        holds: false,
                        witness: DownwardWitness::FailingPair(u, v),
                    }
                }
            }
        }
    }
    DownwardDirected {
        holds: true,
        witness: DownwardWitness::CommonDescendants(common),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Graph {
        Graph::from_strs(
            "G1",
            &["v11", "v12", "v13"],
            &[
                ("e1", "v11", "v12"),
                ("e2", "v12", "v13"),
                ("c", "v13", "v13"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn closure_of_loop_vertex_in_g1_is_everything() {
        let g = g1();
        let x = g.vertex_set_by_name(&["v13"]).unwrap();
        let cl = hereditary_saturated_closure(&g, &x).unwrap();
        assert_eq!(cl.names(&g), vec!["v11", "v12", "v13"]);
        let trace = closure_trace(&g, &x).unwrap();
        assert_eq!(trace.len(), 3);
    }

    #[test]
    fn closure_of_empty_set_is_empty() {
        let g = g1();
        let cl = hereditary_saturated_closure(&g, &g.vertex_set([])).unwrap();
        assert!(cl.is_empty());
    }

    #[test]
    fn foreign_sets_are_rejected() {
        let g = g1();
        let other = Graph::from_strs("h", &["a"], &[]).unwrap();
        let x = other.all_vertices();
        assert_eq!(
            hereditary_saturated_closure(&g, &x),
            Err(GraphError::ForeignVertexSet)
        );
    }

    #[test]
    fn bruteforce_lists() {
        let g = g1();
        let all = hsat_subsets_bruteforce(&g).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all[0].is_empty());
        assert_eq!(all[1].len(), 3);

        let single = Graph::from_strs("one", &["v"], &[]).unwrap();
        assert_eq!(hsat_subsets_bruteforce(&single).unwrap().len(), 2);

        let two = Graph::from_strs("twosinks", &["v1", "v2"], &[]).unwrap();
        let subsets: Vec<Vec<String>> = hsat_subsets_bruteforce(&two)
            .unwrap()
            .iter()
            .map(|s| s.names(&two))
            .collect();
        assert_eq!(
            subsets,
            vec![
                vec![],
                vec!["v1".to_string()],
                vec!["v2".to_string()],
                vec!["v1".into(), "v2".into()]
            ]
        );
    }

    #[test]
    fn bruteforce_guard() {
        let names: Vec<String> = (0..13).map(|i| format!("v{i}")).collect();
        let g = Graph::new("big", names, Vec::new()).unwrap();
        assert!(matches!(
            hsat_subsets_bruteforce(&g),
            Err(GraphError::TooLarge { .. })
        ));
    }

    #[test]
    fn downward_directed_cases() {
        let two = Graph::from_strs("twosinks", &["v1", "v2"], &[]).unwrap();
        let dd = is_downward_directed(&two);
        assert!(!dd.holds);
        assert_eq!(
            dd.witness,
            DownwardWitness::FailingPair(VertexId(0), VertexId(1))
        );
        assert!(is_downward_directed(&g1()).holds);
    }
}
