use std::collections::BTreeSet;

use super::{Cycle, EdgeId, Graph, Path, VertexId};

/// A simple cycle together with every exit edge leaving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub cycle: Cycle,
    pub exits: Vec<EdgeId>,
}

impl CycleReport {
    pub fn has_exits(&self) -> bool {
        !self.exits.is_empty()
    }
}

/// Enumerates every cycle of `g` once, in canonical rotation (the rotation
/// whose edge-identifier sequence is lexicographically least), sorted by that
/// sequence.
///
/// Each cycle is discovered from its lowest-index vertex by a depth-first
/// search restricted to higher-index vertices, so no rotation is reported
/// twice. Parallel edges give distinct cycles.
pub fn simple_cycles(g: &Graph) -> Vec<CycleReport> {
    let mut found: Vec<Vec<EdgeId>> = Vec::new();
    for root in g.vertex_ids() {
        let mut on_path = vec![false; g.vertex_count()];
        on_path[root.0] = true;
        let mut stack = Vec::new();
        extend(g, root, root, &mut on_path, &mut stack, &mut found);
    }

    let mut cycles: Vec<(Vec<String>, Vec<EdgeId>)> = found
        .into_iter()
        .map(|edges| canonical_rotation(g, edges))
        .collect();
    cycles.sort();

    cycles
        .into_iter()
        .map(|(_, edges)| {
            let path = Path::from_raw(g.source(edges[0]), edges);
            let cycle = Cycle::new(g, path).expect("enumerated cycles are valid");
            let exits = exits_of(g, &cycle);
            CycleReport { cycle, exits }
        })
        .collect()
}

fn extend(
    g: &Graph,
    root: VertexId,
    at: VertexId,
    on_path: &mut [bool],
    stack: &mut Vec<EdgeId>,
    found: &mut Vec<Vec<EdgeId>>,
) {
    for &e in g.out_edges(at) {
        let next = g.range(e);
        if next == root {
            let mut cycle = stack.clone();
            cycle.push(e);
            found.push(cycle);
        } else if next > root && !on_path[next.0] {
            on_path[next.0] = true;
            stack.push(e);
            extend(g, root, next, on_path, stack, found);
            stack.pop();
            on_path[next.0] = false;
        }
    }
}

fn canonical_rotation(g: &Graph, edges: Vec<EdgeId>) -> (Vec<String>, Vec<EdgeId>) {
    (0..edges.len())
        .map(|k| {
            let mut rot = edges[k..].to_vec();
            rot.extend_from_slice(&edges[..k]);
            let key: Vec<String> = rot.iter().map(|&e| g.edge_name(e).to_string()).collect();
            (key, rot)
        })
        .min()
        .expect("cycles have positive length")
}

fn exits_of(g: &Graph, cycle: &Cycle) -> Vec<EdgeId> {
    let on_cycle: BTreeSet<EdgeId> = cycle.edges().iter().copied().collect();
    let mut exits = Vec::new();
    for v in cycle.vertices(g) {
        exits.extend(
            g.out_edges(v)
                .iter()
                .copied()
                .filter(|e| !on_cycle.contains(e)),
        );
    }
    exits.sort();
    exits
}

/// A vertex lying on two distinct cycles, if any.
pub fn shared_cycle_vertex(g: &Graph) -> Option<(VertexId, Cycle, Cycle)> {
    let cycles = simple_cycles(g);
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            let va: BTreeSet<_> = a.cycle.vertices(g).into_iter().collect();
            if let Some(v) = b.cycle.vertices(g).into_iter().find(|v| va.contains(v)) {
                return Some((v, a.cycle.clone(), b.cycle.clone()));
            }
        }
    }
    None
}

/// True iff distinct cycles never share a vertex.
pub fn cycles_pairwise_disjoint(g: &Graph) -> bool {
    shared_cycle_vertex(g).is_none()
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

    fn rose2() -> Graph {
        Graph::from_strs("rose2", &["v"], &[("g", "v", "v"), ("h", "v", "v")]).unwrap()
    }

    #[test]
    fn g1_has_one_exitless_loop() {
        let g = g1();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].cycle.path().edge_names(&g), vec!["c"]);
        assert!(cycles[0].exits.is_empty());
        assert!(cycles_pairwise_disjoint(&g));
    }

    #[test]
    fn rose2_loops_exit_into_each_other() {
        let g = rose2();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].exits, vec![g.edge_by_name("h").unwrap()]);
        assert_eq!(cycles[1].exits, vec![g.edge_by_name("g").unwrap()]);
        assert!(!cycles_pairwise_disjoint(&g));
    }

    #[test]
    fn acyclic_line_has_no_cycles() {
        let g = Graph::from_strs("line2", &["v1", "v2"], &[("e", "v1", "v2")]).unwrap();
        assert!(simple_cycles(&g).is_empty());
    }

    #[test]
    fn figure_eight_on_two_vertices_shares_a_vertex() {
        let g = Graph::from_strs(
            "f8",
            &["a", "b"],
            &[("l", "a", "a"), ("x", "a", "b"), ("y", "b", "a")],
        )
        .unwrap();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles.len(), 2);
        let (v, _, _) = shared_cycle_vertex(&g).unwrap();
        assert_eq!(g.vertex_name(v), "a");
    }

    #[test]
    fn canonical_rotation_is_lexicographically_least() {
        let g = Graph::from_strs(
            "tri",
            &["a", "b", "c"],
            &[("z", "a", "b"), ("m", "b", "c"), ("q", "c", "a")],
        )
        .unwrap();
        let cycles = simple_cycles(&g);
        assert_eq!(cycles[0].cycle.path().edge_names(&g), vec!["m", "q", "z"]);
    }
}
