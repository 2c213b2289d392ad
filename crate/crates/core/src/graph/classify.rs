use std::collections::BTreeMap;

use serde::Serialize;

use super::{simple_cycles, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Sink,
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexProfile {
    pub kind: VertexKind,
    pub is_bifurcation: bool,
    pub is_line_point: bool,
    pub is_laurent: bool,
    pub on_no_exit_cycle: bool,
}

/// Sink/regular, bifurcation, line point, Laurent vertex, and membership of
/// an exit-free cycle, for every vertex.
pub fn classify_vertices(g: &Graph) -> BTreeMap<VertexId, VertexProfile> {
    let reach = g.reachability();
    // u lies on a cycle iff some successor of u reaches u.
    let on_cycle: Vec<bool> = g
        .vertex_ids()
        .map(|u| g.out_edges(u).iter().any(|&e| reach[g.range(e).0][u.0]))
        .collect();

    let mut on_no_exit_cycle = vec![false; g.vertex_count()];
    for report in simple_cycles(g).iter().filter(|c| !c.has_exits()) {
        for v in report.cycle.vertices(g) {
            on_no_exit_cycle[v.0] = true;
        }
    }

    g.vertex_ids()
        .map(|v| {
            let tree: Vec<VertexId> = g.vertex_ids().filter(|w| reach[v.0][w.0]).collect();
            let is_line_point = tree.iter().all(|&w| g.out_degree(w) <= 1 && !on_cycle[w.0]);
            // T(v) is the vertex set of a single path μc with μ bifurcation-free
            // and c exit-free exactly when every vertex of T(v) emits one edge.
            let is_laurent = tree.iter().all(|&w| g.out_degree(w) == 1);
            let profile = VertexProfile {
                kind: if g.is_sink(v) {
                    VertexKind::Sink
                } else {
                    VertexKind::Regular
                },
                is_bifurcation: g.out_degree(v) >= 2,
                is_line_point,
                is_laurent,
                on_no_exit_cycle: on_no_exit_cycle[v.0],
            };
            (v, profile)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sink_is_line_point() {
        let g = Graph::from_strs("line2", &["v1", "v2"], &[("e", "v1", "v2")]).unwrap();
        let p = classify_vertices(&g);
        let v2 = p[&g.vertex("v2").unwrap()];
        assert_eq!(v2.kind, VertexKind::Sink);
        assert!(v2.is_line_point);
        assert!(p[&g.vertex("v1").unwrap()].is_line_point);
    }

    #[test]
    fn g1_vertices_are_laurent() {
        let g = Graph::from_strs(
            "G1",
            &["v11", "v12", "v13"],
            &[
                ("e1", "v11", "v12"),
                ("e2", "v12", "v13"),
                ("c", "v13", "v13"),
            ],
        )
        .unwrap();
        let p = classify_vertices(&g);
        let v13 = p[&g.vertex("v13").unwrap()];
        assert_eq!(v13.kind, VertexKind::Regular);
        assert!(v13.on_no_exit_cycle && v13.is_laurent && !v13.is_line_point);
        for name in ["v11", "v12"] {
            let q = p[&g.vertex(name).unwrap()];
            assert!(q.is_laurent && !q.is_line_point && !q.on_no_exit_cycle);
        }
    }

    #[test]
    fn rose2_vertex() {
        let g = Graph::from_strs("rose2", &["v"], &[("g", "v", "v"), ("h", "v", "v")]).unwrap();
        let p = classify_vertices(&g)[&VertexId(0)];
        assert_eq!(
            p,
            VertexProfile {
                kind: VertexKind::Regular,
                is_bifurcation: true,
                is_line_point: false,
                is_laurent: false,
                on_no_exit_cycle: false,
            }
        );
    }
}
