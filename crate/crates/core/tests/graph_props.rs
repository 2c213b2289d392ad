mod common;

use common::{mask_of, raw_graph};
use lpa_core::graph::{
    closure_trace, hereditary_saturated_closure, is_downward_directed, is_hereditary, is_saturated,
    quotient_graph, simple_cycles, Cycle, VertexId,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_is_a_closure_operator(raw in raw_graph(8, 3), xm in any::<u32>(), ym in any::<u32>()) {
        let g = raw.build();
        let full = (1u32 << raw.n) - 1;
        let (xm, ym) = (xm & full, (xm | ym) & full);
        let x = g.vertex_set((0..raw.n).filter(|i| xm & (1 << i) != 0).map(VertexId));
        let y = g.vertex_set((0..raw.n).filter(|i| ym & (1 << i) != 0).map(VertexId));
        let cx = hereditary_saturated_closure(&g, &x).unwrap();
        let cy = hereditary_saturated_closure(&g, &y).unwrap();
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(&hereditary_saturated_closure(&g, &cx).unwrap(), &cx);
        prop_assert!(cx.is_subset(&cy));
        prop_assert!(is_hereditary(&g, &cx) && is_saturated(&g, &cx));
        prop_assert_eq!(mask_of(&cx), raw.closure_by_enumeration(xm));
    }

    #[test]
    fn saturation_only_adds_regular_vertices(raw in raw_graph(8, 3), xm in any::<u32>()) {
        let g = raw.build();
        let x = g.vertex_set((0..raw.n).filter(|i| xm & (1 << i) != 0).map(VertexId));
        let trace = closure_trace(&g, &x).unwrap();
        let x0 = &trace[0];
        for v in trace.last().unwrap().iter().filter(|v| !x0.contains(*v)) {
            prop_assert!(!g.is_sink(v));
        }
    }

    #[test]
    fn downward_directed_matches_pair_scan(raw in raw_graph(7, 2)) {
        let g = raw.build();
        let reach = raw.reach();
        let expected = (0..raw.n).all(|u| (0..raw.n).all(|v| (0..raw.n).any(|w| reach[u][w] && reach[v][w])));
        prop_assert_eq!(is_downward_directed(&g).holds, expected);
    }

    #[test]
    fn quotient_drops_h(raw in raw_graph(8, 3), xm in any::<u32>()) {
        let g = raw.build();
        let x = g.vertex_set((0..raw.n).filter(|i| xm & (1 << i) != 0).map(VertexId));
        let h = hereditary_saturated_closure(&g, &x).unwrap();
        let q = quotient_graph(&g, &h).unwrap();
        let kept: Vec<String> = g.vertex_ids().filter(|v| !h.contains(*v)).map(|v| g.vertex_name(v).to_string()).collect();
        prop_assert_eq!(q.vertex_names(), kept.as_slice());
        for e in q.edge_ids() {
            let (s, r) = (q.vertex_name(q.source(e)), q.vertex_name(q.range(e)));
            prop_assert!(!h.contains(g.vertex(s).unwrap()) && !h.contains(g.vertex(r).unwrap()));
        }
        if !h.is_empty() {
            prop_assert!(q.vertex_count() < g.vertex_count());
        }
    }

    #[test]
    fn cycle_reports_are_sound(raw in raw_graph(6, 2)) {
        let g = raw.build();
        let reports = simple_cycles(&g);
        for r in &reports {
            prop_assert!(Cycle::new(&g, r.cycle.path().clone()).is_ok());
            let on: Vec<VertexId> = r.cycle.vertices(&g);
            let expected: Vec<_> = g
                .edge_ids()
                .filter(|&f| on.contains(&g.source(f)) && !r.cycle.edges().contains(&f))
                .collect();
            let mut exits = r.exits.clone();
            exits.sort();
            prop_assert_eq!(exits, expected);
        }
        // Every vertex with a closed path through it lies on a reported cycle.
        let reach = raw.reach();
        for u in 0..raw.n {
            let cyclic = raw.pairs.iter().any(|&(s, d)| s == u && reach[d][u]);
            let reported = reports.iter().any(|r| r.cycle.contains_vertex(&g, VertexId(u)));
            prop_assert_eq!(cyclic, reported);
        }
    }
}
