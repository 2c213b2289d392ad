mod common;

use common::raw_graph;
use lpa_core::graph::{hereditary_saturated_closure, is_isomorphic, quotient_graph};
use lpa_core::io::{
    builtin_corpus, corpus_sweep, parse_graph_json, parse_graph_text, to_json, to_text,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn text_and_json_round_trip(raw in raw_graph(8, 3)) {
        let g = raw.build();
        let text = to_text(&g);
        let back = parse_graph_text(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_text(&back), text);
        let json = to_json(&g);
        let back = parse_graph_json(&json).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_json(&back), json);
    }
}

#[test]
fn corpus_output_parses() {
    for g in corpus_sweep() {
        assert_eq!(parse_graph_text(&to_text(&g)).unwrap(), g);
        assert_eq!(parse_graph_json(&to_json(&g)).unwrap(), g);
        for e in g.edge_ids() {
            let expected = format!(
                "{}_{}_",
                g.vertex_name(g.source(e)),
                g.vertex_name(g.range(e))
            );
            assert!(g.edge_name(e).starts_with(&expected));
        }
    }
}

#[test]
fn gn_quotient_by_first_row_is_gn_minus_one() {
    for n in 2..=10 {
        let g = builtin_corpus("Gn", Some(n)).unwrap();
        let h = hereditary_saturated_closure(&g, &g.vertex_set_by_name(&["v13"]).unwrap()).unwrap();
        assert_eq!(h.names(&g), vec!["v11", "v12", "v13"]);
        let q = quotient_graph(&g, &h).unwrap();
        assert!(
            is_isomorphic(&q, &builtin_corpus("Gn", Some(n - 1)).unwrap()),
            "n = {n}"
        );
    }
}
