use crate::graph::paths_ending_at_where;
use crate::graph::{classify_vertices, simple_cycles, Cycle, Graph, Path, VertexId};

use super::{Anchor, Base, GradingError, IndexSet, MatrixBlock};

/// Default path-length bound for sampling infinite index sets.
pub const DEFAULT_SAMPLE_BOUND: usize = 20;

/// Largest number of gradings kept in an infinite-index sample.
pub const SAMPLE_CAP: usize = 64;

fn on_cycle(g: &Graph, reach: &[Vec<bool>]) -> Vec<bool> {
    g.vertex_ids()
        .map(|u| g.out_edges(u).iter().any(|&e| reach[g.range(e).0][u.0]))
        .collect()
}

fn lengths(paths: &[Path]) -> Vec<i64> {
    paths.iter().map(|p| p.len() as i64).collect()
}

/// The sink at the end of the line point `v`'s tree.
fn sink_below(g: &Graph, v: VertexId) -> VertexId {
    let mut at = v;
    while let Some(&e) = g.out_edges(at).first() {
        at = g.range(e);
    }
    at
}

/// Paths ending at the sink `w`, in canonical order. Only meaningful when no
/// cycle reaches `w`.
pub fn sink_index_paths(g: &Graph, w: VertexId) -> Vec<Path> {
    paths_ending_at_where(g, w, g.vertex_count(), usize::MAX, |_| true)
}

/// Paths ending at `s(c)` that do not run through all of `c`, where `c` is
/// an exit-free cycle read from its base vertex. Only meaningful when no
/// other cycle reaches `s(c)`.
pub fn comet_index_paths(g: &Graph, c: &Path) -> Vec<Path> {
    paths_ending_at_where(g, c.start(), g.vertex_count(), usize::MAX, |p| {
        p.edges() != c.edges()
    })
}

/// The block `M_Λ(K)(δ̄)` of the line point `v`: `Λ` is the set of paths
/// ending at the sink of `T(v)` and `δ̄` their lengths.
pub fn acyclic_decomposition(
    g: &Graph,
    v: VertexId,
    bound: usize,
) -> Result<MatrixBlock, GradingError> {
    if !classify_vertices(g)[&v].is_line_point {
        return Err(GradingError::NotALinePoint(g.vertex_name(v).to_string()));
    }
    let w = sink_below(g, v);
    let reach = g.reachability();
    let cyc = on_cycle(g, &reach);
    let infinite = g.vertex_ids().any(|x| cyc[x.0] && reach[x.0][w.0]);
    let index = if infinite {
        let sample = paths_ending_at_where(g, w, bound, super::SAMPLE_CAP, |_| true);
        IndexSet::Infinite {
            sample: lengths(&sample),
            bound,
        }
    } else {
        IndexSet::Finite {
            gradings: lengths(&sink_index_paths(g, w)),
        }
    };
    Ok(MatrixBlock {
        base: Base::Field,
        index,
        anchor: Anchor::Sink {
            vertex: g.vertex_name(w).to_string(),
        },
    })
}

/// The block `M_Υ(K[x^m, x^-m])(δ̄)` of an exit-free cycle `c` of length `m`
/// based at its least vertex `u`: `Υ` is the set of paths ending at `u` that
/// do not run through all of `c`.
pub fn comet_decomposition(
    g: &Graph,
    c: &Cycle,
    bound: usize,
) -> Result<MatrixBlock, GradingError> {
    let vertices = c.vertices(g);
    let has_exit = vertices
        .iter()
        .any(|&v| g.out_edges(v).iter().any(|e| !c.edges().contains(e)));
    if has_exit {
        return Err(GradingError::CycleHasExits(c.path().display(g).to_string()));
    }
    let u = c.base_vertex(g);
    let cu = c.rotated_to(g, u).expect("base vertex lies on the cycle");
    let reach = g.reachability();
    let cyc = on_cycle(g, &reach);
    let infinite = g
        .vertex_ids()
        .any(|x| cyc[x.0] && !vertices.contains(&x) && reach[x.0][u.0]);
    let index = if infinite {
        let sample =
            paths_ending_at_where(g, u, bound, super::SAMPLE_CAP, |p| p.edges() != cu.edges());
        IndexSet::Infinite {
            sample: lengths(&sample),
            bound,
        }
    } else {
        IndexSet::Finite {
            gradings: lengths(&comet_index_paths(g, &cu)),
        }
    };
    Ok(MatrixBlock {
        base: Base::Laurent { period: c.len() },
        index,
        anchor: Anchor::Cycle {
            vertex: g.vertex_name(u).to_string(),
            edges: cu.edge_names(g).iter().map(|s| s.to_string()).collect(),
        },
    })
}

/// One field block per sink (declaration order), then one Laurent block per
/// exit-free cycle (cycle enumeration order).
pub fn graded_socle(g: &Graph, bound: usize) -> Vec<MatrixBlock> {
    let mut blocks: Vec<MatrixBlock> = g
        .sinks()
        .into_iter()
        .map(|w| acyclic_decomposition(g, w, bound).expect("sinks are line points"))
        .collect();
    for report in simple_cycles(g).into_iter().filter(|r| !r.has_exits()) {
        blocks.push(comet_decomposition(g, &report.cycle, bound).expect("cycle has no exits"));
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_corpus;

    fn gradings(b: &MatrixBlock) -> Vec<i64> {
        b.index.gradings().to_vec()
    }

    #[test]
    fn acyclic_examples() {
        let line = builtin_corpus("line", Some(2)).unwrap();
        let b = acyclic_decomposition(&line, line.vertex("v2").unwrap(), 20).unwrap();
        assert_eq!(b.base, Base::Field);
        assert_eq!(
            b.index,
            IndexSet::Finite {
                gradings: vec![0, 1]
            }
        );
        let from_v1 = acyclic_decomposition(&line, line.vertex("v1").unwrap(), 20).unwrap();
        assert_eq!(from_v1, b);

        let single = Graph::from_strs("one", &["v"], &[]).unwrap();
        assert_eq!(
            gradings(&acyclic_decomposition(&single, VertexId(0), 20).unwrap()),
            vec![0]
        );

        let join = Graph::from_strs(
            "join",
            &["v1", "v2", "v3"],
            &[("a", "v1", "v3"), ("b", "v2", "v3")],
        )
        .unwrap();
        assert_eq!(
            gradings(&acyclic_decomposition(&join, VertexId(2), 20).unwrap()),
            vec![0, 1, 1]
        );

        let g1 = builtin_corpus("G1", None).unwrap();
        assert!(matches!(
            acyclic_decomposition(&g1, VertexId(0), 20),
            Err(GradingError::NotALinePoint(_))
        ));
    }

    #[test]
    fn comet_examples() {
        let g1 = builtin_corpus("G1", None).unwrap();
        let blocks = graded_socle(&g1, 20);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].to_string(), "M_3(K[x,x^-1])(0,1,2)");

        let lp = builtin_corpus("loop", None).unwrap();
        assert_eq!(graded_socle(&lp, 20)[0].to_string(), "M_1(K[x,x^-1])(0)");

        let two = Graph::from_strs(
            "two",
            &["u", "v1", "w"],
            &[("a", "v1", "u"), ("b", "u", "w"), ("d", "w", "u")],
        )
        .unwrap();
        let c = &simple_cycles(&two)[0].cycle;
        let b = comet_decomposition(&two, c, 20).unwrap();
        assert_eq!(b.base, Base::Laurent { period: 2 });
        assert_eq!(gradings(&b), vec![0, 1, 1]);
    }

    #[test]
    fn exits_are_rejected() {
        let rose = builtin_corpus("rose", Some(2)).unwrap();
        let c = &simple_cycles(&rose)[0].cycle;
        assert!(matches!(
            comet_decomposition(&rose, c, 20),
            Err(GradingError::CycleHasExits(_))
        ));
        assert!(graded_socle(&rose, 20).is_empty());
    }

    #[test]
    fn g2_socle_is_infinite() {
        let g2 = builtin_corpus("G2", None).unwrap();
        let blocks = graded_socle(&g2, 20);
        assert_eq!(blocks.len(), 1);
        let IndexSet::Infinite { sample, bound } = &blocks[0].index else {
            panic!("expected an infinite index");
        };
        assert_eq!(*bound, 20);
        assert_eq!(&sample[..7], &[0, 1, 2, 3, 3, 3, 4]);
        // Three paths of each length from 3 to 20, one each of lengths 0..=2.
        assert_eq!(sample.len(), 3 + 3 * 18);
        let short = graded_socle(&g2, 5);
        assert!(sample.starts_with(short[0].index.gradings()));
        let long = graded_socle(&g2, 40);
        assert_eq!(long[0].index.gradings().len(), SAMPLE_CAP);
        assert!(long[0].index.gradings().starts_with(sample));
    }
}
