use std::collections::HashMap;

use super::{Graph, VertexId};

/// Structural isomorphism of finite multigraphs, ignoring names. Plain
/// backtracking over degree-compatible assignments; meant for the small
/// graphs used in reports and tests.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let count = |g: &Graph| {
        let mut m: HashMap<(usize, usize), usize> = HashMap::new();
        for e in g.edges() {
            *m.entry((e.source.0, e.range.0)).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let sig = |g: &Graph, v: VertexId| (g.out_degree(v), g.in_edges(v).len());
    let mut mapping = vec![usize::MAX; a.vertex_count()];
    let mut used = vec![false; b.vertex_count()];
    assign(a, b, &ca, &cb, &sig, 0, &mut mapping, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &Graph,
    b: &Graph,
    ca: &HashMap<(usize, usize), usize>,
    cb: &HashMap<(usize, usize), usize>,
    sig: &dyn Fn(&Graph, VertexId) -> (usize, usize),
    next: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if next == a.vertex_count() {
        return true;
    }
    let mult = |m: &HashMap<(usize, usize), usize>, s: usize, t: usize| {
        m.get(&(s, t)).copied().unwrap_or(0)
    };
    for cand in 0..b.vertex_count() {
        if used[cand] || sig(a, VertexId(next)) != sig(b, VertexId(cand)) {
            continue;
        }
        mapping[next] = cand;
        let consistent = (0..=next).all(|u| {
            let bu = mapping[u];
            mult(ca, next, u) == mult(cb, cand, bu) && mult(ca, u, next) == mult(cb, bu, cand)
        });
        if consistent {
            used[cand] = true;
            if assign(a, b, ca, cb, sig, next + 1, mapping, used) {
                return true;
            }
            used[cand] = false;
        }
        mapping[next] = usize::MAX;
    }
    false
}
