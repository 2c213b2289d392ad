use super::{Graph, Path, VertexId};

fn sort_level(g: &Graph, level: &mut [Path]) {
    level.sort_by(|a, b| {
        a.edge_names(g)
            .cmp(&b.edge_names(g))
            .then_with(|| g.vertex_name(a.start()).cmp(g.vertex_name(b.start())))
    });
}

/// Paths `p` with `r(p) = w` and `|p| <= max_len`, breadth first by length
/// and lexicographic by edge identifiers within a length, stopping after
/// `limit` paths. Branches for which `keep` returns false are cut, together
/// with all their extensions.
pub fn paths_ending_at_where<F>(
    g: &Graph,
    w: VertexId,
    max_len: usize,
    limit: usize,
    keep: F,
) -> Vec<Path>
where
    F: Fn(&Path) -> bool,
{
    let mut out = Vec::new();
    let mut level = vec![Path::vertex(w)];
    for len in 0..=max_len {
        sort_level(g, &mut level);
        let room = limit.saturating_sub(out.len());
        out.extend(level.iter().take(room).cloned());
        if len == max_len || out.len() >= limit {
            break;
        }
        let mut next = Vec::new();
        for p in &level {
            for &e in g.in_edges(p.start()) {
                let mut edges = Vec::with_capacity(p.len() + 1);
                edges.push(e);
                edges.extend_from_slice(p.edges());
                let q = Path::from_raw(g.source(e), edges);
                if keep(&q) {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    out
}

/// Paths ending at `w` of length at most `max_len`, in canonical order.
pub fn paths_ending_at(g: &Graph, w: VertexId, max_len: usize) -> Vec<Path> {
    paths_ending_at_where(g, w, max_len, usize::MAX, |_| true)
}

/// Every path of length at most `max_len`, in canonical order.
pub fn paths_up_to(g: &Graph, max_len: usize) -> Vec<Path> {
    let mut level: Vec<Path> = g.vertex_ids().map(Path::vertex).collect();
    let mut out = Vec::new();
    for len in 0..=max_len {
        sort_level(g, &mut level);
        out.extend(level.iter().cloned());
        if len == max_len {
            break;
        }
        level = level
            .iter()
            .flat_map(|p| {
                g.out_edges(p.end(g)).iter().map(move |&e| {
                    let mut edges = p.edges().to_vec();
                    edges.push(e);
                    Path::from_raw(p.start(), edges)
                })
            })
            .collect();
        if level.is_empty() {
            break;
        }
    }
    out
}
