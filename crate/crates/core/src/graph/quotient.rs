use super::closure::{first_hereditary_violation, first_saturation_violation};
use super::{Graph, GraphError, VertexSet};

/// The quotient graph `E \ H`: vertices outside `H` and the edges whose range
/// lies outside `H`. For finite graphs there are no breaking vertices, so
/// the hereditary saturated set alone determines the quotient.
pub fn quotient_graph(g: &Graph, h: &VertexSet) -> Result<Graph, GraphError> {
    g.check_set(h)?;
    if let Some(e) = first_hereditary_violation(g, h) {
        return Err(GraphError::NotHereditary {
            edge: g.edge_name(e).to_string(),
            range: g.vertex_name(g.range(e)).to_string(),
        });
    }
    if let Some(v) = first_saturation_violation(g, h) {
        return Err(GraphError::NotSaturated(g.vertex_name(v).to_string()));
    }
    Ok(g.restrict_to_complement(h))
}
