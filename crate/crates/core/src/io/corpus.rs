//! Built-in example graphs.
//!
//! Edge identifiers are `src_dst_k`, with `k` counting parallel edges from 0.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus graph `{0}` (known: {known})", known = corpus_names().join(", "))]
    UnknownName(String),
    #[error("corpus graph `{name}` takes an integer parameter in {min}..={max}")]
    MissingParam {
        name: &'static str,
        min: usize,
        max: usize,
    },
    #[error("corpus graph `{name}`: parameter {value} outside {min}..={max}")]
    ParamOutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("corpus graph `{0}` takes no parameter")]
    UnexpectedParam(&'static str),
    #[error("malformed corpus spec `{0}`; expected NAME, NAME:PARAM or NAME(PARAM)")]
    Malformed(String),
}

/// A corpus name with its optional integer parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub name: String,
    pub param: Option<usize>,
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(p) => write!(f, "{}:{}", self.name, p),
            None => f.write_str(&self.name),
        }
    }
}

impl CorpusSpec {
    pub fn build(&self) -> Result<Graph, CorpusError> {
        builtin_corpus(&self.name, self.param)
    }
}

struct Entry {
    name: &'static str,
    aliases: &'static [&'static str],
    range: Option<(usize, usize)>,
}

const ENTRIES: &[Entry] = &[
    Entry {
        name: "loop",
        aliases: &[],
        range: None,
    },
    Entry {
        name: "line",
        aliases: &[],
        range: Some((1, 64)),
    },
    Entry {
        name: "rose",
        aliases: &[],
        range: Some((1, 16)),
    },
    Entry {
        name: "G1",
        aliases: &["G_1"],
        range: None,
    },
    Entry {
        name: "G2",
        aliases: &["G_2"],
        range: None,
    },
    Entry {
        name: "G3",
        aliases: &["G_3"],
        range: None,
    },
    Entry {
        name: "Gn",
        aliases: &["G_n"],
        range: Some((1, 32)),
    },
    Entry {
        name: "staircase",
        aliases: &[],
        range: Some((1, 16)),
    },
    Entry {
        name: "tworow_comet",
        aliases: &[],
        range: Some((1, 16)),
    },
    Entry {
        name: "twosinks",
        aliases: &[],
        range: None,
    },
    Entry {
        name: "figure8",
        aliases: &["figure_eight"],
        range: None,
    },
];

/// Names accepted by [`builtin_corpus`].
pub fn corpus_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Small parameters of each family used when sweeping the corpus.
const SWEEP: &[(&str, &[usize])] = &[
    ("line", &[1, 2, 3, 4]),
    ("rose", &[1, 2, 3]),
    ("Gn", &[1, 2, 3, 4]),
    ("staircase", &[1, 2, 3]),
    ("tworow_comet", &[1, 2]),
];

/// Every fixed corpus graph and the small members of each family.
pub fn corpus_sweep() -> Vec<Graph> {
    ENTRIES
        .iter()
        .flat_map(|e| match e.range {
            None => vec![builtin_corpus(e.name, None).expect("fixed entries build")],
            Some(_) => SWEEP
                .iter()
                .find(|(n, _)| *n == e.name)
                .map(|(_, ps)| ps.to_vec())
                .unwrap_or_default()
                .into_iter()
                .map(|p| builtin_corpus(e.name, Some(p)).expect("sweep parameters are in range"))
                .collect(),
        })
        .collect()
}

/// Parses `NAME`, `NAME:PARAM` or `NAME(PARAM)`.
pub fn parse_corpus_spec(spec: &str) -> Result<CorpusSpec, CorpusError> {
    let spec = spec.trim();
    let malformed = || CorpusError::Malformed(spec.to_string());
    let (name, param) = if let Some((n, p)) = spec.split_once(':') {
        (n, Some(p))
    } else if let Some(open) = spec.find('(') {
        let inner = spec[open + 1..].strip_suffix(')').ok_or_else(malformed)?;
        (&spec[..open], Some(inner))
    } else {
        (spec, None)
    };
    if name.is_empty() {
        return Err(malformed());
    }
    let param = match param {
        Some(p) => Some(p.trim().parse::<usize>().map_err(|_| malformed())?),
        None => None,
    };
    Ok(CorpusSpec {
        name: name.trim().to_string(),
        param,
    })
}

/// Builds the named corpus graph.
pub fn builtin_corpus(name: &str, param: Option<usize>) -> Result<Graph, CorpusError> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name == name || e.aliases.contains(&name))
        .ok_or_else(|| CorpusError::UnknownName(name.to_string()))?;
    let k = match (entry.range, param) {
        (None, None) => 0,
        (None, Some(_)) => return Err(CorpusError::UnexpectedParam(entry.name)),
        (Some((min, max)), None) => {
            return Err(CorpusError::MissingParam {
                name: entry.name,
                min,
                max,
            })
        }
        (Some((min, max)), Some(value)) => {
            if value < min || value > max {
                return Err(CorpusError::ParamOutOfRange {
                    name: entry.name,
                    value,
                    min,
                    max,
                });
            }
            value
        }
    };
    let mut b = Builder::default();
    match entry.name {
        "loop" => rose(&mut b, 1),
        "line" => line(&mut b, k),
        "rose" => rose(&mut b, k),
        "G1" => gn(&mut b, 1),
        "G2" => gn(&mut b, 2),
        "G3" => g3(&mut b),
        "Gn" => gn(&mut b, k),
        "staircase" => staircase(&mut b, k),
        "tworow_comet" => tworow_comet(&mut b, k),
        "twosinks" => {
            b.vertex("v1");
            b.vertex("v2");
        }
        "figure8" => {
            b.vertex("v1");
            b.vertex("v2");
            b.edge("v1", "v1");
            b.edge("v1", "v2");
            b.edge("v2", "v1");
        }
        _ => unreachable!("every entry has a constructor"),
    }
    let graph_name = match entry.range {
        Some(_) => format!("{}{}", entry.name, k),
        None => entry.name.to_string(),
    };
    Ok(b.finish(&graph_name))
}

#[derive(Default)]
struct Builder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
}

impl Builder {
    fn vertex(&mut self, name: impl Into<String>) {
        self.vertices.push(name.into());
    }

    fn edge(&mut self, src: &str, dst: &str) {
        let prefix = format!("{src}_{dst}_");
        let k = self
            .edges
            .iter()
            .filter(|(id, _, _)| id.starts_with(&prefix))
            .count();
        self.edges
            .push((format!("{prefix}{k}"), src.to_string(), dst.to_string()));
    }

    fn finish(self, name: &str) -> Graph {
        Graph::new(name, self.vertices, self.edges).expect("corpus graphs are well formed")
    }
}

fn line(b: &mut Builder, k: usize) {
    for i in 1..=k {
        b.vertex(format!("v{i}"));
    }
    for i in 1..k {
        b.edge(&format!("v{i}"), &format!("v{}", i + 1));
    }
}

fn rose(b: &mut Builder, k: usize) {
    b.vertex("v");
    for _ in 0..k {
        b.edge("v", "v");
    }
}

fn v(i: usize, j: usize) -> String {
    format!("v{i}{j}")
}

fn grid_vertices(b: &mut Builder, rows: usize) {
    for i in 1..=rows {
        for j in 1..=3 {
            b.vertex(v(i, j));
        }
    }
}

fn first_row(b: &mut Builder) {
    b.edge(&v(1, 1), &v(1, 2));
    b.edge(&v(1, 2), &v(1, 3));
    b.edge(&v(1, 3), &v(1, 3));
}

/// Row `i ≥ 2`: each vertex feeds `target`, the row runs left to right, and
/// the last vertex carries a loop.
fn upper_row(b: &mut Builder, i: usize, last_target: &str) {
    let down = v(i - 1, 1);
    b.edge(&v(i, 1), &down);
    b.edge(&v(i, 1), &v(i, 2));
    b.edge(&v(i, 2), &down);
    b.edge(&v(i, 2), &v(i, 3));
    b.edge(&v(i, 3), last_target);
    b.edge(&v(i, 3), &v(i, 3));
}

fn gn(b: &mut Builder, n: usize) {
    grid_vertices(b, n);
    first_row(b);
    for i in 2..=n {
        upper_row(b, i, &v(i - 1, 1));
    }
}

/// As drawn: the third row's looped vertex points back to `v11`.
fn g3(b: &mut Builder) {
    grid_vertices(b, 3);
    first_row(b);
    upper_row(b, 2, &v(1, 1));
    upper_row(b, 3, &v(1, 1));
}

/// Bottom line `v -> b1 -> ... -> bk` ending in the sink `bk`; column `j`
/// is a three-step diagonal `dj_1 -> dj_2 -> dj_3 -> bj`.
fn staircase(b: &mut Builder, k: usize) {
    b.vertex("v");
    for j in 1..=k {
        b.vertex(format!("b{j}"));
    }
    for j in 1..=k {
        for level in 1..=3 {
            b.vertex(format!("d{j}_{level}"));
        }
    }
    let mut prev = "v".to_string();
    for j in 1..=k {
        let next = format!("b{j}");
        b.edge(&prev, &next);
        prev = next;
    }
    for j in 1..=k {
        b.edge(&format!("d{j}_1"), &format!("d{j}_2"));
        b.edge(&format!("d{j}_2"), &format!("d{j}_3"));
        b.edge(&format!("d{j}_3"), &format!("b{j}"));
    }
}

/// The 4-cycle `v -> c1 -> c2 -> c3 -> v` fed by two rows: `t1 -> ... -> tk
/// -> v` and `u1 -> ... -> uk -> c3`.
fn tworow_comet(b: &mut Builder, k: usize) {
    for name in ["v", "c1", "c2", "c3"] {
        b.vertex(name);
    }
    for j in 1..=k {
        b.vertex(format!("t{j}"));
    }
    for j in 1..=k {
        b.vertex(format!("u{j}"));
    }
    b.edge("v", "c1");
    b.edge("c1", "c2");
    b.edge("c2", "c3");
    b.edge("c3", "v");
    for (row, target) in [("t", "v"), ("u", "c3")] {
        for j in 1..k {
            b.edge(&format!("{row}{j}"), &format!("{row}{}", j + 1));
        }
        b.edge(&format!("{row}{k}"), target);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{hereditary_saturated_closure, is_isomorphic, quotient_graph};

    #[test]
    fn sizes() {
        let g1 = builtin_corpus("G1", None).unwrap();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (3, 3));
        let g2 = builtin_corpus("G2", None).unwrap();
        assert_eq!((g2.vertex_count(), g2.edge_count()), (6, 9));
        let g3 = builtin_corpus("G3", None).unwrap();
        assert_eq!((g3.vertex_count(), g3.edge_count()), (9, 15));
        assert!(g3.edge_by_name("v33_v11_0").is_some());
        assert_eq!(builtin_corpus("Gn", Some(1)).unwrap().edges(), g1.edges());
        assert_eq!(builtin_corpus("Gn", Some(2)).unwrap().edges(), g2.edges());
    }

    #[test]
    fn gn_quotient_by_first_row() {
        for n in 2..=6 {
            let g = builtin_corpus("Gn", Some(n)).unwrap();
            let x = g.vertex_set_by_name(&["v13"]).unwrap();
            let h = hereditary_saturated_closure(&g, &x).unwrap();
            assert_eq!(h.names(&g), vec!["v11", "v12", "v13"]);
            let q = quotient_graph(&g, &h).unwrap();
            let prev = builtin_corpus("Gn", Some(n - 1)).unwrap();
            assert!(is_isomorphic(&q, &prev), "n = {n}");
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            parse_corpus_spec("Gn:4").unwrap(),
            CorpusSpec {
                name: "Gn".into(),
                param: Some(4)
            }
        );
        assert_eq!(parse_corpus_spec("line(3)").unwrap().param, Some(3));
        assert_eq!(parse_corpus_spec("G1").unwrap().param, None);
        assert!(parse_corpus_spec("line(x)").is_err());
        assert!(matches!(
            builtin_corpus("nope", None),
            Err(CorpusError::UnknownName(_))
        ));
        assert!(matches!(
            builtin_corpus("line", None),
            Err(CorpusError::MissingParam { .. })
        ));
        assert!(matches!(
            builtin_corpus("G1", Some(2)),
            Err(CorpusError::UnexpectedParam(_))
        ));
        assert!(matches!(
            builtin_corpus("rose", Some(0)),
            Err(CorpusError::ParamOutOfRange { .. })
        ));
    }

    #[test]
    fn truncations() {
        let s = builtin_corpus("staircase", Some(3)).unwrap();
        assert_eq!(s.vertex_count(), 13);
        assert_eq!(s.sinks().len(), 1);
        let t = builtin_corpus("tworow_comet", Some(2)).unwrap();
        assert_eq!(t.vertex_count(), 8);
        assert_eq!(t.out_degree(t.vertex("c3").unwrap()), 1);
    }
}
