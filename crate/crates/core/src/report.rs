//! Plain-text renderings of the analyses.

use std::fmt::Write;

use crate::classify::{ConditionCheck, NaimarkVerdict, NecessaryConditions, SocularChainReport};
use crate::grading::MatrixBlock;
use crate::graph::{classify_vertices, Graph, VertexKind};
use crate::module::ModuleReport;

fn yes_no(c: &ConditionCheck) -> String {
    match &c.witness {
        None if c.holds => "yes".into(),
        None => "no".into(),
        Some(w) => format!("no ({w})"),
    }
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

pub fn naimark_text(verdict: &NaimarkVerdict, necessary: &NecessaryConditions) -> String {
    let mut out = format!("{verdict}\n");
    if let Some(w) = &verdict.witness {
        let stages: Vec<String> = w.closure_trace.iter().map(|s| braces(s)).collect();
        writeln!(out, "closure: {}", stages.join(" -> ")).unwrap();
    }
    out.push_str("necessary conditions:\n");
    writeln!(
        out,
        "  row-finite: {}",
        if necessary.row_finite { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(
        out,
        "  downward directed: {}",
        yes_no(&necessary.downward_directed)
    )
    .unwrap();
    let cross = match necessary.bruteforce_agrees {
        Some(true) => "; subset enumeration agrees",
        Some(false) => "; SUBSET ENUMERATION DISAGREES",
        None => "",
    };
    writeln!(
        out,
        "  only trivial hereditary saturated subsets: {}{cross}",
        yes_no(&necessary.trivial_hereditary_saturated)
    )
    .unwrap();
    writeln!(
        out,
        "  cycles pairwise disjoint: {}",
        yes_no(&necessary.cycles_disjoint)
    )
    .unwrap();
    out
}

pub fn blocks_text(blocks: &[MatrixBlock], indent: &str) -> String {
    let mut out = String::new();
    for b in blocks {
        writeln!(out, "{indent}{b}  [anchor {}]", b.anchor.vertex()).unwrap();
    }
    out
}

pub fn chain_text(report: &SocularChainReport) -> String {
    let mut out = String::new();
    for (i, layer) in report.layers.iter().enumerate() {
        writeln!(
            out,
            "layer {}: vertices {}; generators {}",
            i + 1,
            braces(&layer.vertices),
            braces(&layer.generators)
        )
        .unwrap();
        out.push_str(&blocks_text(&layer.blocks, "  "));
    }
    writeln!(out, "tau: {}", report.tau).unwrap();
    writeln!(out, "{}", report.verdict).unwrap();
    out
}

pub fn socle_text(blocks: &[MatrixBlock]) -> String {
    if blocks.is_empty() {
        return "graded socle: 0\n".into();
    }
    format!(
        "graded socle: {} block(s)\n{}",
        blocks.len(),
        blocks_text(blocks, "  ")
    )
}

/// One row per vertex: kind, bifurcation, line point, Laurent, on an
/// exit-free cycle.
pub fn classify_text(g: &Graph) -> String {
    let profiles = classify_vertices(g);
    let width = g
        .vertex_names()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("vertex".len());
    let mut out = format!(
        "{:width$}  kind     bifurcation  line_point  laurent  no_exit_cycle\n",
        "vertex"
    );
    let flag = |b: bool| if b { "yes" } else { "no" };
    for (v, p) in &profiles {
        let kind = match p.kind {
            VertexKind::Sink => "sink",
            VertexKind::Regular => "regular",
        };
        writeln!(
            out,
            "{:width$}  {:7}  {:11}  {:10}  {:7}  {}",
            g.vertex_name(*v),
            kind,
            flag(p.is_bifurcation),
            flag(p.is_line_point),
            flag(p.is_laurent),
            flag(p.on_no_exit_cycle)
        )
        .unwrap();
    }
    out
}

pub fn module_text(r: &ModuleReport) -> String {
    let degrees: Vec<String> = r.degrees.iter().map(i64::to_string).collect();
    let relations = match r.relations.violations.first() {
        None => format!("pass ({} identities)", r.relations.identities_checked),
        Some(v) => format!("{} violated: {}", v.relation, v.detail),
    };
    let simple = match r.graded_simple {
        Some(true) => "yes",
        Some(false) => "no",
        None => "not decided (dimension above the oracle limit)",
    };
    format!(
        "module N_{}: dim {}\ndegrees: ({})\nrelations: {relations}\ngraded-simple: {simple}\n",
        r.sink,
        r.dim,
        degrees.join(",")
    )
}
