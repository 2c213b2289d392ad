use std::fs;
use std::io::{self, Read};
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lpa_core::classify::{
    graded_naimark_with_bound, necessary_conditions, socular_chain_with_bound,
};
use lpa_core::grading::graded_socle;
use lpa_core::graph::{classify_vertices, Graph};
use lpa_core::io::{parse_corpus_spec, parse_graph_auto, to_json, to_text};
use lpa_core::module::sink_module_report;
use lpa_core::report;
use lpa_core::selfcheck::{run_selfcheck, SelfCheckConfig};
use lpa_core::term::{Leavitt, SpecialEdgeChoice};

/// Graded structure of Leavitt path algebras of finite graphs.
///
/// Graphs are read from FILE (text or JSON format), from `--corpus`, or from
/// standard input. Exit status: 0 analysis completed, 1 input error,
/// 2 internal invariant violation.
#[derive(Parser, Debug)]
#[command(name = "lpa", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Path-length bound for infinite index samples and term rewriting.
    #[arg(long, global = true, value_name = "N", default_value_t = 20,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_path_len: u64,

    /// File of `<vertex> <edge>` lines choosing the edge eliminated by CK2.
    #[arg(long, global = true, value_name = "FILE")]
    special_edges: Option<PathBuf>,

    /// Use a built-in graph, e.g. `G1`, `Gn:4`, `staircase(3)`.
    #[arg(long, global = true, value_name = "NAME[:PARAM]")]
    corpus: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded Naimark test with the necessary graph conditions.
    Naimark { file: Option<PathBuf> },
    /// The socular chain and the number of graded-simple classes.
    Chain { file: Option<PathBuf> },
    /// Graded matrix blocks of the graded socle.
    Socle { file: Option<PathBuf> },
    /// Per-vertex classification table.
    Classify { file: Option<PathBuf> },
    /// Normal form of an expression such as `e1 e1^* + 1/2*c`.
    Nf { expr: String, file: Option<PathBuf> },
    /// Sink module N_w: relations and graded simplicity.
    Module { sink: String, file: Option<PathBuf> },
    /// Print a built-in graph (text format, JSON with --json).
    Corpus { name: String },
    /// Run the property suites.
    Selfcheck {
        #[arg(long, default_value_t = SelfCheckConfig::default().seed)]
        seed: u64,
        /// Smaller case counts.
        #[arg(long)]
        quick: bool,
    },
}

enum Failure {
    Input(String),
    Invariant(String),
}

type Outcome = Result<String, Failure>;

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn load_graph(cli: &Cli, file: Option<&PathBuf>) -> Result<Graph, Failure> {
    match (&cli.corpus, file) {
        (Some(_), Some(_)) => Err(Failure::Input(
            "give either FILE or --corpus, not both".into(),
        )),
        (Some(spec), None) => parse_corpus_spec(spec)
            .and_then(|s| s.build())
            .map_err(input("--corpus")),
        (None, Some(path)) if path.as_os_str() != "-" => {
            let label = path.display().to_string();
            let text = fs::read_to_string(path).map_err(input(&label))?;
            parse_graph_auto(&text).map_err(|e| Failure::Input(format!("{label}:{e}")))
        }
        (None, _) => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(input("<stdin>"))?;
            parse_graph_auto(&text).map_err(|e| Failure::Input(format!("<stdin>:{e}")))
        }
    }
}

fn to_json_string(v: &serde_json::Value) -> Outcome {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Invariant(format!("serialization failed: {e}")))
}

fn run(cli: &Cli) -> Outcome {
    let bound = cli.max_path_len as usize;
    match &cli.command {
        Command::Naimark { file } => {
            let g = load_graph(cli, file.as_ref())?;
            let verdict = graded_naimark_with_bound(&g, bound).map_err(input(g.name()))?;
            let necessary = necessary_conditions(&g);
            if necessary.bruteforce_agrees == Some(false) {
                return Err(Failure::Invariant(
                    "closure test and subset enumeration disagree".into(),
                ));
            }
            if cli.json {
                to_json_string(&json!({ "naimark": verdict, "necessary": necessary }))
            } else {
                Ok(report::naimark_text(&verdict, &necessary))
            }
        }
        Command::Chain { file } => {
            let g = load_graph(cli, file.as_ref())?;
            let chain = socular_chain_with_bound(&g, bound);
            if cli.json {
                to_json_string(&json!({ "chain": chain }))
            } else {
                Ok(report::chain_text(&chain))
            }
        }
        Command::Socle { file } => {
            let g = load_graph(cli, file.as_ref())?;
            let blocks = graded_socle(&g, bound);
            if cli.json {
                to_json_string(&json!({ "socle": blocks }))
            } else {
                Ok(report::socle_text(&blocks))
            }
        }
        Command::Classify { file } => {
            let g = load_graph(cli, file.as_ref())?;
            if cli.json {
                let rows: Vec<_> = classify_vertices(&g)
                    .into_iter()
                    .map(|(v, p)| json!({ "vertex": g.vertex_name(v), "profile": p }))
                    .collect();
                to_json_string(&json!({ "vertices": rows }))
            } else {
                Ok(report::classify_text(&g))
            }
        }
        Command::Nf { expr, file } => {
            let g = load_graph(cli, file.as_ref())?;
            let mut ctx = Leavitt::new(&g).with_max_path_len(bound);
            if let Some(path) = &cli.special_edges {
                let label = path.display().to_string();
                let text = fs::read_to_string(path).map_err(input(&label))?;
                let choice = SpecialEdgeChoice::parse(&g, &text).map_err(input(&label))?;
                ctx = ctx.with_special_edges(choice);
            }
            let value = ctx.parse(expr).map_err(input("expression"))?;
            if !ctx.is_normal(&value) {
                return Err(Failure::Invariant(
                    "normal form still contains a CK2 redex".into(),
                ));
            }
            let printed = ctx.format(&value);
            if cli.json {
                to_json_string(&json!({
                    "input": expr,
                    "normal_form": printed,
                    "terms": value.len(),
                    "degrees": value.degrees(),
                }))
            } else {
                Ok(printed + "\n")
            }
        }
        Command::Module { sink, file } => {
            let g = load_graph(cli, file.as_ref())?;
            let w = g.require_vertex(sink).map_err(input("module"))?;
            let r = sink_module_report(&g, w).map_err(input("module"))?;
            if !r.relations.passed() {
                return Err(Failure::Invariant(format!(
                    "N_{sink} violates the defining relations"
                )));
            }
            if cli.json {
                to_json_string(&json!(r))
            } else {
                Ok(report::module_text(&r))
            }
        }
        Command::Corpus { name } => {
            let g = parse_corpus_spec(name)
                .and_then(|s| s.build())
                .map_err(input("corpus"))?;
            Ok(if cli.json { to_json(&g) } else { to_text(&g) })
        }
        Command::Selfcheck { seed, quick } => {
            let mut cfg = SelfCheckConfig {
                seed: *seed,
                ..SelfCheckConfig::default()
            };
            if *quick {
                cfg.closure_graphs = 20;
                cfg.sets_per_graph = 10;
                cfg.triples_per_graph = 20;
                cfg.naimark_graphs = 20;
            }
            let suites = run_selfcheck(&cfg);
            let out = if cli.json {
                to_json_string(&json!({ "seed": seed, "suites": suites }))?
            } else {
                let mut text = String::new();
                for s in &suites {
                    let status = if s.passed() { "PASS" } else { "FAIL" };
                    text += &format!("{status} {}: {} cases, {} ms\n", s.name, s.cases, s.millis);
                    if let Some(v) = &s.first_violation {
                        text += &format!("  first violation: {v}\n");
                    }
                }
                text
            };
            if suites.iter().all(|s| s.passed()) {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Invariant("property suites failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Invariant("internal error".into())));
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}
