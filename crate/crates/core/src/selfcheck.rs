//! Seeded property suites over the corpus and random graphs.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{count_graded_simple_classes, graded_naimark, ClassCount};
use crate::grading::{graded_socle, iso_witness_check};
use crate::graph::{
    hereditary_saturated_closure, hsat_subsets_bruteforce, EdgeId, Graph, VertexId,
};
use crate::io::{builtin_corpus, corpus_sweep};
use crate::module::{build_sink_module, check_module_relations, graded_simplicity_oracle};
use crate::random::{random_acyclic_single_sink, random_graph, random_vertex_set, MonomialSampler};
use crate::term::{Leavitt, LpaElement, SpecialEdgeChoice, TermError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheckConfig {
    pub seed: u64,
    /// Random graphs for the closure suite.
    pub closure_graphs: usize,
    pub sets_per_graph: usize,
    /// Random triples (and reduction orders) per corpus graph.
    pub triples_per_graph: usize,
    /// Random graphs for the Naimark consistency suite.
    pub naimark_graphs: usize,
}

impl Default for SelfCheckConfig {
    fn default() -> Self {
        SelfCheckConfig {
            seed: 0x1e_a717,
            closure_graphs: 200,
            sets_per_graph: 50,
            triples_per_graph: 500,
            naimark_graphs: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
    pub millis: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    violations: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }
}

fn run_suite(name: &'static str, body: impl FnOnce(&mut Tally)) -> SuiteResult {
    let start = Instant::now();
    let mut tally = Tally::default();
    body(&mut tally);
    SuiteResult {
        name,
        cases: tally.cases,
        violations: tally.violations,
        first_violation: tally.first,
        millis: start.elapsed().as_millis(),
    }
}

/// Closure against the least hereditary saturated superset found by
/// enumerating every subset.
pub fn closure_suite(cfg: &SelfCheckConfig) -> SuiteResult {
    run_suite("closure", |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.closure_graphs {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.1..0.5);
            let g = random_graph(&mut rng, n, p);
            let all = hsat_subsets_bruteforce(&g).expect("at most eight vertices");
            for _ in 0..cfg.sets_per_graph {
                let x = random_vertex_set(&mut rng, &g);
                let cl = hereditary_saturated_closure(&g, &x).expect("valid set");
                let least = all.iter().find(|s| x.is_subset(s)).expect("E^0 contains x");
                let minimal = all
                    .iter()
                    .filter(|s| x.is_subset(s))
                    .all(|s| least.is_subset(s));
                t.check(minimal && cl == *least, || {
                    format!(
                        "{}: cl({:?}) = {:?}, expected {:?}",
                        g.name(),
                        x.names(&g),
                        cl.names(&g),
                        least.names(&g)
                    )
                });
            }
        }
    })
}

fn nf(ctx: &Leavitt<'_>, a: &LpaElement) -> Result<LpaElement, TermError> {
    ctx.normal_form(a)
}

/// Each defining relation, as an identity between normal forms, on every
/// pair of generators of every corpus graph.
pub fn relations_suite() -> SuiteResult {
    run_suite("relations", |t| {
        for g in corpus_sweep() {
            relation_identities(&g, t)
                .unwrap_or_else(|e| t.check(false, || format!("{}: {e}", g.name())));
        }
    })
}

fn relation_identities(g: &Graph, t: &mut Tally) -> Result<(), TermError> {
    let ctx = Leavitt::new(g);
    let mut expect =
        |lhs: LpaElement, rhs: LpaElement, what: &dyn Fn() -> String| -> Result<(), TermError> {
            let l = nf(&ctx, &lhs)?;
            let r = nf(&ctx, &rhs)?;
            t.check(l == r, || {
                format!(
                    "{}: {}: {} != {}",
                    g.name(),
                    what(),
                    ctx.format(&l),
                    ctx.format(&r)
                )
            });
            Ok(())
        };
    let zero = ctx.zero();
    let pick = |cond: bool, a: LpaElement| if cond { a } else { zero.clone() };
    let vs: Vec<VertexId> = g.vertex_ids().collect();
    let es: Vec<EdgeId> = g.edge_ids().collect();
    for &v in &vs {
        for &w in &vs {
            expect(
                ctx.multiply_raw(&ctx.vertex(v), &ctx.vertex(w))?,
                pick(v == w, ctx.vertex(v)),
                &|| format!("{} {}", g.vertex_name(v), g.vertex_name(w)),
            )?;
        }
        for &e in &es {
            let (s, r) = (g.source(e), g.range(e));
            expect(
                ctx.multiply_raw(&ctx.vertex(v), &ctx.edge(e))?,
                pick(v == s, ctx.edge(e)),
                &|| format!("{} {}", g.vertex_name(v), g.edge_name(e)),
            )?;
            expect(
                ctx.multiply_raw(&ctx.edge(e), &ctx.vertex(v))?,
                pick(v == r, ctx.edge(e)),
                &|| format!("{} {}", g.edge_name(e), g.vertex_name(v)),
            )?;
            expect(
                ctx.multiply_raw(&ctx.vertex(v), &ctx.ghost(e))?,
                pick(v == r, ctx.ghost(e)),
                &|| format!("{} {}^*", g.vertex_name(v), g.edge_name(e)),
            )?;
            expect(
                ctx.multiply_raw(&ctx.ghost(e), &ctx.vertex(v))?,
                pick(v == s, ctx.ghost(e)),
                &|| format!("{}^* {}", g.edge_name(e), g.vertex_name(v)),
            )?;
        }
    }
    for &e in &es {
        for &f in &es {
            expect(
                ctx.multiply_raw(&ctx.ghost(e), &ctx.edge(f))?,
                pick(e == f, ctx.vertex(g.range(e))),
                &|| format!("{}^* {}", g.edge_name(e), g.edge_name(f)),
            )?;
        }
    }
    for &v in vs.iter().filter(|&&v| !g.is_sink(v)) {
        let mut sum = ctx.zero();
        for &e in g.out_edges(v) {
            sum = sum.add(&ctx.multiply_raw(&ctx.edge(e), &ctx.ghost(e))?)?;
        }
        expect(sum, ctx.vertex(v), &|| {
            format!("sum of e e^* at {}", g.vertex_name(v))
        })?;
    }
    Ok(())
}

/// `(ab)c = a(bc)` on random triples of each corpus graph.
pub fn associativity_suite(cfg: &SelfCheckConfig) -> SuiteResult {
    run_suite("associativity", |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xa55);
        for g in corpus_sweep() {
            let ctx = Leavitt::new(&g);
            let sampler = MonomialSampler::new(&g, 2);
            for _ in 0..cfg.triples_per_graph {
                let [a, b, c] = [0, 1, 2].map(|_| sampler.element(&mut rng, &ctx, 2));
                let run = || -> Result<bool, TermError> {
                    let left = ctx.multiply(&ctx.multiply(&a, &b)?, &c)?;
                    let right = ctx.multiply(&a, &ctx.multiply(&b, &c)?)?;
                    Ok(left == right)
                };
                let ok = run();
                t.check(ok == Ok(true), || {
                    format!(
                        "{}: ({})({})({}): {ok:?}",
                        g.name(),
                        ctx.format(&a),
                        ctx.format(&b),
                        ctx.format(&c)
                    )
                });
            }
        }
    })
}

/// Normal forms are independent of the rewriting order, of normalizing a
/// summand first, and (after renormalizing) of the choice of special edges.
pub fn confluence_suite(cfg: &SelfCheckConfig) -> SuiteResult {
    run_suite("confluence", |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0f);
        for g in corpus_sweep() {
            let ctx = Leavitt::new(&g);
            let alt = Leavitt::new(&g).with_special_edges(last_declared(&g));
            let sampler = MonomialSampler::new(&g, 3);
            for _ in 0..cfg.triples_per_graph {
                let a = sampler.element(&mut rng, &ctx, 3);
                let b = sampler.element(&mut rng, &ctx, 2);
                let run = |rng: &mut ChaCha8Rng| -> Result<bool, TermError> {
                    let raw = ctx.multiply_raw(&a, &b)?.add(&a)?;
                    let reference = ctx.normal_form(&raw)?;
                    let shuffled = ctx.normal_form_with(&raw, |p| rng.gen_range(0..p.len()))?;
                    let partial =
                        ctx.normal_form(&ctx.normal_form(&a)?.add(&ctx.multiply_raw(&a, &b)?)?)?;
                    let crossed = ctx.normal_form(&alt.normal_form(&raw)?)?;
                    Ok(shuffled == reference && partial == reference && crossed == reference)
                };
                let ok = run(&mut rng);
                t.check(ok == Ok(true), || {
                    format!(
                        "{}: {} and {}: {ok:?}",
                        g.name(),
                        ctx.format(&a),
                        ctx.format(&b)
                    )
                });
            }
        }
    })
}

fn last_declared(g: &Graph) -> SpecialEdgeChoice {
    let pairs: Vec<(VertexId, EdgeId)> = g
        .vertex_ids()
        .filter_map(|v| g.out_edges(v).last().map(|&e| (v, e)))
        .collect();
    SpecialEdgeChoice::with_overrides(g, &pairs).expect("edges leave their own source")
}

/// Largest sink module the module suite builds.
pub const MODULE_SUITE_MAX_DIM: usize = 20;

fn is_acyclic(g: &Graph) -> bool {
    crate::graph::simple_cycles(g).is_empty()
}

/// Sink modules of every acyclic corpus graph: relations hold and the
/// module is graded-simple.
pub fn module_suite() -> SuiteResult {
    run_suite("modules", |t| {
        let mut graphs = corpus_sweep();
        graphs.extend((1..=16).map(|k| builtin_corpus("line", Some(k)).expect("in range")));
        graphs.extend((4..=16).map(|k| builtin_corpus("staircase", Some(k)).expect("in range")));
        for g in graphs.iter().filter(|g| is_acyclic(g)) {
            for w in g.sinks() {
                let Ok(n) = build_sink_module(g, w) else {
                    t.check(false, || {
                        format!("{}: N_{} failed to build", g.name(), g.vertex_name(w))
                    });
                    continue;
                };
                if n.rep.dim() > MODULE_SUITE_MAX_DIM {
                    continue;
                }
                let relations = check_module_relations(g, &n.rep).map(|r| r.passed());
                let simple = graded_simplicity_oracle(&n.rep);
                let graded = n.rep.grading_violation().is_none();
                t.check(
                    relations == Ok(true) && simple == Ok(true) && graded,
                    || {
                        format!(
                            "{}: N_{}: relations {relations:?}, simple {simple:?}, graded {graded}",
                            g.name(),
                            g.vertex_name(w)
                        )
                    },
                );
            }
        }
    })
}

/// `graded_naimark` holds exactly when the class count is one.
pub fn naimark_suite(cfg: &SelfCheckConfig) -> SuiteResult {
    run_suite("naimark", |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x4a1);
        let mut graphs = corpus_sweep();
        for _ in 0..cfg.naimark_graphs {
            let n = rng.gen_range(1..=6);
            let p = rng.gen_range(0.1..0.45);
            graphs.push(random_graph(&mut rng, n, p));
        }
        for g in &graphs {
            let holds = graded_naimark(g).map(|v| v.holds).unwrap_or(false);
            let count = count_graded_simple_classes(g);
            t.check(holds == (count == ClassCount::Count(1)), || {
                format!(
                    "{}: naimark {holds}, {count}",
                    crate::io::to_text(g).replace('\n', "; ")
                )
            });
        }
    })
}

/// The isomorphism witness on G1, the loop and random acyclic graphs with a
/// single sink.
pub fn witness_suite(cfg: &SelfCheckConfig) -> SuiteResult {
    run_suite("witness", |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x3e4);
        let mut graphs = vec![
            builtin_corpus("G1", None).expect("fixed entry"),
            builtin_corpus("loop", None).expect("fixed entry"),
        ];
        for _ in 0..3 {
            let n = rng.gen_range(2..=8);
            graphs.push(random_acyclic_single_sink(&mut rng, n));
        }
        for g in &graphs {
            let blocks = graded_socle(g, 20);
            let block = blocks
                .first()
                .expect("each of these graphs has a socle block");
            let report = iso_witness_check(g, block, 6);
            t.check(report.as_ref().map(|r| r.passed()) == Ok(true), || {
                format!("{}: {report:?}", g.name())
            });
        }
    })
}

/// Runs every suite.
pub fn run_selfcheck(cfg: &SelfCheckConfig) -> Vec<SuiteResult> {
    vec![
        closure_suite(cfg),
        relations_suite(),
        associativity_suite(cfg),
        confluence_suite(cfg),
        module_suite(),
        naimark_suite(cfg),
        witness_suite(cfg),
    ]
}
