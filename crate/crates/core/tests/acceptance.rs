//! Acceptance criteria: one PASS/FAIL line each, with pinned time limits.
//!
//! Run with `cargo test -p lpa-core --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lpa_core::classify::{
    count_graded_simple_classes, graded_naimark, socular_chain, ClassCount, NaimarkVerdict,
};
use lpa_core::grading::{graded_socle, iso_witness_check, Base, IndexSet};
use lpa_core::graph::{simple_cycles, Graph, VertexId};
use lpa_core::io::{builtin_corpus, corpus_sweep};
use lpa_core::module::{build_sink_module, check_module_relations, graded_simplicity_oracle};
use lpa_core::random::{random_acyclic_single_sink, random_graph};
use lpa_core::selfcheck::{
    associativity_suite, confluence_suite, relations_suite, SelfCheckConfig,
};
use lpa_core::term::Leavitt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

/// Criteria expected to stay red, with the reason printed next to them.
const KNOWN_RED: &[(u32, &str)] = &[(
    4,
    "the drawn G3 sends v33 to v11, so v33 spans an exit-free loop already in layer 2; \
     the row-by-row pattern Gn(3) (v33 -> v21) has the three layers",
)];

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn check(cond: bool, detail: String) -> Outcome {
    Outcome { ok: cond, detail }
}

fn corpus(name: &str, p: Option<usize>) -> Graph {
    builtin_corpus(name, p).expect("corpus entry")
}

/// Isomorphism by trying every vertex bijection and comparing edge
/// multiplicities.
fn isomorphic_bruteforce(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() || n > 8 {
        return false;
    }
    let count = |g: &Graph| -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for e in g.edge_ids() {
            *m.entry((g.source(e).0, g.range(e).0)).or_insert(0) += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if ca
            .iter()
            .all(|(&(s, d), &k)| cb.get(&(perm[s], perm[d])) == Some(&k))
        {
            return true;
        }
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return false;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| perm[j] > perm[i])
            .expect("a larger element exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Least hereditary saturated superset of `x` (bitmask), by enumeration.
fn closure_by_enumeration(g: &Graph, x: u32) -> u32 {
    let n = g.vertex_count();
    let full = (1u32 << n) - 1;
    let edges: Vec<(usize, usize)> = g
        .edge_ids()
        .map(|e| (g.source(e).0, g.range(e).0))
        .collect();
    let hereditary = |m: u32| {
        edges
            .iter()
            .all(|&(s, d)| m & (1 << s) == 0 || m & (1 << d) != 0)
    };
    let saturated = |m: u32| {
        (0..n).all(|v| {
            m & (1 << v) != 0
                || !edges.iter().any(|&(s, _)| s == v)
                || edges.iter().any(|&(s, d)| s == v && m & (1 << d) == 0)
        })
    };
    (0..=full)
        .filter(|&m| m & x == x && hereditary(m) && saturated(m))
        .fold(full, |acc, m| acc & m)
}

fn form_of(v: &NaimarkVerdict) -> Option<(Base, Vec<i64>)> {
    v.form
        .as_ref()
        .map(|f| (f.base, f.index.gradings().to_vec()))
}

fn c1() -> Outcome {
    let v = graded_naimark(&corpus("G1", None)).expect("nonempty");
    let expected = (Base::Laurent { period: 1 }, vec![0, 1, 2]);
    check(v.holds && form_of(&v) == Some(expected), format!("{v}"))
}

fn c2() -> Outcome {
    let g = corpus("loop", None);
    let ctx = Leavitt::new(&g);
    let c = g.edge_by_name("v_v_0").expect("loop edge");
    let v = ctx.vertex(VertexId(0));
    let cc_star = ctx.multiply(&ctx.edge(c), &ctx.ghost(c)).expect("bounded");
    let c_star_c = ctx.multiply(&ctx.ghost(c), &ctx.edge(c)).expect("bounded");
    let verdict = graded_naimark(&g).expect("nonempty");
    let form = verdict.form.as_ref().map(|f| f.to_string());
    check(
        cc_star == v
            && c_star_c == v
            && verdict.holds
            && form.as_deref() == Some("M_1(K[x,x^-1])(0)"),
        format!(
            "c c^* = {}, c^* c = {}; {verdict}",
            ctx.format(&cc_star),
            ctx.format(&c_star_c)
        ),
    )
}

fn c3() -> Outcome {
    let r = socular_chain(&corpus("G2", None));
    let g1 = corpus("G1", None);
    let first = r
        .layers
        .first()
        .map(|l| l.vertices.clone())
        .unwrap_or_default();
    let iso = r
        .layers
        .get(1)
        .is_some_and(|l| isomorphic_bruteforce(&l.graph, &g1));
    check(
        r.tau == 2 && first == ["v11", "v12", "v13"] && iso && r.verdict == ClassCount::Count(2),
        format!(
            "layers {}, layer 1 {{{}}}, layer-2 graph isomorphic to G1: {iso}, {}",
            r.tau,
            first.join(","),
            r.verdict
        ),
    )
}

fn c4() -> Outcome {
    let r = socular_chain(&corpus("G3", None));
    let companion = socular_chain(&corpus("Gn", Some(3)));
    check(
        r.tau == 3 && r.verdict == ClassCount::Count(3),
        format!(
            "drawn G3: layers {}, {}; Gn(3): layers {}, {}",
            r.tau, r.verdict, companion.tau, companion.verdict
        ),
    )
}

fn c5() -> Outcome {
    let counts: Vec<ClassCount> = (1..=10)
        .map(|n| count_graded_simple_classes(&corpus("Gn", Some(n))))
        .collect();
    let ok = counts
        .iter()
        .enumerate()
        .all(|(i, c)| *c == ClassCount::Count(i + 1));
    let shown: Vec<String> = counts
        .iter()
        .map(|c| match c {
            ClassCount::Count(n) => n.to_string(),
            ClassCount::Uncountable { .. } => "unc".into(),
        })
        .collect();
    check(ok, format!("counts for n = 1..10: {}", shown.join(",")))
}

fn c6() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, p) in [("rose", Some(2)), ("figure8", None)] {
        let r = socular_chain(&corpus(name, p));
        let at_first = r.tau == 0
            && matches!(&r.verdict, ClassCount::Uncountable { reason } if reason.starts_with("layer 1:"));
        ok &= at_first;
        parts.push(format!("{name}: {}", r.verdict));
    }
    check(ok, parts.join("; "))
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut graphs = vec![corpus("G1", None), corpus("loop", None)];
    for _ in 0..3 {
        let n = rng.gen_range(3..=8);
        graphs.push(random_acyclic_single_sink(&mut rng, n));
    }
    let mut summary = Vec::new();
    for g in &graphs {
        let blocks = graded_socle(g, 20);
        let Some(block) = blocks.first() else {
            return fail(format!("{}: no socle block", g.name()));
        };
        match iso_witness_check(g, block, 6) {
            Ok(r) if r.passed() => summary.push(format!(
                "{}[{}v]:{}",
                g.name(),
                g.vertex_count(),
                r.monomials
            )),
            Ok(r) => {
                return fail(format!(
                    "{}: {} violations, first {:?}",
                    g.name(),
                    r.violation_count,
                    r.violations.first()
                ))
            }
            Err(e) => return fail(format!("{}: {e}", g.name())),
        }
    }
    pass(format!("generators checked: {}", summary.join(" ")))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let (mut cases, mut mismatches) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.08..0.5);
        let g = random_graph(&mut rng, n, p);
        for _ in 0..50 {
            let x: u32 = rng.gen_range(0..(1u32 << n));
            let set = g.vertex_set((0..n).filter(|i| x & (1 << i) != 0).map(VertexId));
            let cl = lpa_core::graph::hereditary_saturated_closure(&g, &set).expect("valid set");
            let mask = cl.iter().fold(0u32, |m, v| m | (1 << v.0));
            cases += 1;
            if mask != closure_by_enumeration(&g, x) {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0 && cases >= 10_000,
        format!("{cases} closures, {mismatches} mismatches"),
    )
}

fn c9() -> Outcome {
    let cfg = SelfCheckConfig {
        seed: SEED,
        triples_per_graph: 500,
        ..SelfCheckConfig::default()
    };
    let suites = [
        relations_suite(),
        associativity_suite(&cfg),
        confluence_suite(&cfg),
    ];
    let graphs = corpus_sweep().len();
    let ok = suites.iter().all(|s| s.passed())
        && suites[1].cases >= 500 * graphs
        && suites[2].cases >= 500 * graphs;
    let parts: Vec<String> = suites
        .iter()
        .map(|s| match &s.first_violation {
            None => format!("{} {} cases", s.name, s.cases),
            Some(v) => format!("{} {} violations ({v})", s.name, s.violations),
        })
        .collect();
    check(ok, format!("{} graphs; {}", graphs, parts.join(", ")))
}

fn c10() -> Outcome {
    let mut graphs = corpus_sweep();
    graphs.extend((5..=16).map(|k| corpus("line", Some(k))));
    graphs.push(corpus("staircase", Some(4)));
    let mut dims = Vec::new();
    for g in graphs.iter().filter(|g| simple_cycles(g).is_empty()) {
        for w in g.sinks() {
            let n = match build_sink_module(g, w) {
                Ok(n) => n,
                Err(e) => return fail(format!("{}: {e}", g.name())),
            };
            if n.rep.dim() > 20 {
                continue;
            }
            let relations = check_module_relations(g, &n.rep).map(|r| r.passed());
            let simple = graded_simplicity_oracle(&n.rep);
            if relations != Ok(true) || simple != Ok(true) {
                return fail(format!(
                    "{} N_{}: relations {relations:?}, simple {simple:?}",
                    g.name(),
                    g.vertex_name(w)
                ));
            }
            dims.push(n.rep.dim());
        }
    }
    check(
        dims.len() >= 20,
        format!(
            "{} sink modules, dimensions {}..={}",
            dims.len(),
            dims.iter().min().unwrap_or(&0),
            dims.iter().max().unwrap_or(&0)
        ),
    )
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let mut graphs = corpus_sweep();
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.1..0.45);
        graphs.push(random_graph(&mut rng, n, p));
    }
    let mut holding = 0;
    for g in &graphs {
        let holds = graded_naimark(g).expect("nonempty").holds;
        holding += holds as usize;
        if holds != (count_graded_simple_classes(g) == ClassCount::Count(1)) {
            return fail(format!(
                "discrepancy on {}",
                lpa_core::io::to_text(g).replace('\n', "; ")
            ));
        }
    }
    pass(format!(
        "{} graphs, {holding} with the property, 0 discrepancies",
        graphs.len()
    ))
}

fn c12() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for k in 2..=5 {
        let s = graded_naimark(&corpus("staircase", Some(k))).expect("nonempty");
        let t = graded_naimark(&corpus("tworow_comet", Some(k))).expect("nonempty");
        let s_ok = s.holds
            && s.form.as_ref().is_some_and(|f| {
                f.base == Base::Field && matches!(f.index, IndexSet::Finite { .. })
            });
        let t_ok = t.holds
            && t.form
                .as_ref()
                .is_some_and(|f| f.base == Base::Laurent { period: 4 });
        ok &= s_ok && t_ok;
        let show = |v: &NaimarkVerdict| {
            v.form.as_ref().map_or("none".to_string(), |f| {
                format!("M_{}({})", f.size().unwrap_or(0), f.base)
            })
        };
        parts.push(format!("k={k}: {} / {}", show(&s), show(&t)));
    }
    check(ok, parts.join("; "))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        (
            1,
            "G1 graded Naimark form M_3(K[x,x^-1])(0,1,2)",
            Duration::from_secs(1),
            c1,
        ),
        (
            2,
            "single loop: c c^* = c^* c = v, form M_1(K[x,x^-1])(0)",
            Duration::from_secs(1),
            c2,
        ),
        (
            3,
            "G2 chain: two layers, quotient isomorphic to G1, two classes",
            Duration::from_secs(1),
            c3,
        ),
        (
            4,
            "G3 chain: three layers, three classes",
            Duration::from_secs(1),
            c4,
        ),
        (
            5,
            "Gn(n) has n classes for n = 1..10",
            Duration::from_secs(5),
            c5,
        ),
        (
            6,
            "rose-2 and figure-eight are uncountable at layer 1",
            Duration::from_secs(1),
            c6,
        ),
        (
            7,
            "isomorphism witness, zero violations",
            Duration::from_secs(10),
            c7,
        ),
        (
            8,
            "closure equals enumerated least superset",
            Duration::from_secs(30),
            c8,
        ),
        (
            9,
            "relations, associativity and confluence fuzzing",
            Duration::from_secs(60),
            c9,
        ),
        (
            10,
            "sink modules: relations and graded simplicity",
            Duration::from_secs(5),
            c10,
        ),
        (
            11,
            "Naimark holds iff exactly one class",
            Duration::from_secs(30),
            c11,
        ),
        (
            12,
            "staircase field forms, two-row comet period 4, k = 2..5",
            Duration::from_secs(2),
            c12,
        ),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.ok && elapsed <= limit;
        let timing = format!(
            "{:.3} s, limit {} s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        println!(
            "{} {id:>2} {name} ({timing}): {}",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail
        );
        if ok {
            passed += 1;
        } else if let Some((_, why)) = KNOWN_RED.iter().find(|(k, _)| *k == id) {
            println!("   known red: {why}");
        } else {
            unexpected += 1;
        }
    }
    println!("acceptance: {passed}/12 passed, {unexpected} unexpected failure(s)");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
