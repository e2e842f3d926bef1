//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

mod common;

use std::time::Instant;

use common::structural::{self, Check};
use common::Setup;
use tc_graphs::cohomology::ClassIndex;
use tc_graphs::complex::Cell;
use tc_graphs::graph::{families, max_vertex_disjoint_cycles, Graph};
use tc_graphs::morse::morse_homology;
use tc_graphs::tc::{tc_report, Method, TCReport, TcOptions};

type Outcome = Result<String, String>;

fn oracle_equivalence() -> Outcome {
    let cases: Vec<(&str, Graph, usize)> = vec![
        ("path", families::path(4), 1),
        ("path", families::path(4), 2),
        ("path", families::path(4), 3),
        ("Y", families::star(3, 1), 2),
        ("Y", families::star(3, 1), 3),
        ("ordering", families::ordering_example(), 1),
        ("ordering", families::ordering_example(), 2),
        ("banana3", families::banana(3), 1),
        ("banana3", families::banana(3), 2),
        ("two_triangles", families::triangle_chain(2), 1),
        ("two_triangles", families::triangle_chain(2), 2),
        ("two_triangles", families::triangle_chain(2), 3),
        ("four_triangles", families::triangle_chain(4), 1),
        ("four_triangles", families::triangle_chain(4), 2),
        ("K4", families::complete(4), 2),
        ("cycle", families::cycle(4), 3),
    ];
    for (name, g, n) in &cases {
        let s = common::setup(name, g, *n);
        let cellular = s.x.cellular_homology();
        let morse = morse_homology(&s.m).map_err(|e| e.to_string())?.betti;
        if morse != cellular {
            return Err(format!("{}: Morse {morse:?} vs cellular {cellular:?}", s.name));
        }
    }
    Ok(format!("{} (graph, n) pairs agree", cases.len()))
}

fn one_robot() -> Outcome {
    let graphs = common::graphs();
    for (name, g) in &graphs {
        let s = common::setup(name, g, 1);
        let beta = s.x.graph().first_betti();
        let betti = morse_homology(&s.m).map_err(|e| e.to_string())?.betti;
        if betti != vec![1, beta] {
            return Err(format!("{}: homology {betti:?}, expected [1, {beta}]", s.name));
        }
        let root = s.x.index_of(&Cell::from_parts(&[s.tree.root()], &[])).unwrap();
        if s.m.critical(0) != [root] {
            return Err(format!("{}: critical 0-cells {:?}", s.name, s.m.critical(0)));
        }
        let mut deleted: Vec<usize> = s
            .tree
            .deleted_edges()
            .iter()
            .map(|&e| s.x.index_of(&Cell::from_parts(&[], &[e])).unwrap())
            .collect();
        deleted.sort_unstable();
        let mut critical = s.m.critical(1).to_vec();
        critical.sort_unstable();
        if critical != deleted {
            return Err(format!("{}: critical 1-cells are not the deleted edges", s.name));
        }
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn tree_boundaries() -> Outcome {
    let mut count = 0;
    for (name, g) in common::trees() {
        for n in 1..=4 {
            let s = common::setup(name, &g, n);
            if !s.m.all_boundaries_zero() {
                return Err(format!("{}: nonzero Morse boundary", s.name));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (tree, n) pairs with every Morse boundary zero"))
}

fn expect_exact(name: &str, g: &Graph, n: usize, exact: usize, method: Method) -> Result<TCReport, String> {
    let r = tc_report(g, n, &TcOptions::default()).map_err(|e| format!("{name}: {e}"))?;
    if r.exact != Some(exact) || r.method != method {
        return Err(format!(
            "{name} n={n}: method {} lower {} upper {} exact {:?}; trace {:?}",
            r.method,
            r.lower,
            r.upper(),
            r.exact,
            r.trace
        ));
    }
    Ok(r)
}

fn has_product(r: &TCReport, len: usize) -> bool {
    r.witness.as_ref().is_some_and(|w| w.factors.len() == len && !w.surviving.is_empty())
}

fn s_graphs() -> Outcome {
    let mut out = Vec::new();
    for m in 1..=2 {
        let name = format!("looped_chain({m})");
        let r = expect_exact(&name, &families::looped_chain(m), 2 * m, 2 * m + 1, Method::SGraph)?;
        if !has_product(&r, 2 * m) {
            return Err(format!("{name}: no product certificate"));
        }
        out.push(format!("m={m}: TC={}", 2 * m + 1));
    }
    Ok(out.join(", "))
}

fn disjoint_cycles() -> Outcome {
    let mut out = Vec::new();
    for (count, n) in [(2, 1), (4, 2)] {
        let name = format!("{count} triangles");
        let r = expect_exact(&name, &families::triangle_chain(count), n, 2 * n + 1, Method::VertexDisjoint)?;
        if !has_product(&r, 2 * n) {
            return Err(format!("{name}: no product certificate"));
        }
        out.push(format!("{name} n={n}: TC={}", 2 * n + 1));
    }
    Ok(out.join(", "))
}

fn complete_graph() -> Outcome {
    expect_exact("K6", &families::complete(6), 1, 3, Method::VertexDisjoint).map(|_| "K6 n=1: TC=3".into())
}

fn tree_theorem() -> Outcome {
    let r = tc_report(&families::double_star(4), 4, &TcOptions::default()).map_err(|e| e.to_string())?;
    if r.exact != Some(5) {
        return Err(format!("lower {} upper {} exact {:?}", r.lower, r.upper(), r.exact));
    }
    Ok(format!("double star n=4: TC=5 via {}", r.method))
}

fn honest_interval() -> Outcome {
    let r = tc_report(&families::star(3, 1), 2, &TcOptions::default()).map_err(|e| e.to_string())?;
    if (r.lower, r.upper()) != (2, 3) || r.exact.is_some() {
        return Err(format!("lower {} upper {} exact {:?}", r.lower, r.upper(), r.exact));
    }
    Ok("Y n=2: [2,3], not exact".into())
}

fn structural_suite() -> Outcome {
    let mut total = 0;
    let mut run = |c: Check| -> Result<(), String> {
        total += c?;
        Ok(())
    };
    let corpus: Vec<Setup> = common::small_corpus();
    for s in &corpus {
        run(structural::trichotomy(s))?;
        run(structural::intrinsic_classification(s))?;
        run(structural::boundary_squared(s))?;
        run(structural::morse_boundary_squared(s))?;
        run(structural::flow_of_critical(s))?;
        run(structural::euler(s))?;
        run(structural::ordered_counts(s))?;
        let idx = ClassIndex::new(&s.x);
        run(structural::cocycles(s, &idx))?;
        run(structural::partial_order(s, &idx))?;
        run(structural::upper_bound_properties(s, &idx))?;
    }
    for s in &common::essential_corpus() {
        run(structural::trichotomy(s))?;
        run(structural::intrinsic_classification(s))?;
        run(structural::essential_tree_identities(s))?;
    }
    for (name, g) in common::trees() {
        for n in 1..=3 {
            run(structural::tree_identities(&common::setup(name, &g, n)))?;
        }
    }
    Ok(format!("{total} facts checked"))
}

fn nu_complete() -> Outcome {
    for m in 3..=9 {
        let p = max_vertex_disjoint_cycles(&families::complete(m), 10_000_000);
        if p.nu != m / 3 || !p.exact {
            return Err(format!("K{m}: nu {} (exact {})", p.nu, p.exact));
        }
    }
    Ok("K3..K9".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle-equivalence", oracle_equivalence),
        ("one-robot-sanity", one_robot),
        ("tree-boundaries", tree_boundaries),
        ("s-graph-exact", s_graphs),
        ("disjoint-cycles-exact", disjoint_cycles),
        ("complete-graph-k6", complete_graph),
        ("tree-no-degree-three", tree_theorem),
        ("honest-interval", honest_interval),
        ("structural-suite", structural_suite),
        ("nu-complete-graphs", nu_complete),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [tolerance: exact] {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [tolerance: exact] {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
