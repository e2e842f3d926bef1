mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use tc_graphs::complex::{enumerate_ordered, enumerate_unordered};
use tc_graphs::graph::{
    choose_spanning_tree, find_s_graph_tree, max_vertex_disjoint_cycles, parse_graph, subdivide_for_n, GraphFile,
};
use tc_graphs::morse::{build_gradient, morse_boundary, morse_homology};
use tc_graphs::tc::{tc_report, Status, TcOptions};
use tc_graphs::Error;

use report::Record;

#[derive(Parser)]
#[command(name = "tc-graphs", version, about = "Configuration spaces of graphs: homology and topological complexity bounds")]
struct Cli {
    /// Print timings to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex, edge, essential-vertex and cycle counts of a graph.
    Stats {
        file: PathBuf,
        /// Search nodes allowed when packing vertex-disjoint cycles.
        #[arg(long, default_value_t = 1_000_000)]
        cycle_budget: u64,
    },
    /// Cell counts and Betti numbers of the configuration space.
    Homology {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Use the ordered configuration space.
        #[arg(long)]
        ordered: bool,
    },
    /// Bounds on the topological complexity of the unordered configuration space.
    Tc {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Monomial evaluations allowed in the generic cup-length search.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Search nodes allowed when packing vertex-disjoint cycles.
        #[arg(long, default_value_t = 1_000_000)]
        cycle_budget: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &Path) -> anyhow::Result<GraphFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("{}", path.display()))
}

fn stats(file: &Path, cycle_budget: u64) -> anyhow::Result<(Record, bool)> {
    let gf = load(file)?;
    let g = &gf.graph;
    let mut r = Record::new("stats");
    r.comment(format!("file={}", file.display()));
    r.comment(format!("cycle_budget={cycle_budget}"));
    let s = g.stats();
    r.set("vertices", g.vertex_count());
    r.set("edges", g.edge_count());
    r.set("essential", s.essential);
    r.set("beta", s.beta);
    r.set("connected", g.is_connected());
    let packing = max_vertex_disjoint_cycles(g, cycle_budget);
    r.set("nu", packing.nu);
    r.set("nu_exact", packing.exact);
    let s_graph = g.is_connected()
        && subdivide_for_n(g, 2)
            .ok()
            .and_then(|sub| find_s_graph_tree(&sub.graph))
            .is_some();
    r.set("s_graph", s_graph);
    Ok((r, packing.exact))
}

fn homology(file: &Path, n: usize, ordered: bool) -> anyhow::Result<(Record, bool)> {
    let gf = load(file)?;
    let mut r = Record::new("homology");
    r.comment(format!("file={}", file.display()));
    r.comment(format!("n={n} ordered={ordered}"));
    r.set("n", n);
    r.set("space", if ordered { "ordered" } else { "unordered" });
    let sub = match subdivide_for_n(&gf.graph, n) {
        Ok(s) => s,
        Err(e @ (Error::Disconnected | Error::ZeroRobots | Error::InsufficientSubdivision { .. })) => {
            let status = if matches!(e, Error::Disconnected) { "not_connected" } else { "degenerate" };
            r.set("status", status);
            r.set("reason", e);
            return Ok((r, false));
        }
        Err(e) => return Err(e.into()),
    };
    let g = &sub.graph;
    r.set("subdivided_vertices", g.vertex_count());
    r.set("subdivided_edges", g.edge_count());
    let x = if ordered { enumerate_ordered(g, n)? } else { enumerate_unordered(g, n)? };
    if x.total_cells() == 0 {
        r.set("status", "degenerate");
        r.set("reason", "empty configuration space");
        return Ok((r, false));
    }
    r.set("status", "ok");
    r.list("cells", &x.counts());
    let cellular = x.cellular_homology();
    if ordered {
        r.list("betti_cellular", &cellular);
        return Ok((r, true));
    }
    let t = choose_spanning_tree(g, gf.root)?;
    let w = build_gradient(&x, &t)?;
    let m = morse_boundary(&x, &w)?;
    let h = morse_homology(&m)?;
    r.set("tree_root", t.root());
    r.list("deleted_edges", t.deleted_edges());
    r.list("critical", &m.critical_counts());
    r.list("betti_morse", &h.betti);
    r.list("betti_cellular", &cellular);
    r.set("agreement", h.betti == cellular);
    r.set("morse_boundaries_zero", m.all_boundaries_zero());
    Ok((r, h.betti == cellular))
}

fn tc(file: &Path, n: usize, options: &TcOptions) -> anyhow::Result<(Record, bool)> {
    let gf = load(file)?;
    let mut r = Record::new("tc");
    r.comment(format!("file={}", file.display()));
    r.comment(format!(
        "n={n} budget={} cycle_budget={}",
        options.zcl_budget, options.cycle_budget
    ));
    let rep = tc_report(&gf.graph, n, options)?;
    r.set("status", rep.status);
    r.set("n", rep.n);
    r.set("essential", rep.essential);
    r.set("beta", rep.beta);
    if rep.status != Status::Ok {
        return Ok((r, false));
    }
    r.set("method", rep.method);
    r.set("K", rep.k);
    r.set("lower", rep.lower);
    r.set("upper_formula", rep.upper_formula);
    r.set("upper_dimension", rep.upper_dimension);
    r.set("upper", rep.upper());
    match rep.exact {
        Some(e) => r.set("exact", e),
        None => r.set("exact", "none"),
    }
    r.set("budget_exhausted", rep.budget_exhausted);
    r.list("betti", &rep.betti);
    r.list("critical", &rep.critical_counts);
    if let Some(w) = &rep.witness {
        for (i, g) in w.generators.iter().enumerate() {
            r.set(format!("generator.{i}"), g);
        }
        r.list("witness.factors", &w.factors);
        r.set("witness.left_degree", w.left_degree);
        r.set("witness.left_basis", w.left_basis);
        r.set("witness.right_basis", w.right_basis);
        for (i, (a, b)) in w.surviving.iter().enumerate() {
            let side = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            r.set(format!("witness.term.{i}"), format!("[{}]x[{}]", side(a), side(b)));
        }
    }
    for (i, line) in rep.trace.iter().enumerate() {
        r.set(format!("trace.{i}"), line);
    }
    Ok((r, !rep.budget_exhausted))
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("TC_GRAPHS_THREADS") {
        let k: usize = v.parse().with_context(|| format!("TC_GRAPHS_THREADS=`{v}` is not a number"))?;
        if k == 0 {
            bail!("TC_GRAPHS_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    let start = Instant::now();
    let (record, ok, out) = match cli.command {
        Command::Stats { file, cycle_budget } => {
            let (r, ok) = stats(&file, cycle_budget)?;
            (r, ok, None)
        }
        Command::Homology { file, n, ordered } => {
            let (r, ok) = homology(&file, n, ordered)?;
            (r, ok, None)
        }
        Command::Tc {
            file,
            n,
            budget,
            cycle_budget,
            out,
        } => {
            let options = TcOptions {
                zcl_budget: budget,
                cycle_budget,
                ..TcOptions::default()
            };
            let (r, ok) = tc(&file, n, &options)?;
            (r, ok, out)
        }
    };
    let text = record.render();
    match out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    if cli.verbose {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
