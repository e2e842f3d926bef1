#![allow(dead_code)]

pub mod structural;

use tc_graphs::complex::{enumerate_unordered, Complex};
use tc_graphs::graph::{
    build_vertex_disjoint_tree, choose_spanning_tree, families, max_vertex_disjoint_cycles, subdivide_for_n, Graph,
    TreeData,
};
use tc_graphs::morse::{build_gradient, morse_boundary, GradientField, MorseComplexData};

pub struct Setup {
    pub name: String,
    pub n: usize,
    pub tree: TreeData,
    pub x: Complex,
    pub w: GradientField,
    pub m: MorseComplexData,
}

pub fn setup(name: &str, g: &Graph, n: usize) -> Setup {
    let h = subdivide_for_n(g, n).unwrap().graph;
    let tree = choose_spanning_tree(&h, None).unwrap();
    setup_with_tree(name, tree, n)
}

pub fn setup_with_tree(name: &str, tree: TreeData, n: usize) -> Setup {
    let x = enumerate_unordered(tree.graph(), n).unwrap();
    let w = build_gradient(&x, &tree).unwrap();
    let m = morse_boundary(&x, &w).unwrap();
    Setup {
        name: format!("{name} n={n}"),
        n,
        tree,
        x,
        w,
        m,
    }
}

pub fn graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("path", families::path(4)),
        ("Y", families::star(3, 1)),
        ("star4", families::star(4, 1)),
        ("cycle", families::cycle(4)),
        ("K4", families::complete(4)),
        ("banana3", families::banana(3)),
        ("wedge2", families::wedge_of_circles(2)),
        ("ordering", families::ordering_example()),
        ("two_triangles", families::triangle_chain(2)),
        ("double_star3", families::double_star(3)),
        ("looped1", families::looped_chain(1)),
    ]
}

pub fn trees() -> Vec<(&'static str, Graph)> {
    vec![
        ("path", families::path(5)),
        ("Y", families::star(3, 1)),
        ("star4", families::star(4, 1)),
        ("double_star3", families::double_star(3)),
        ("double_star4", families::double_star(4)),
    ]
}

/// Small (graph, n) pairs for exhaustive checks.
pub fn small_corpus() -> Vec<Setup> {
    let mut out = Vec::new();
    for (name, g) in graphs() {
        for n in 1..=2 {
            out.push(setup(name, &g, n));
        }
    }
    out.push(setup("Y", &families::star(3, 1), 3));
    out.push(setup("K4", &families::complete(4), 3));
    out.push(setup("two_triangles", &families::triangle_chain(2), 3));
    out
}

/// Setups on essential spanning trees adapted to vertex-disjoint cycles.
pub fn essential_corpus() -> Vec<Setup> {
    let mut out = Vec::new();
    for (name, g, ns) in [
        ("two_triangles", families::triangle_chain(2), 1..=3),
        ("ordering", families::ordering_example(), 1..=2),
        ("K4", families::complete(4), 1..=2),
    ] {
        for n in ns {
            let h = subdivide_for_n(&g, n.max(2)).unwrap().graph;
            let cycles = max_vertex_disjoint_cycles(&h, 100_000).cycles;
            let d = build_vertex_disjoint_tree(&h, &cycles).unwrap();
            out.push(setup_with_tree(&format!("{name} (essential)"), d.tree, n));
        }
    }
    out
}
