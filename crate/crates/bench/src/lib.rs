//! Benchmark workloads shared by the criterion benches.

use tc_graphs::graph::{families, Graph};

/// `(name, graph, n)` for the pipeline benches, smallest first.
pub fn workloads() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("y_n3", families::star(3, 1), 3),
        ("k4_n3", families::complete(4), 3),
        ("two_triangles_n3", families::triangle_chain(2), 3),
        ("four_triangles_n2", families::triangle_chain(4), 2),
        ("double_star4_n4", families::double_star(4), 4),
        ("k6_n2", families::complete(6), 2),
    ]
}

/// Inputs for the bounds benches: `(name, graph, n)`.
pub fn tc_workloads() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("y_n2", families::star(3, 1), 2),
        ("two_triangles_n1", families::triangle_chain(2), 1),
        ("looped_chain2_n4", families::looped_chain(2), 4),
        ("four_triangles_n2", families::triangle_chain(4), 2),
    ]
}
