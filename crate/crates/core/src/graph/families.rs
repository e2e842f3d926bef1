//! Standard graphs used by the test corpus, the benchmarks and the CLI examples.
//! None of these are subdivided; run [`subdivide_for_n`](super::subdivide_for_n)
//! before building configuration spaces.

use super::Graph;

fn build(vertex_count: usize, edges: Vec<[usize; 2]>) -> Graph {
    Graph::new(vertex_count, edges).expect("family graphs are well formed")
}

/// Path with `k` vertices `0 - 1 - ... - k-1`.
pub fn path(k: usize) -> Graph {
    build(k, (1..k).map(|i| [i - 1, i]).collect())
}

/// Star with `branches` arms of `len` edges each; the centre is vertex 0.
/// `star(3, 1)` is the letter Y.
pub fn star(branches: usize, len: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..branches {
        let mut prev = 0;
        for _ in 0..len {
            edges.push([prev, next]);
            prev = next;
            next += 1;
        }
    }
    build(next, edges)
}

pub fn cycle(k: usize) -> Graph {
    build(k, (0..k).map(|i| [i, (i + 1) % k]).collect())
}

pub fn complete(m: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            edges.push([i, j]);
        }
    }
    build(m, edges)
}

/// Two vertices joined by `k` parallel edges.
pub fn banana(k: usize) -> Graph {
    build(2, vec![[0, 1]; k])
}

/// One vertex carrying `k` loops.
pub fn wedge_of_circles(k: usize) -> Graph {
    build(1, vec![[0, 0]; k])
}

/// `count` triangles in a row, consecutive triangles joined by one edge.
pub fn triangle_chain(count: usize) -> Graph {
    let mut edges = Vec::new();
    for t in 0..count {
        let b = 3 * t;
        edges.extend([[b, b + 1], [b + 1, b + 2], [b + 2, b]]);
        if t + 1 < count {
            edges.push([b + 2, b + 3]);
        }
    }
    build(3 * count, edges)
}

/// Essential vertices `0..m` on a path, each carrying one loop and enough
/// pendant edges that it has degree 5. With the loop's edge at the vertex
/// deleted this leaves tree degree 4.
pub fn looped_chain(m: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = m;
    for v in 0..m {
        edges.push([v, v]);
        let links = usize::from(v > 0) + usize::from(v + 1 < m);
        for _ in 0..3 - links {
            edges.push([v, next]);
            next += 1;
        }
        if v + 1 < m {
            edges.push([v, v + 1]);
        }
    }
    build(next, edges)
}

/// Two essential vertices of degree `deg` joined by an edge, all other
/// neighbours leaves.
pub fn double_star(deg: usize) -> Graph {
    let mut edges = vec![[0, 1]];
    let mut next = 2;
    for c in 0..2 {
        for _ in 0..deg - 1 {
            edges.push([c, next]);
            next += 1;
        }
    }
    build(next, edges)
}

/// A ten-vertex graph whose default spanning tree and rotation produce the
/// walk order equal to the vertex ids: `0 - 1 - 2`, vertex 2 branches to 3
/// (which carries leaves 4, 5) and to 6 (which carries 7 and the path 8 - 9).
/// Two non-tree edges, `4-5` and `7-9`, close a triangle and a square.
pub fn ordering_example() -> Graph {
    build(
        10,
        vec![
            [0, 1],
            [1, 2],
            [2, 3],
            [3, 4],
            [3, 5],
            [2, 6],
            [6, 7],
            [6, 8],
            [8, 9],
            [4, 5],
            [7, 9],
        ],
    )
}

/// Graph with three triangles hanging off a central path, plus a chord that
/// joins two of them; three vertex-disjoint cycles exist.
pub fn three_cycle_example() -> Graph {
    build(
        11,
        vec![
            [0, 1],
            [1, 2],
            [0, 3],
            [3, 4],
            [4, 5],
            [5, 3],
            [1, 6],
            [6, 7],
            [7, 8],
            [8, 6],
            [2, 9],
            [9, 10],
            [10, 2],
            [5, 7],
        ],
    )
}
