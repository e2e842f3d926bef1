//! Graphs with a rotation system, and everything that is decided on the graph
//! alone: subdivision, spanning trees and their vertex order, vertex-disjoint
//! cycles and the S-graph test.

mod cycles;
mod disjoint;
pub mod families;
mod format;
mod sgraph;
mod subdivide;
mod tree;

pub use cycles::{max_vertex_disjoint_cycles, Cycle, CyclePacking};
pub use disjoint::{build_vertex_disjoint_tree, DisjointCycleTree};
pub use format::{parse_graph, write_graph, GraphFile};
pub use sgraph::{find_s_graph_tree, is_s_graph, normalize_simple_directions, simple_components, SGraphReport};
pub use subdivide::{is_sufficiently_subdivided, subdivide_for_n, Subdivision};
pub use tree::{choose_spanning_tree, direction_tables, TreeData};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected multigraph together with a rotation system: for every vertex
/// the cyclic order of its incident edge ends. A loop contributes two ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<EdgeId>>,
}

/// Essential-vertex count and first Betti number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub essential: usize,
    pub beta: usize,
}

impl Graph {
    /// Builds a graph whose rotation at each vertex is the input order of its edges.
    pub fn new(vertex_count: usize, edges: Vec<[VertexId; 2]>) -> Result<Self> {
        let mut rotation = vec![Vec::new(); vertex_count];
        for (e, &[u, v]) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} has endpoint outside 0..{vertex_count}"
                )));
            }
            rotation[u].push(e);
            rotation[v].push(e);
        }
        Ok(Graph {
            vertex_count,
            edges,
            rotation,
        })
    }

    /// Replaces the rotation at the listed vertices. Each list must contain
    /// exactly the incident edge ends of its vertex.
    pub fn with_rotations<I>(mut self, rotations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, Vec<EdgeId>)>,
    {
        for (v, order) in rotations {
            if v >= self.vertex_count {
                return Err(Error::InvalidRotation {
                    vertex: v,
                    message: "vertex out of range".into(),
                });
            }
            let mut expected = self.rotation[v].clone();
            let mut given = order.clone();
            expected.sort_unstable();
            given.sort_unstable();
            if expected != given {
                return Err(Error::InvalidRotation {
                    vertex: v,
                    message: format!("expected the edge ends {expected:?}, got {order:?}"),
                });
            }
            self.rotation[v] = order;
        }
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges[e][0] == self.edges[e][1]
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a loop).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn is_essential(&self, v: VertexId) -> bool {
        self.degree(v) >= 3
    }

    pub fn essential_vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count).filter(|&v| self.is_essential(v)).collect()
    }

    /// Number of parallel edges between `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.rotation[u]
            .iter()
            .filter(|&&e| {
                let [a, b] = self.edges[e];
                (a == u && b == v) || (a == v && b == u)
            })
            .count()
            / if u == v { 2 } else { 1 }
    }

    /// Edge joining `u` and `v`, lowest id first.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.rotation[u]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .min()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&[u, v]| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for &[u, v] in &self.edges {
            uf.union(u, v);
        }
        (0..self.vertex_count).filter(|&v| uf.find(v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    pub fn first_betti(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    pub fn stats(&self) -> GraphStats {
        graph_stats(self)
    }
}

/// `m(Γ)` and `β₁(Γ)`.
pub fn graph_stats(g: &Graph) -> GraphStats {
    GraphStats {
        essential: (0..g.vertex_count()).filter(|&v| g.is_essential(v)).count(),
        beta: g.first_betti(),
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller representative so labels are canonical
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
