use super::{EdgeId, Graph, UnionFind, VertexId};
use crate::error::{Error, Result};

/// A rooted spanning tree with the walk order on vertices and the direction
/// system at every vertex.
///
/// The walk starts at the root `∗`, and at each vertex takes the unvisited
/// tree edges in rotation order starting after the edge it arrived by. The
/// order of a vertex is the step at which the walk first reaches it.
#[derive(Clone, Debug)]
pub struct TreeData {
    graph: Graph,
    root: VertexId,
    in_tree: Vec<bool>,
    tree_edges: Vec<EdgeId>,
    deleted_edges: Vec<EdgeId>,
    order: Vec<usize>,
    by_order: Vec<VertexId>,
    parent_edge: Vec<Option<EdgeId>>,
    /// Tree edges at each vertex in direction order, excluding direction 0.
    children: Vec<Vec<EdgeId>>,
    tau: Vec<VertexId>,
    iota: Vec<VertexId>,
    wedge: Vec<VertexId>,
}

impl TreeData {
    /// Builds the tree data for the given spanning tree and root. The root must
    /// be a leaf of the tree (or the only vertex).
    pub fn new(g: &Graph, tree_edges: &[EdgeId], root: VertexId) -> Result<Self> {
        let nv = g.vertex_count();
        if root >= nv {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut in_tree = vec![false; g.edge_count()];
        let mut uf = UnionFind::new(nv);
        for &e in tree_edges {
            if e >= g.edge_count() || in_tree[e] {
                return Err(Error::InvalidTree(format!("bad or repeated tree edge {e}")));
            }
            in_tree[e] = true;
            let [a, b] = g.endpoints(e);
            if !uf.union(a, b) {
                return Err(Error::InvalidTree(format!("tree edge {e} closes a cycle")));
            }
        }
        if tree_edges.len() + 1 != nv {
            return Err(Error::InvalidTree("tree does not span the graph".into()));
        }
        let tree_degree = |v: VertexId| g.rotation(v).iter().filter(|&&e| in_tree[e]).count();
        if nv > 1 && tree_degree(root) != 1 {
            return Err(Error::InvalidTree(format!("root {root} is not a leaf of the tree")));
        }

        let mut order = vec![usize::MAX; nv];
        let mut by_order = Vec::with_capacity(nv);
        let mut parent_edge = vec![None; nv];
        let mut children = vec![Vec::new(); nv];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order[u] = by_order.len();
            by_order.push(u);
            let rot = g.rotation(u);
            let start = match parent_edge[u] {
                Some(p) => rot.iter().position(|&e| e == p).unwrap() + 1,
                None => 0,
            };
            let mut kids = Vec::new();
            for k in 0..rot.len() {
                let e = rot[(start + k) % rot.len()];
                if in_tree[e] && Some(e) != parent_edge[u] {
                    kids.push(e);
                }
            }
            for &e in kids.iter().rev() {
                let w = g.other_end(e, u);
                parent_edge[w] = Some(e);
                stack.push(w);
            }
            children[u] = kids;
        }

        let mut tau = vec![0; g.edge_count()];
        let mut iota = vec![0; g.edge_count()];
        for (e, &[a, b]) in g.edges().iter().enumerate() {
            let (lo, hi) = if order[a] <= order[b] { (a, b) } else { (b, a) };
            tau[e] = lo;
            iota[e] = hi;
        }

        let mut t = TreeData {
            graph: g.clone(),
            root,
            deleted_edges: (0..g.edge_count()).filter(|&e| !in_tree[e]).collect(),
            tree_edges: {
                let mut v = tree_edges.to_vec();
                v.sort_unstable();
                v
            },
            in_tree,
            order,
            by_order,
            parent_edge,
            children,
            tau,
            iota,
            wedge: Vec::new(),
        };
        t.wedge = (0..g.edge_count())
            .map(|e| t.meet(t.tau[e], t.iota[e]))
            .collect();
        Ok(t)
    }

    /// The order-maximal common vertex of the tree geodesics from `a` and `b` to the root.
    fn meet(&self, mut a: VertexId, mut b: VertexId) -> VertexId {
        while a != b {
            if self.order[a] > self.order[b] {
                a = self.parent(a).unwrap();
            } else {
                b = self.parent(b).unwrap();
            }
        }
        a
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.tree_edges
    }

    pub fn deleted_edges(&self) -> &[EdgeId] {
        &self.deleted_edges
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.in_tree[e]
    }

    pub fn is_deleted(&self, e: EdgeId) -> bool {
        !self.in_tree[e]
    }

    /// Position of `v` in the walk order; the root has order 0.
    pub fn order(&self, v: VertexId) -> usize {
        self.order[v]
    }

    pub fn vertex_at(&self, rank: usize) -> VertexId {
        self.by_order[rank]
    }

    pub fn vertices_in_order(&self) -> &[VertexId] {
        &self.by_order
    }

    pub fn tau(&self, e: EdgeId) -> VertexId {
        self.tau[e]
    }

    pub fn iota(&self, e: EdgeId) -> VertexId {
        self.iota[e]
    }

    /// `∧e`; equal to `τ(e)` for tree edges.
    pub fn wedge(&self, e: EdgeId) -> VertexId {
        self.wedge[e]
    }

    pub fn tree_degree(&self, v: VertexId) -> usize {
        self.children[v].len() + usize::from(self.parent_edge[v].is_some())
    }

    /// `e^0(v)`, the tree edge towards the root.
    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    /// `v^0(v)`.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent_edge[v].map(|e| self.tau[e])
    }

    /// `e^i(u)`. The root has no direction 0; its single edge is direction 1.
    pub fn edge_in_direction(&self, u: VertexId, i: usize) -> Result<EdgeId> {
        let found = if i == 0 {
            self.parent_edge[u]
        } else {
            self.children[u].get(i - 1).copied()
        };
        found.ok_or(Error::DirectionOutOfRange {
            vertex: u,
            direction: i,
        })
    }

    /// `v^i(u)`: `ι(e^i(u))` for `i > 0` and `τ(e^0(u))` for `i = 0`.
    pub fn vertex_in_direction(&self, u: VertexId, i: usize) -> Result<VertexId> {
        let e = self.edge_in_direction(u, i)?;
        Ok(if i == 0 { self.tau[e] } else { self.iota[e] })
    }

    /// Direction of tree edge `e` at its endpoint `v`.
    pub fn direction_of(&self, v: VertexId, e: EdgeId) -> Option<usize> {
        if self.parent_edge[v] == Some(e) {
            return Some(0);
        }
        self.children[v].iter().position(|&c| c == e).map(|i| i + 1)
    }

    /// Whether `x` lies on the tree geodesic from `v` to the root.
    pub fn is_ancestor(&self, x: VertexId, mut v: VertexId) -> bool {
        loop {
            if v == x {
                return true;
            }
            match self.parent(v) {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Vertices whose order lies in `[order(a), order(b)]`.
    pub fn interval(&self, a: VertexId, b: VertexId) -> std::ops::RangeInclusive<usize> {
        self.order[a]..=self.order[b]
    }

    /// True when every deleted edge has both endpoints of degree 2 in the graph.
    pub fn is_essential_tree(&self) -> bool {
        self.deleted_edges.iter().all(|&e| {
            let [a, b] = self.graph.endpoints(e);
            self.graph.degree(a) == 2 && self.graph.degree(b) == 2
        })
    }
}

/// Kruskal over ascending edge ids, with the edges at `root_hint` considered
/// last so that the hint ends up a leaf where possible. The root is the hint,
/// or the lowest-index leaf of the tree.
pub fn choose_spanning_tree(g: &Graph, root_hint: Option<VertexId>) -> Result<TreeData> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut edges: Vec<EdgeId> = (0..g.edge_count()).collect();
    if let Some(h) = root_hint {
        if h >= g.vertex_count() {
            return Err(Error::InvalidTree(format!("root hint {h} out of range")));
        }
        edges.sort_by_key(|&e| g.endpoints(e).contains(&h));
    }
    let mut uf = UnionFind::new(g.vertex_count());
    let mut tree = Vec::new();
    for e in edges {
        let [a, b] = g.endpoints(e);
        if uf.union(a, b) {
            tree.push(e);
        }
    }
    let root = match root_hint {
        Some(h) => h,
        None => lowest_leaf(g, &tree).ok_or(Error::NoRoot)?,
    };
    TreeData::new(g, &tree, root)
}

pub(crate) fn lowest_leaf(g: &Graph, tree: &[EdgeId]) -> Option<VertexId> {
    if g.vertex_count() == 1 {
        return Some(0);
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for &e in tree {
        let [a, b] = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    (0..g.vertex_count()).find(|&v| deg[v] == 1)
}

/// Full tables `e^i(u)` and `v^i(u)`, indexed by vertex then direction. The
/// root's row starts at direction 1.
pub fn direction_tables(t: &TreeData) -> (Vec<Vec<EdgeId>>, Vec<Vec<VertexId>>) {
    let nv = t.graph().vertex_count();
    let mut e_table = Vec::with_capacity(nv);
    let mut v_table = Vec::with_capacity(nv);
    for u in 0..nv {
        let first = usize::from(t.parent_edge(u).is_none());
        let count = t.tree_degree(u);
        let es: Vec<EdgeId> = (first..first + count)
            .map(|i| t.edge_in_direction(u, i).unwrap())
            .collect();
        let vs = (first..first + count)
            .map(|i| t.vertex_in_direction(u, i).unwrap())
            .collect();
        e_table.push(es);
        v_table.push(vs);
    }
    (e_table, v_table)
}
