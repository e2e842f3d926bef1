//! Simple components and the S-graph conditions on a spanning tree.

use super::tree::TreeData;
use super::{EdgeId, Graph, UnionFind, VertexId};
use crate::error::{Error, Result};

/// A component of `Γ - {v}` together with the edges joining it to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexComponent {
    pub vertices: Vec<VertexId>,
    pub edges_at_v: Vec<EdgeId>,
    /// Every cycle in the closure of the component has exactly one essential vertex.
    pub simple: bool,
}

/// Edge sets of the biconnected blocks of the subgraph spanned by the edges
/// with `mask[e]` set. Loops form their own blocks.
pub(crate) fn blocks(g: &Graph, mask: &[bool]) -> Vec<Vec<EdgeId>> {
    struct St<'a> {
        g: &'a Graph,
        mask: &'a [bool],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<EdgeId>,
        out: Vec<Vec<EdgeId>>,
    }
    fn dfs(s: &mut St, u: VertexId, via: Option<EdgeId>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for &e in s.g.rotation(u) {
            if !s.mask[e] || s.g.is_loop(e) || Some(e) == via {
                continue;
            }
            let w = s.g.other_end(e, u);
            if s.disc[w] == 0 {
                s.stack.push(e);
                dfs(s, w, Some(e));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = St {
        g,
        mask,
        disc: vec![0; g.vertex_count()],
        low: vec![0; g.vertex_count()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..g.vertex_count() {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    let mut out = s.out;
    for e in 0..g.edge_count() {
        if mask[e] && g.is_loop(e) {
            out.push(vec![e]);
        }
    }
    out
}

/// Components of `Γ - {v}`. A loop at `v` is a component of its own.
pub fn simple_components(g: &Graph, v: VertexId) -> Vec<VertexComponent> {
    let mut uf = UnionFind::new(g.vertex_count());
    for &[a, b] in g.edges() {
        if a != v && b != v {
            uf.union(a, b);
        }
    }
    let mut comps: Vec<VertexComponent> = Vec::new();
    let mut slot = vec![usize::MAX; g.vertex_count()];
    for u in (0..g.vertex_count()).filter(|&u| u != v) {
        let r = uf.find(u);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(VertexComponent {
                vertices: Vec::new(),
                edges_at_v: Vec::new(),
                simple: true,
            });
        }
        comps[slot[r]].vertices.push(u);
    }
    let mut loops = Vec::new();
    let mut seen_loop = vec![false; g.edge_count()];
    for &e in g.rotation(v) {
        if g.is_loop(e) {
            if !std::mem::replace(&mut seen_loop[e], true) {
                loops.push(e);
            }
        } else {
            let w = g.other_end(e, v);
            comps[slot[uf.find(w)]].edges_at_v.push(e);
        }
    }

    for comp in &mut comps {
        let mut inside = vec![false; g.vertex_count()];
        inside[v] = true;
        for &u in &comp.vertices {
            inside[u] = true;
        }
        let mask: Vec<bool> = (0..g.edge_count())
            .map(|e| {
                let [a, b] = g.endpoints(e);
                inside[a] && inside[b] && !(a == v && b == v)
            })
            .collect();
        comp.simple = blocks(g, &mask).iter().all(|block| {
            let cyclic = block.len() >= 2 || g.is_loop(block[0]);
            if !cyclic {
                return true;
            }
            let mut vs: Vec<VertexId> = block.iter().flat_map(|&e| g.endpoints(e)).collect();
            vs.sort_unstable();
            vs.dedup();
            vs.iter().filter(|&&x| g.is_essential(x)).count() == 1
        });
    }
    for e in loops {
        comps.push(VertexComponent {
            vertices: Vec::new(),
            edges_at_v: vec![e],
            simple: g.is_essential(v),
        });
    }
    comps
}

#[derive(Clone, Debug, Default)]
pub struct SGraphReport {
    pub property1: bool,
    pub property2: bool,
    /// For each essential vertex, the tree edge of a simple component in a
    /// nonzero direction (lowest direction first).
    pub simple_edges: Vec<(VertexId, EdgeId)>,
    pub diagnostics: Vec<String>,
}

impl SGraphReport {
    pub fn holds(&self) -> bool {
        self.property1 && self.property2
    }
}

/// Checks both S-graph conditions for the given tree.
pub fn is_s_graph(t: &TreeData) -> SGraphReport {
    let g = t.graph();
    let mut rep = SGraphReport {
        property1: true,
        property2: true,
        ..Default::default()
    };
    for &e in t.deleted_edges() {
        let [a, b] = g.endpoints(e);
        if !g.is_essential(a) && !g.is_essential(b) {
            rep.property1 = false;
            rep.diagnostics
                .push(format!("deleted edge {e} ({a}-{b}) has no essential endpoint"));
        }
    }
    for v in g.essential_vertices() {
        if t.tree_degree(v) < 4 {
            rep.property1 = false;
            rep.diagnostics.push(format!(
                "essential vertex {v} has tree degree {}",
                t.tree_degree(v)
            ));
        }
        let mut best: Option<(usize, EdgeId)> = None;
        for comp in simple_components(g, v).into_iter().filter(|c| c.simple) {
            let tree_at_v: Vec<EdgeId> = comp
                .edges_at_v
                .iter()
                .copied()
                .filter(|&e| t.is_tree_edge(e))
                .collect();
            if let [e] = tree_at_v[..] {
                let d = t.direction_of(v, e).expect("tree edge at v has a direction");
                let nonzero = d != 0 && v != t.root();
                if nonzero && best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, e));
                }
            }
        }
        match best {
            Some((_, e)) => rep.simple_edges.push((v, e)),
            None => {
                rep.property2 = false;
                rep.diagnostics.push(format!(
                    "essential vertex {v} has no simple component in a nonzero direction"
                ));
            }
        }
    }
    rep
}

/// Rebuilds the tree data with the rotation at each essential vertex changed
/// so that its simple-component edge is direction 1. The tree itself and the
/// root are unchanged.
pub fn normalize_simple_directions(t: &TreeData) -> Result<TreeData> {
    let rep = is_s_graph(t);
    if !rep.holds() {
        return Err(Error::Precondition(format!(
            "not an S-graph tree: {}",
            rep.diagnostics.join("; ")
        )));
    }
    let g = t.graph();
    let mut rotations = Vec::new();
    for &(v, s) in &rep.simple_edges {
        let rot = g.rotation(v);
        let start = match t.parent_edge(v) {
            Some(p) => rot.iter().position(|&e| e == p).unwrap(),
            None => 0,
        };
        let cyclic: Vec<EdgeId> = (0..rot.len()).map(|k| rot[(start + k) % rot.len()]).collect();
        let mut new = vec![cyclic[0]];
        new.push(s);
        new.extend(cyclic[1..].iter().copied().filter(|&e| e != s));
        rotations.push((v, new));
    }
    let h = g.clone().with_rotations(rotations)?;
    let nt = TreeData::new(&h, t.tree_edges(), t.root())?;
    for &(v, s) in &rep.simple_edges {
        if nt.direction_of(v, s) != Some(1) {
            return Err(Error::InvalidRotation {
                vertex: v,
                message: "simple component did not move to direction 1".into(),
            });
        }
    }
    Ok(nt)
}

/// Searches for a spanning tree and root satisfying both S-graph conditions.
///
/// Edges with no essential endpoint must all be tree edges and go in first;
/// the remaining edges are added greedily, favouring essential vertices that
/// are still short of tree degree 4, followed by single-edge swaps that reduce
/// the total shortfall. Every tree leaf is then tried as the root. This is a
/// heuristic: `None` does not prove that no such tree exists.
pub fn find_s_graph_tree(g: &Graph) -> Option<TreeData> {
    if !g.is_connected() || g.essential_vertices().is_empty() {
        return None;
    }
    let ne = g.edge_count();
    let ess: Vec<bool> = (0..g.vertex_count()).map(|v| g.is_essential(v)).collect();
    let mut in_tree = vec![false; ne];
    let mut deg = vec![0usize; g.vertex_count()];
    let mut uf = UnionFind::new(g.vertex_count());
    for e in 0..ne {
        let [a, b] = g.endpoints(e);
        if !ess[a] && !ess[b] {
            if !uf.union(a, b) {
                return None;
            }
            in_tree[e] = true;
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let shortfall = |deg: &[usize], v: VertexId| if ess[v] { 4usize.saturating_sub(deg[v]) } else { 0 };
    loop {
        let best = (0..ne)
            .filter(|&e| !in_tree[e] && !g.is_loop(e))
            .filter(|&e| {
                let [a, b] = g.endpoints(e);
                uf.find(a) != uf.find(b)
            })
            .max_by_key(|&e| {
                let [a, b] = g.endpoints(e);
                (shortfall(&deg, a) + shortfall(&deg, b), std::cmp::Reverse(e))
            });
        let Some(e) = best else { break };
        let [a, b] = g.endpoints(e);
        uf.union(a, b);
        in_tree[e] = true;
        deg[a] += 1;
        deg[b] += 1;
    }

    let total = |deg: &[usize]| (0..g.vertex_count()).map(|v| shortfall(deg, v)).sum::<usize>();
    let mut improved = true;
    while improved && total(&deg) > 0 {
        improved = false;
        'search: for f in 0..ne {
            if in_tree[f] || g.is_loop(f) {
                continue;
            }
            let path = tree_path(g, &in_tree, g.endpoints(f)[0], g.endpoints(f)[1]);
            for h in path {
                let [a, b] = g.endpoints(h);
                if !ess[a] && !ess[b] {
                    continue;
                }
                let mut nd = deg.clone();
                let [x, y] = g.endpoints(f);
                nd[x] += 1;
                nd[y] += 1;
                nd[a] -= 1;
                nd[b] -= 1;
                if total(&nd) < total(&deg) {
                    in_tree[f] = true;
                    in_tree[h] = false;
                    deg = nd;
                    improved = true;
                    break 'search;
                }
            }
        }
    }
    if total(&deg) > 0 {
        return None;
    }
    let tree: Vec<EdgeId> = (0..ne).filter(|&e| in_tree[e]).collect();
    (0..g.vertex_count())
        .filter(|&v| deg[v] == 1)
        .filter_map(|root| TreeData::new(g, &tree, root).ok())
        .find(|t| is_s_graph(t).holds())
}

/// Edges of the tree path between `a` and `b`.
fn tree_path(g: &Graph, in_tree: &[bool], a: VertexId, b: VertexId) -> Vec<EdgeId> {
    let mut via = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[a] = true;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &e in g.rotation(u) {
            if !in_tree[e] {
                continue;
            }
            let w = g.other_end(e, u);
            if !seen[w] {
                seen[w] = true;
                via[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut u = b;
    while let Some(e) = via[u] {
        path.push(e);
        u = g.other_end(e, u);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{families, subdivide_for_n};

    #[test]
    fn loop_component_is_simple() {
        let g = families::looped_chain(1);
        let comps = simple_components(&g, 0);
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.simple));
    }

    #[test]
    fn complete_graph_components_not_simple() {
        let g = families::complete(5);
        let comps = simple_components(&g, 0);
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].simple);
    }

    #[test]
    fn looped_chain_is_s_graph() {
        for m in 1..=2 {
            let g = subdivide_for_n(&families::looped_chain(m), 2 * m).unwrap().graph;
            let t = find_s_graph_tree(&g).expect("S-graph tree");
            let rep = is_s_graph(&t);
            assert!(rep.holds(), "{:?}", rep.diagnostics);
            let nt = normalize_simple_directions(&t).unwrap();
            for (v, e) in is_s_graph(&nt).simple_edges {
                assert_eq!(nt.direction_of(v, e), Some(1));
            }
        }
    }

    #[test]
    fn wedge_of_two_circles_is_not() {
        let g = subdivide_for_n(&families::wedge_of_circles(2), 2).unwrap().graph;
        assert!(find_s_graph_tree(&g).is_none());
    }

    #[test]
    fn tree_with_degree_four_vertices_is() {
        let g = subdivide_for_n(&families::double_star(4), 4).unwrap().graph;
        let t = find_s_graph_tree(&g).expect("tree case");
        assert!(t.deleted_edges().is_empty());
        let y = families::star(3, 1);
        assert!(find_s_graph_tree(&y).is_none());
    }

    #[test]
    fn diagnostics_name_the_vertex() {
        let g = subdivide_for_n(&families::wedge_of_circles(2), 2).unwrap().graph;
        let t = crate::graph::choose_spanning_tree(&g, None).unwrap();
        let rep = is_s_graph(&t);
        assert!(!rep.property1);
        assert!(rep.diagnostics.iter().any(|d| d.contains("vertex 0")));
    }
}
