//! Spanning trees adapted to a family of vertex-disjoint cycles.

use std::collections::VecDeque;

use super::cycles::{are_vertex_disjoint, Cycle};
use super::subdivide::{apply, Subdivision};
use super::tree::TreeData;
use super::{EdgeId, Graph, UnionFind, VertexId};
use crate::error::{Error, Result};

/// An essential spanning tree in which each of the given cycles contains
/// exactly one deleted edge and the intervals `[∧ẽ_i, ι(ẽ_i)]` are pairwise
/// disjoint. Building it subdivides some edges; `subdivision` maps the input
/// graph into `tree.graph()`.
#[derive(Clone, Debug)]
pub struct DisjointCycleTree {
    pub subdivision: Subdivision,
    pub tree: TreeData,
    /// `ẽ_i`, one per cycle, as edges of the subdivided graph.
    pub deleted: Vec<EdgeId>,
    /// The cycles carried into the subdivided graph.
    pub cycles: Vec<Cycle>,
    /// The edge `e'_i` left out of each cycle in the first phase, as input edges.
    pub initial: Vec<EdgeId>,
}

fn fail(index: usize, message: impl Into<String>) -> Error {
    Error::CycleConstruction {
        index,
        message: message.into(),
    }
}

/// Builds the tree in two phases. First a spanning tree `T'` containing every
/// cycle edge except the first edge `e'_i` of each cycle, with the remaining
/// edges added greedily in ascending order; each edge this rejects is split in
/// three and its middle piece deleted, so deleted edges end at degree-2
/// vertices. The root is the lowest vertex off all cycles that is a leaf of the
/// final tree; failing that, `e'_1` is split in three and the root placed on it.
///
/// Then for every other cycle, the cycle vertex `w` nearest the root is found
/// and the lower-numbered cycle edge at `w` is split in three. Its middle
/// piece becomes `ẽ_i` and `e'_i` rejoins the tree. Rotations are set so that
/// the walk goes round each cycle before leaving it: at `w` the piece of the
/// split edge comes first and the other cycle edge second, and at every other
/// cycle vertex the continuing cycle edge comes first.
pub fn build_vertex_disjoint_tree(g: &Graph, cycles: &[Cycle]) -> Result<DisjointCycleTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if cycles.is_empty() {
        return Err(Error::Precondition("no cycles given".into()));
    }
    for (i, c) in cycles.iter().enumerate() {
        c.validate(g).map_err(|e| fail(i, e.to_string()))?;
        if c.len() < 3 {
            return Err(fail(i, "cycles must have at least three edges; subdivide first"));
        }
    }
    if !are_vertex_disjoint(cycles) {
        return Err(Error::CyclesNotDisjoint(format!("{} cycles", cycles.len())));
    }

    let mut cycles = cycles.to_vec();
    cycles[0] = rotate_for_root(g, &cycles[0]);
    let nv = g.vertex_count();
    let ne = g.edge_count();
    let mut on_cycle = vec![None; nv];
    let mut cycle_of_edge = vec![None; ne];
    for (i, c) in cycles.iter().enumerate() {
        for &v in &c.vertices {
            on_cycle[v] = Some(i);
        }
        for &e in &c.edges {
            cycle_of_edge[e] = Some(i);
        }
    }

    let mut uf = UnionFind::new(nv);
    let mut in_tprime = vec![false; ne];
    for (i, c) in cycles.iter().enumerate() {
        for &e in &c.edges[1..] {
            let [a, b] = g.endpoints(e);
            if !uf.union(a, b) {
                return Err(fail(i, "cycle edges close a cycle early"));
            }
            in_tprime[e] = true;
        }
    }
    let mut rejected = Vec::new();
    for e in (0..ne).filter(|&e| cycle_of_edge[e].is_none()) {
        let [a, b] = g.endpoints(e);
        if uf.union(a, b) {
            in_tprime[e] = true;
        } else {
            rejected.push(e);
        }
    }

    let mut tdeg = vec![0usize; nv];
    for e in (0..ne).filter(|&e| in_tprime[e] || rejected.contains(&e)) {
        let [a, b] = g.endpoints(e);
        tdeg[a] += 1;
        tdeg[b] += 1;
    }
    let leaf_root = (0..nv).find(|&v| on_cycle[v].is_none() && tdeg[v] == 1);

    let mut pieces = vec![1usize; ne];
    for &e in &rejected {
        pieces[e] = 3;
    }
    // the cycle edge to split per cycle and the cycle vertex it is split at
    let mut split: Vec<(EdgeId, VertexId)> = Vec::with_capacity(cycles.len());
    let start = match leaf_root {
        Some(r) => r,
        None => cycles[0].vertices[0],
    };
    let dist = tree_distances(g, &in_tprime, start);
    for (i, c) in cycles.iter().enumerate() {
        if i == 0 && leaf_root.is_none() {
            split.push((c.edges[0], c.vertices[0]));
            continue;
        }
        let w = *c.vertices.iter().min_by_key(|&&v| (dist[v], v)).unwrap();
        let k = c.vertices.iter().position(|&v| v == w).unwrap();
        let at_w = [c.edges[k], c.edges[(k + c.len() - 1) % c.len()]];
        split.push((at_w[0].min(at_w[1]), w));
    }
    for &(e, _) in &split {
        pieces[e] = 3;
    }

    let sub = apply(g, &pieces);
    let h = &sub.graph;
    // end piece of original edge `e` at its endpoint `v`
    let piece_at = |e: EdgeId, v: VertexId| -> EdgeId {
        let path = &sub.edge_paths[e];
        if g.endpoints(e)[0] == v {
            path[0]
        } else {
            *path.last().unwrap()
        }
    };
    let middle = |e: EdgeId| sub.edge_paths[e][1];

    let mut deleted_new = vec![false; h.edge_count()];
    for &e in &rejected {
        deleted_new[middle(e)] = true;
    }
    let mut tilde = Vec::with_capacity(cycles.len());
    for &(e, _) in &split {
        deleted_new[middle(e)] = true;
        tilde.push(middle(e));
    }
    let tree_edges: Vec<EdgeId> = (0..h.edge_count()).filter(|&e| !deleted_new[e]).collect();
    let root = match leaf_root {
        Some(r) => r,
        None => {
            let (e, x) = split[0];
            let [a, b] = h.endpoints(middle(e));
            if h.endpoints(piece_at(e, x)).contains(&a) {
                a
            } else {
                b
            }
        }
    };

    let parent = tree_parents(h, &deleted_new, root);
    let mut rotations = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        let k = c.len();
        for (j, &u) in c.vertices.iter().enumerate() {
            let cyc = [piece_at(c.edges[j], u), piece_at(c.edges[(j + k - 1) % k], u)];
            let first: Vec<EdgeId> = if u == split[i].1 && !(i == 0 && leaf_root.is_none()) {
                let s = piece_at(split[i].0, u);
                let other = if cyc[0] == s { cyc[1] } else { cyc[0] };
                vec![s, other]
            } else {
                let p = parent[u].ok_or_else(|| fail(i, format!("cycle vertex {u} is the root")))?;
                if !cyc.contains(&p) {
                    return Err(fail(i, format!("walk enters the cycle at {u} off the cycle")));
                }
                vec![if cyc[0] == p { cyc[1] } else { cyc[0] }]
            };
            let rot = h.rotation(u);
            let from = match parent[u] {
                Some(p) => rot.iter().position(|&e| e == p).unwrap(),
                None => 0,
            };
            let cyclic: Vec<EdgeId> = (0..rot.len()).map(|t| rot[(from + t) % rot.len()]).collect();
            let mut new = Vec::with_capacity(rot.len());
            if let Some(p) = parent[u] {
                new.push(p);
            }
            new.extend(first.iter().copied());
            let rest: Vec<EdgeId> = cyclic.into_iter().filter(|e| !new.contains(e)).collect();
            new.extend(rest);
            rotations.push((u, new));
        }
    }
    let h = h.clone().with_rotations(rotations)?;
    let tree = TreeData::new(&h, &tree_edges, root)?;

    let mapped: Vec<Cycle> = cycles.iter().map(|c| map_cycle(g, &sub, c)).collect();
    if !tree.is_essential_tree() {
        return Err(fail(0, "resulting tree is not essential"));
    }
    for (i, c) in mapped.iter().enumerate() {
        let dels: Vec<EdgeId> = c.edges.iter().copied().filter(|&e| tree.is_deleted(e)).collect();
        if dels != [tilde[i]] {
            return Err(fail(i, format!("cycle has deleted edges {dels:?}")));
        }
    }
    let spans: Vec<(usize, usize)> = tilde
        .iter()
        .map(|&e| (tree.order(tree.wedge(e)), tree.order(tree.iota(e))))
        .collect();
    for i in 0..spans.len() {
        for j in 0..i {
            let (a, b) = (spans[i], spans[j]);
            if a.0 <= b.1 && b.0 <= a.1 {
                return Err(fail(i, format!("interval overlaps that of cycle {j}")));
            }
        }
    }

    let subdivision = Subdivision {
        graph: h,
        ..sub
    };
    Ok(DisjointCycleTree {
        subdivision,
        tree,
        deleted: tilde,
        cycles: mapped,
        initial: cycles.iter().map(|c| c.edges[0]).collect(),
    })
}

fn tree_distances(g: &Graph, in_tree: &[bool], start: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &e in g.rotation(u) {
            let w = g.other_end(e, u);
            if in_tree[e] && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Rotates the cycle so that `vertices[0]` is the vertex with the most
/// degree-2 vertices behind it (going against the edge order), which keeps
/// essential vertices away from a root placed next to it.
fn rotate_for_root(g: &Graph, c: &Cycle) -> Cycle {
    let k = c.len();
    let run = |j: usize| {
        (0..k)
            .take_while(|&step| g.degree(c.vertices[(j + k - step) % k]) == 2)
            .count()
    };
    let best = (0..k).max_by_key(|&j| (run(j), std::cmp::Reverse(c.vertices[j]))).unwrap();
    Cycle {
        vertices: (0..k).map(|t| c.vertices[(best + t) % k]).collect(),
        edges: (0..k).map(|t| c.edges[(best + t) % k]).collect(),
    }
}

fn tree_parents(h: &Graph, deleted: &[bool], root: VertexId) -> Vec<Option<EdgeId>> {
    let mut parent = vec![None; h.vertex_count()];
    let mut seen = vec![false; h.vertex_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &e in h.rotation(u) {
            let w = h.other_end(e, u);
            if !deleted[e] && !seen[w] {
                seen[w] = true;
                parent[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    parent
}

fn map_cycle(g: &Graph, sub: &Subdivision, c: &Cycle) -> Cycle {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (j, &e) in c.edges.iter().enumerate() {
        let forward = g.endpoints(e)[0] == c.vertices[j];
        let mut vs = sub.vertex_paths[e].clone();
        let mut es = sub.edge_paths[e].clone();
        if !forward {
            vs.reverse();
            es.reverse();
        }
        vs.pop();
        vertices.extend(vs);
        edges.extend(es);
    }
    Cycle { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{families, max_vertex_disjoint_cycles};

    fn check(g: &Graph) -> DisjointCycleTree {
        let p = max_vertex_disjoint_cycles(g, 1_000_000);
        let d = build_vertex_disjoint_tree(g, &p.cycles).unwrap();
        assert_eq!(d.deleted.len(), p.nu);
        assert!(d.tree.is_essential_tree());
        for c in &d.cycles {
            c.validate(d.tree.graph()).unwrap();
            let mut orders: Vec<usize> = c.vertices.iter().map(|&v| d.tree.order(v)).collect();
            orders.sort_unstable();
            assert!(orders.windows(2).all(|w| w[1] == w[0] + 1), "cycle vertices form an interval");
        }
        d
    }

    #[test]
    fn two_triangles() {
        let d = check(&families::triangle_chain(2));
        let t = &d.tree;
        let (a, b) = (d.deleted[0], d.deleted[1]);
        let ia = t.order(t.wedge(a))..=t.order(t.iota(a));
        let ib = t.order(t.wedge(b))..=t.order(t.iota(b));
        assert!(ia.end() < ib.start() || ib.end() < ia.start());
    }

    #[test]
    fn families_with_several_cycles() {
        check(&families::triangle_chain(4));
        check(&families::three_cycle_example());
        check(&families::complete(6));
        check(&families::cycle(5));
        check(&families::ordering_example());
    }

    #[test]
    fn rejects_overlapping_cycles() {
        let g = families::complete(4);
        let c1 = Cycle { vertices: vec![0, 1, 2], edges: vec![0, 3, 1] };
        let c2 = Cycle { vertices: vec![0, 1, 3], edges: vec![0, 4, 2] };
        c1.validate(&g).unwrap();
        c2.validate(&g).unwrap();
        assert!(matches!(
            build_vertex_disjoint_tree(&g, &[c1, c2]),
            Err(Error::CyclesNotDisjoint(_))
        ));
    }
}
