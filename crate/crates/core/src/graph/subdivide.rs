use std::collections::HashMap;

use super::{EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

/// A subdivided graph together with the map back to the graph it came from.
/// Original vertices keep their ids; subdivision vertices are appended.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: Graph,
    pub original_vertex_count: usize,
    /// For each original edge, the new edges from its first endpoint to its second.
    pub edge_paths: Vec<Vec<EdgeId>>,
    /// For each original edge, the vertex sequence including both endpoints.
    pub vertex_paths: Vec<Vec<VertexId>>,
}

impl Subdivision {
    pub fn identity(g: &Graph) -> Self {
        Subdivision {
            graph: g.clone(),
            original_vertex_count: g.vertex_count(),
            edge_paths: (0..g.edge_count()).map(|e| vec![e]).collect(),
            vertex_paths: g.edges().iter().map(|&[u, v]| vec![u, v]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.edge_paths.iter().all(|p| p.len() == 1)
    }

    /// Maps a set of original edges to the corresponding new edges.
    pub fn map_edges(&self, edges: &[EdgeId]) -> Vec<EdgeId> {
        edges
            .iter()
            .flat_map(|&e| self.edge_paths[e].iter().copied())
            .collect()
    }
}

/// Maximal paths whose interior vertices have degree 2, between vertices of
/// degree other than 2. Each is listed once, from its lower-id end where the
/// ends differ.
#[derive(Clone, Debug)]
struct Segment {
    ends: [VertexId; 2],
    edges: Vec<EdgeId>,
}

fn segments(g: &Graph) -> Vec<Segment> {
    let branch = |v: VertexId| g.degree(v) != 2;
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for b in (0..g.vertex_count()).filter(|&v| branch(v)) {
        for &start in g.rotation(b) {
            if used[start] {
                continue;
            }
            used[start] = true;
            let mut edges = vec![start];
            let mut at = g.other_end(start, b);
            let mut via = start;
            while !branch(at) {
                let next = *g
                    .rotation(at)
                    .iter()
                    .find(|&&e| e != via)
                    .expect("degree two vertex has a second edge");
                used[next] = true;
                edges.push(next);
                at = g.other_end(next, at);
                via = next;
            }
            out.push(Segment { ends: [b, at], edges });
        }
    }
    out
}

/// Length of the shortest cycle (loops count 1, parallel edges 2), or `None`
/// for a forest.
pub(crate) fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        if u == v {
            return Some(1);
        }
        if g.multiplicity(u, v) > 1 && g.edge_between(u, v) != Some(e) {
            best = Some(2);
        }
    }
    if best.is_some() {
        return best;
    }
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut via = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break;
                }
            }
            for &e in g.rotation(u) {
                if e == via[u] {
                    continue;
                }
                let w = g.other_end(e, u);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = e;
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        via.iter_mut().for_each(|x| *x = usize::MAX);
    }
    best
}

/// Both length conditions for `n` robots, plus at least `n` vertices.
pub fn is_sufficiently_subdivided(g: &Graph, n: usize) -> bool {
    if g.vertex_count() < n {
        return false;
    }
    let open_ok = segments(g)
        .iter()
        .filter(|s| s.ends[0] != s.ends[1])
        .all(|s| s.edges.len() + 1 >= n);
    open_ok && girth(g).map_or(true, |len| len > n)
}

/// Subdivides `g` so that configuration spaces of `n` robots can be computed
/// on it. The result is simple, has at least `n` vertices, every path between
/// distinct vertices of degree other than 2 has at least `n - 1` edges, and
/// every cycle has at least `n + 1` edges. Simple graphs that already satisfy
/// these conditions are returned unchanged.
pub fn subdivide_for_n(g: &Graph, n: usize) -> Result<Subdivision> {
    if n == 0 {
        return Err(Error::ZeroRobots);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        if n > 1 {
            return Err(Error::InsufficientSubdivision { n });
        }
        return Ok(Subdivision::identity(g));
    }

    let mut pieces = vec![1usize; g.edge_count()];
    let segs = segments(g);
    if segs.is_empty() {
        // every vertex has degree 2: the graph is a single cycle
        let need = (n + 1).max(3);
        pieces[0] += need.saturating_sub(g.edge_count());
    } else {
        let mut has_short: HashMap<(VertexId, VertexId), bool> = HashMap::new();
        for s in &segs {
            if s.ends[0] != s.ends[1] && s.edges.len() == 1 {
                has_short.entry(key(s.ends)).or_insert(true);
            }
        }
        let mut kept_short: HashMap<(VertexId, VertexId), bool> = HashMap::new();
        for s in &segs {
            let len = s.edges.len();
            let need = if s.ends[0] == s.ends[1] {
                (n + 1).max(3)
            } else {
                let mut need = n.saturating_sub(1).max(1);
                if len == 1 && has_short.contains_key(&key(s.ends)) {
                    // one edge may stay a single edge, the others become paths
                    if std::mem::replace(kept_short.entry(key(s.ends)).or_insert(false), true) {
                        need = need.max(2);
                    }
                }
                need
            };
            if len < need {
                pieces[s.edges[0]] += need - len;
            }
        }
    }

    let added: usize = pieces.iter().map(|p| p - 1).sum();
    if g.vertex_count() + added < n {
        pieces[0] += n - g.vertex_count() - added;
    }
    Ok(apply(g, &pieces))
}

fn key(ends: [VertexId; 2]) -> (VertexId, VertexId) {
    (ends[0].min(ends[1]), ends[0].max(ends[1]))
}

/// Replaces edge `e` by a path of `pieces[e]` edges.
pub(crate) fn apply(g: &Graph, pieces: &[usize]) -> Subdivision {
    let mut next_vertex = g.vertex_count();
    let mut edges = Vec::new();
    let mut edge_paths = Vec::with_capacity(g.edge_count());
    let mut vertex_paths = Vec::with_capacity(g.edge_count());
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let mut vs = vec![u];
        for _ in 1..pieces[e] {
            vs.push(next_vertex);
            next_vertex += 1;
        }
        vs.push(v);
        let first = edges.len();
        for w in vs.windows(2) {
            edges.push([w[0], w[1]]);
        }
        edge_paths.push((first..edges.len()).collect::<Vec<_>>());
        vertex_paths.push(vs);
    }

    let mut rotation: Vec<Vec<EdgeId>> = vec![Vec::new(); next_vertex];
    for v in 0..g.vertex_count() {
        let mut seen_loop = vec![false; g.edge_count()];
        for &e in g.rotation(v) {
            let path = &edge_paths[e];
            let new = if g.is_loop(e) {
                let second = std::mem::replace(&mut seen_loop[e], true);
                if second {
                    *path.last().unwrap()
                } else {
                    path[0]
                }
            } else if g.endpoints(e)[0] == v {
                path[0]
            } else {
                *path.last().unwrap()
            };
            rotation[v].push(new);
        }
    }
    for path in &edge_paths {
        for w in path.windows(2) {
            let mid = edges[w[0]][1];
            rotation[mid] = vec![w[0], w[1]];
        }
    }

    let graph = Graph::new(next_vertex, edges)
        .and_then(|h| h.with_rotations(rotation.into_iter().enumerate()))
        .expect("subdivision preserves a valid rotation system");
    Subdivision {
        graph,
        original_vertex_count: g.vertex_count(),
        edge_paths,
        vertex_paths,
    }
}
