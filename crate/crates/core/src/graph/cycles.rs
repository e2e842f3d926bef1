use std::collections::HashMap;

use super::{EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

/// A cycle given by its vertices in cyclic order and the edges joining
/// consecutive vertices (`edges[i]` joins `vertices[i]` and `vertices[i+1]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that the cycle is a closed walk without repeated vertices in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.vertices.len();
        let bad = |m: &str| Err(Error::InvalidGraph(format!("cycle {:?}: {m}", self.vertices)));
        if k == 0 || self.edges.len() != k {
            return bad("vertex and edge counts differ");
        }
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != k {
            return bad("repeated vertex");
        }
        let mut es = self.edges.clone();
        es.sort_unstable();
        es.dedup();
        if es.len() != k {
            return bad("repeated edge");
        }
        for i in 0..k {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            let [x, y] = g.endpoints(self.edges[i]);
            if !((x == a && y == b) || (x == b && y == a)) {
                return bad("edge does not join consecutive vertices");
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CyclePacking {
    pub nu: usize,
    pub cycles: Vec<Cycle>,
    /// False when the search budget ran out; `nu` is then only a lower bound.
    pub exact: bool,
}

pub fn are_vertex_disjoint(cycles: &[Cycle]) -> bool {
    let mut seen = std::collections::HashSet::new();
    cycles.iter().flat_map(|c| &c.vertices).all(|&v| seen.insert(v))
}

type Set = Vec<u64>;

fn has(s: &Set, v: usize) -> bool {
    s[v / 64] >> (v % 64) & 1 == 1
}

fn remove(s: &mut Set, v: usize) {
    s[v / 64] &= !(1u64 << (v % 64));
}

fn count(s: &Set) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

struct Search<'a> {
    g: &'a Graph,
    /// Neighbours of each vertex with edge multiplicity, loops excluded.
    nbrs: Vec<Vec<(VertexId, usize)>>,
    adj: Vec<Set>,
    loops: Vec<bool>,
    budget: u64,
    steps: u64,
    exhausted: bool,
    memo: HashMap<Set, Vec<Vec<VertexId>>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let nv = g.vertex_count();
        let words = nv.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; nv];
        let mut mult: Vec<HashMap<VertexId, usize>> = vec![HashMap::new(); nv];
        let mut loops = vec![false; nv];
        for &[u, v] in g.edges() {
            if u == v {
                loops[u] = true;
                continue;
            }
            adj[u][v / 64] |= 1 << (v % 64);
            adj[v][u / 64] |= 1 << (u % 64);
            *mult[u].entry(v).or_default() += 1;
            *mult[v].entry(u).or_default() += 1;
        }
        let nbrs = mult
            .into_iter()
            .map(|m| {
                let mut l: Vec<_> = m.into_iter().collect();
                l.sort_unstable();
                l
            })
            .collect();
        Search {
            g,
            nbrs,
            adj,
            loops,
            budget,
            steps: 0,
            exhausted: false,
            memo: HashMap::new(),
        }
    }

    fn degree_in(&self, v: VertexId, s: &Set) -> usize {
        let base = if self.loops[v] { 2 } else { 0 };
        base + self
            .nbrs[v]
            .iter()
            .filter(|&&(w, _)| has(s, w))
            .map(|&(_, m)| m)
            .sum::<usize>()
    }

    fn prune(&self, s: &mut Set) {
        loop {
            let mut changed = false;
            for v in 0..self.g.vertex_count() {
                if has(s, v) && self.degree_in(v, s) <= 1 {
                    remove(s, v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn upper_bound(&self, s: &Set) -> usize {
        let vs: Vec<_> = (0..self.g.vertex_count()).filter(|&v| has(s, v)).collect();
        let loops = vs.iter().filter(|&&v| self.loops[v]).count();
        let multi = vs.iter().any(|&v| {
            self.nbrs[v].iter().any(|&(w, m)| m > 1 && has(s, w))
        });
        let rest = vs.len() - loops;
        loops + if multi { rest / 2 } else { rest / 3 }
    }

    /// Chordless cycles through `v` inside `s`, each listed once.
    fn chordless_through(&self, v: VertexId, s: &Set) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        for &(w, m) in &self.nbrs[v] {
            if m > 1 && has(s, w) {
                out.push(vec![v, w]);
            }
        }
        let mut path = vec![v];
        self.extend(&mut path, s, &mut out);
        out
    }

    fn extend(&self, path: &mut Vec<VertexId>, s: &Set, out: &mut Vec<Vec<VertexId>>) {
        let v = path[0];
        let last = *path.last().unwrap();
        for &(x, _) in &self.nbrs[last] {
            if !has(s, x) || path.contains(&x) {
                continue;
            }
            let j = path.len();
            // x must not see any interior path vertex other than its predecessor
            let interior = if j >= 2 { &path[1..j - 1] } else { &[][..] };
            if interior.iter().any(|&p| has(&self.adj[x], p)) {
                continue;
            }
            if j >= 2 && has(&self.adj[x], v) {
                if path[1] < x {
                    let mut c = path.clone();
                    c.push(x);
                    out.push(c);
                }
                continue;
            }
            path.push(x);
            self.extend(path, s, out);
            path.pop();
        }
    }

    fn solve(&mut self, mut s: Set) -> Vec<Vec<VertexId>> {
        self.prune(&mut s);
        if count(&s) == 0 {
            return Vec::new();
        }
        if let Some(hit) = self.memo.get(&s) {
            return hit.clone();
        }
        self.steps += 1;
        if self.steps > self.budget {
            self.exhausted = true;
        }
        let nv = self.g.vertex_count();
        if let Some(v) = (0..nv).find(|&v| has(&s, v) && self.loops[v]) {
            let mut rest = s.clone();
            remove(&mut rest, v);
            let mut best = self.solve(rest);
            best.push(vec![v]);
            if !self.exhausted {
                self.memo.insert(s, best.clone());
            }
            return best;
        }

        let bound = self.upper_bound(&s);
        let v = (0..nv)
            .filter(|&v| has(&s, v))
            .max_by_key(|&v| (self.degree_in(v, &s), std::cmp::Reverse(v)))
            .unwrap();
        let mut best: Vec<Vec<VertexId>> = Vec::new();
        for c in self.chordless_through(v, &s) {
            if self.exhausted || best.len() >= bound {
                break;
            }
            let mut rest = s.clone();
            for &x in &c {
                remove(&mut rest, x);
            }
            let mut found = self.solve(rest);
            found.push(c);
            if found.len() > best.len() {
                best = found;
            }
        }
        if !self.exhausted && best.len() < bound {
            let mut rest = s.clone();
            remove(&mut rest, v);
            let found = self.solve(rest);
            if found.len() > best.len() {
                best = found;
            }
        }
        if !self.exhausted {
            self.memo.insert(s, best.clone());
        }
        best
    }

    fn to_cycle(&self, vs: Vec<VertexId>) -> Cycle {
        let g = self.g;
        let edges = match vs.len() {
            1 => vec![(0..g.edge_count())
                .find(|&e| g.endpoints(e) == [vs[0], vs[0]])
                .unwrap()],
            2 => {
                let mut par: Vec<EdgeId> = g
                    .rotation(vs[0])
                    .iter()
                    .copied()
                    .filter(|&e| g.other_end(e, vs[0]) == vs[1] && !g.is_loop(e))
                    .collect();
                par.sort_unstable();
                par.truncate(2);
                par
            }
            k => (0..k)
                .map(|i| g.edge_between(vs[i], vs[(i + 1) % k]).unwrap())
                .collect(),
        };
        Cycle { vertices: vs, edges }
    }
}

/// Maximum number of pairwise vertex-disjoint cycles, with a witness family.
///
/// Branches on a vertex of maximal degree: either it is unused, or it lies on
/// one of its chordless cycles (any cycle through it can be shrunk to one).
/// Results are memoised by the remaining vertex set. `budget` caps the number
/// of search nodes; when it runs out the best packing found so far is returned
/// with `exact = false`.
pub fn max_vertex_disjoint_cycles(g: &Graph, budget: u64) -> CyclePacking {
    let words = g.vertex_count().div_ceil(64).max(1);
    let mut all = vec![0u64; words];
    for v in 0..g.vertex_count() {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut search = Search::new(g, budget);
    let found = search.solve(all);
    let mut cycles: Vec<Cycle> = found.into_iter().map(|c| search.to_cycle(c)).collect();
    cycles.sort_by_key(|c| c.vertices.iter().copied().min());
    CyclePacking {
        nu: cycles.len(),
        cycles,
        exact: !search.exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn nu(g: &Graph) -> usize {
        let p = max_vertex_disjoint_cycles(g, 1_000_000);
        assert!(p.exact);
        assert!(are_vertex_disjoint(&p.cycles));
        for c in &p.cycles {
            c.validate(g).unwrap();
        }
        p.nu
    }

    #[test]
    fn complete_graphs() {
        for m in 3..=9 {
            assert_eq!(nu(&families::complete(m)), m / 3, "K_{m}");
        }
    }

    #[test]
    fn small_families() {
        assert_eq!(nu(&families::star(4, 2)), 0);
        assert_eq!(nu(&families::banana(3)), 1);
        assert_eq!(nu(&families::wedge_of_circles(3)), 1);
        assert_eq!(nu(&families::triangle_chain(4)), 4);
        assert_eq!(nu(&families::three_cycle_example()), 3);
        assert_eq!(nu(&families::cycle(5)), 1);
        assert_eq!(nu(&families::looped_chain(3)), 3);
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let p = max_vertex_disjoint_cycles(&families::complete(9), 1);
        assert!(!p.exact);
        assert!(p.nu <= 3);
    }
}
