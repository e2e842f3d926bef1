//! The discrete gradient field on `UD^n(Γ)` determined by a rooted spanning
//! tree, the cell classification and the reductions `r` and `r_I`.

mod flow;
mod homology;

pub use flow::{f_infinity, flow_infinity, morse_boundary, project_critical, MorseComplexData};
pub use homology::{morse_homology, MorseHomology};

use std::collections::VecDeque;

use crate::complex::{Cell, Complex, Item};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, TreeData, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Critical,
    Redundant,
    Collapsible,
}

/// The field `W` as a partial matching between `p`-cells and `(p+1)`-cells of
/// one complex, plus a topological rank on the redundant cells of each
/// dimension used to run the flow.
#[derive(Clone, Debug)]
pub struct GradientField {
    tree: TreeData,
    up: Vec<Vec<Option<usize>>>,
    down: Vec<Vec<Option<usize>>>,
    labels: Vec<Vec<Label>>,
    rank: Vec<Vec<u32>>,
}

impl GradientField {
    pub fn tree(&self) -> &TreeData {
        &self.tree
    }

    pub fn label(&self, p: usize, i: usize) -> Label {
        self.labels[p][i]
    }

    /// `W` of cell `i` of dimension `p`, as an index in dimension `p + 1`.
    pub fn w(&self, p: usize, i: usize) -> Option<usize> {
        self.up[p][i]
    }

    /// The cell that `W` sends to cell `i` of dimension `p`.
    pub fn w_inverse(&self, p: usize, i: usize) -> Option<usize> {
        self.down[p][i]
    }

    pub fn critical(&self, p: usize) -> Vec<usize> {
        self.labels.get(p).map_or_else(Vec::new, |ls| {
            ls.iter()
                .enumerate()
                .filter(|(_, &l)| l == Label::Critical)
                .map(|(i, _)| i)
                .collect()
        })
    }

    pub fn critical_counts(&self) -> Vec<usize> {
        (0..self.labels.len()).map(|p| self.critical(p).len()).collect()
    }

    pub(crate) fn rank(&self, p: usize, i: usize) -> u32 {
        self.rank[p][i]
    }
}

fn not_member(what: impl std::fmt::Display, c: &Cell) -> Error {
    Error::NotAMember(format!("{what} is not in cell {c}"))
}

/// Whether vertex `v` of `c` is blocked: it is the root, or its edge towards
/// the root meets another member of `c`.
pub fn is_blocked(v: VertexId, c: &Cell, t: &TreeData) -> Result<bool> {
    if !c.contains_vertex(v) {
        return Err(not_member(format!("vertex {v}"), c));
    }
    Ok(blocked(v, c, t))
}

fn blocked(v: VertexId, c: &Cell, t: &TreeData) -> bool {
    match t.parent(v) {
        None => true,
        Some(p) => c.occupies(t.graph(), p),
    }
}

/// Whether edge `e` of `c` is order-disrespecting: it is deleted, or `c` has
/// a vertex `v` with `v^0(v) = τ(e)` and `v < ι(e)`.
pub fn is_order_disrespecting(e: EdgeId, c: &Cell, t: &TreeData) -> Result<bool> {
    if !c.contains_edge(e) {
        return Err(not_member(format!("edge {e}"), c));
    }
    Ok(disrespecting(e, c, t))
}

fn disrespecting(e: EdgeId, c: &Cell, t: &TreeData) -> bool {
    if t.is_deleted(e) {
        return true;
    }
    let (tau, iota) = (t.tau(e), t.iota(e));
    c.vertices()
        .any(|v| t.parent(v) == Some(tau) && t.order(v) < t.order(iota))
}

/// The unblocked vertex of `c` that comes first in the vertex order.
pub fn minimal_unblocked(c: &Cell, t: &TreeData) -> Option<VertexId> {
    c.vertices()
        .filter(|&v| !blocked(v, c, t))
        .min_by_key(|&v| t.order(v))
}

/// Classifies `c` from its blocked vertices and order-respecting edges alone,
/// without reference to the inductive construction of `W`. Exactly one of the
/// three characterizations must hold.
pub fn classify_intrinsic(c: &Cell, t: &TreeData) -> Result<Label> {
    let respecting: Vec<EdgeId> = c.edges().filter(|&e| !disrespecting(e, c, t)).collect();
    let unblocked: Vec<VertexId> = c.vertices().filter(|&v| !blocked(v, c, t)).collect();
    let redundant = unblocked.iter().any(|&v| {
        respecting
            .iter()
            .all(|&e| t.order(t.iota(e)) > t.order(v))
    });
    let collapsible = respecting.iter().any(|&e| {
        c.vertices()
            .filter(|&v| t.order(v) < t.order(t.iota(e)))
            .all(|v| blocked(v, c, t))
    });
    let critical = unblocked.is_empty() && respecting.is_empty();
    match (critical, redundant, collapsible) {
        (true, false, false) => Ok(Label::Critical),
        (false, true, false) => Ok(Label::Redundant),
        (false, false, true) => Ok(Label::Collapsible),
        _ => Err(Error::GradientInconsistency(format!(
            "cell {c}: critical={critical} redundant={redundant} collapsible={collapsible}"
        ))),
    }
}

fn same_graph(x: &Complex, t: &TreeData) -> bool {
    x.graph().vertex_count() == t.graph().vertex_count() && x.graph().edges() == t.graph().edges()
}

/// Builds `W` dimension by dimension: a cell not already hit by `W` that has
/// an unblocked vertex is sent to the cell with its minimal unblocked vertex
/// `v` replaced by `e^0(v)`. Every label is then checked against
/// [`classify_intrinsic`].
pub fn build_gradient(x: &Complex, t: &TreeData) -> Result<GradientField> {
    if x.is_ordered() {
        return Err(Error::Precondition("gradient field needs the unordered complex".into()));
    }
    if !same_graph(x, t) {
        return Err(Error::Precondition("tree and complex are over different graphs".into()));
    }
    let dims = x.dims();
    let mut up: Vec<Vec<Option<usize>>> = (0..dims).map(|p| vec![None; x.count(p)]).collect();
    let mut down: Vec<Vec<Option<usize>>> = (0..dims).map(|p| vec![None; x.count(p)]).collect();
    for p in 0..dims {
        for i in 0..x.count(p) {
            if down[p][i].is_some() {
                continue;
            }
            let c = x.cell(p, i);
            let Some(v) = minimal_unblocked(c, t) else { continue };
            let e0 = t.parent_edge(v).expect("unblocked vertex is not the root");
            let target = c.replace(Item::vertex(v), Item::edge(e0), false);
            let j = x.index_of(&target).ok_or_else(|| {
                Error::GradientInconsistency(format!("W({c}) = {target} is not a cell"))
            })?;
            if let Some(prev) = down[p + 1][j] {
                return Err(Error::GradientInconsistency(format!(
                    "{target} is W of both {} and {c}",
                    x.cell(p, prev)
                )));
            }
            up[p][i] = Some(j);
            down[p + 1][j] = Some(i);
        }
    }
    let mut labels = Vec::with_capacity(dims);
    for p in 0..dims {
        let mut ls = Vec::with_capacity(x.count(p));
        for i in 0..x.count(p) {
            let built = match (up[p][i], down[p][i]) {
                (Some(_), None) => Label::Redundant,
                (None, Some(_)) => Label::Collapsible,
                (None, None) => Label::Critical,
                (Some(_), Some(_)) => {
                    return Err(Error::GradientInconsistency(format!(
                        "{} is both redundant and collapsible",
                        x.cell(p, i)
                    )))
                }
            };
            let intrinsic = classify_intrinsic(x.cell(p, i), t)?;
            if built != intrinsic {
                return Err(Error::GradientInconsistency(format!(
                    "{} built as {built:?} but classified {intrinsic:?}",
                    x.cell(p, i)
                )));
            }
            ls.push(built);
        }
        labels.push(ls);
    }
    let rank = (0..dims)
        .map(|p| redundant_ranks(x, p, &up, &labels))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradientField {
        tree: t.clone(),
        up,
        down,
        labels,
        rank,
    })
}

/// Topological order of the redundant `p`-cells under `σ → σ'` whenever `σ'`
/// is a redundant face of `W(σ)` other than `σ`. A cycle means `W` is not a
/// gradient field.
fn redundant_ranks(
    x: &Complex,
    p: usize,
    up: &[Vec<Option<usize>>],
    labels: &[Vec<Label>],
) -> Result<Vec<u32>> {
    let count = x.count(p);
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut indeg = vec![0usize; count];
    for s in 0..count {
        let Some(ws) = up[p][s] else { continue };
        for f in x.boundary_of(p + 1, ws) {
            if f != s && labels[p][f] == Label::Redundant {
                succ[s].push(f);
                indeg[f] += 1;
            }
        }
    }
    let mut rank = vec![0u32; count];
    let mut queue: VecDeque<usize> = (0..count)
        .filter(|&s| labels[p][s] == Label::Redundant && indeg[s] == 0)
        .collect();
    let mut seen = 0;
    let redundant = labels[p].iter().filter(|&&l| l == Label::Redundant).count();
    let mut next = 0u32;
    while let Some(s) = queue.pop_front() {
        rank[s] = next;
        next += 1;
        seen += 1;
        for &f in &succ[s] {
            indeg[f] -= 1;
            if indeg[f] == 0 {
                queue.push_back(f);
            }
        }
    }
    if seen != redundant {
        return Err(Error::GradientInconsistency(format!(
            "closed gradient path among redundant {p}-cells"
        )));
    }
    Ok(rank)
}

fn require_redundant(c: &Cell, t: &TreeData) -> Result<VertexId> {
    if classify_intrinsic(c, t)? != Label::Redundant {
        return Err(Error::NotRedundant);
    }
    Ok(minimal_unblocked(c, t).expect("redundant cells have an unblocked vertex"))
}

/// `r(c)`: the minimal unblocked vertex moved one step towards the root.
pub fn reduce(c: &Cell, t: &TreeData) -> Result<Cell> {
    let v = require_redundant(c, t)?;
    let p = t.parent(v).unwrap();
    Ok(c.replace(Item::vertex(v), Item::vertex(p), false))
}

/// `r_I(c)`. Returns `(r(c), false)` when for every deleted edge `ẽ` of `c`
/// the interval `[v', v]` swept by the move lies inside or outside
/// `[τ(ẽ), ι(ẽ)]`, and `(c, true)` when `c` is defective.
pub fn initial_reduce(c: &Cell, t: &TreeData) -> Result<(Cell, bool)> {
    if let Some(&e) = t.deleted_edges().iter().find(|&&e| {
        let [a, b] = t.graph().endpoints(e);
        t.graph().degree(a) != 2 || t.graph().degree(b) != 2
    }) {
        return Err(Error::NotEssentialTree(e));
    }
    let v = require_redundant(c, t)?;
    let vp = t.parent(v).unwrap();
    let (lo, hi) = (t.order(vp), t.order(v));
    let clean = c.edges().filter(|&e| t.is_deleted(e)).all(|e| {
        let (a, b) = (t.order(t.tau(e)), t.order(t.iota(e)));
        let nested = a <= lo && hi <= b;
        let disjoint = hi < a || b < lo;
        nested || disjoint
    });
    if clean {
        Ok((c.replace(Item::vertex(v), Item::vertex(vp), false), false))
    } else {
        Ok((c.clone(), true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::enumerate_unordered;
    use crate::graph::{choose_spanning_tree, families};

    #[test]
    fn one_robot_critical_cells() {
        for g in [families::complete(4), families::ordering_example(), families::star(3, 2)] {
            let t = choose_spanning_tree(&g, None).unwrap();
            let x = enumerate_unordered(&g, 1).unwrap();
            let w = build_gradient(&x, &t).unwrap();
            let crit0: Vec<&Cell> = w.critical(0).iter().map(|&i| x.cell(0, i)).collect();
            assert_eq!(crit0, vec![&Cell::from_parts(&[t.root()], &[])]);
            let mut crit1: Vec<EdgeId> = w.critical(1).iter().map(|&i| x.cell(1, i).edges().next().unwrap()).collect();
            crit1.sort_unstable();
            assert_eq!(crit1, t.deleted_edges());
        }
    }

    #[test]
    fn blocked_examples() {
        let g = families::path(4);
        let t = choose_spanning_tree(&g, Some(0)).unwrap();
        let c = Cell::from_parts(&[0, 2], &[]);
        assert!(is_blocked(0, &c, &t).unwrap());
        assert!(!is_blocked(2, &c, &t).unwrap());
        let c = Cell::from_parts(&[1, 2], &[]);
        assert!(is_blocked(2, &c, &t).unwrap());
        assert!(is_blocked(3, &c, &t).is_err());
    }

    #[test]
    fn reduce_moves_towards_root() {
        let g = families::path(5);
        let t = choose_spanning_tree(&g, Some(0)).unwrap();
        let c = Cell::from_parts(&[3], &[]);
        assert_eq!(reduce(&c, &t).unwrap(), Cell::from_parts(&[2], &[]));
        assert_eq!(reduce(&Cell::from_parts(&[0], &[]), &t).unwrap_err(), Error::NotRedundant);
        let (r, defective) = initial_reduce(&c, &t).unwrap();
        assert!(!defective);
        assert_eq!(r, Cell::from_parts(&[2], &[]));
    }
}
