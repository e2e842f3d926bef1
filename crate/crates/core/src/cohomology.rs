//! Equivalence classes of cells, their partial order, the cochains `φ_[c]`,
//! cup products of degree-one classes, and zero-divisor cup length.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::complex::{Cell, Complex, Item};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::graph::{EdgeId, Graph, UnionFind, VertexId};
use crate::morse::{MorseComplexData, MorseHomology};

/// Canonical form of a class: the sorted edge set `E`, and for each component
/// of `Γ - E` (the graph with the closed edges of `E` removed) holding at least
/// one vertex of the cell, the component's smallest vertex and the count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqClass {
    pub edges: Vec<EdgeId>,
    pub counts: Vec<(VertexId, usize)>,
}

impl EqClass {
    pub fn degree(&self) -> usize {
        self.edges.len()
    }
}

impl std::fmt::Display for EqClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[E={:?}", self.edges)?;
        for (c, k) in &self.counts {
            write!(f, " C{c}:{k}")?;
        }
        write!(f, "]")
    }
}

/// Component label (smallest vertex) of every vertex of `Γ - E`, `None` for
/// endpoints of `E`.
fn components_without(g: &Graph, edges: &[EdgeId]) -> Vec<Option<VertexId>> {
    let mut removed = vec![false; g.vertex_count()];
    for &e in edges {
        for v in g.endpoints(e) {
            removed[v] = true;
        }
    }
    let mut uf = UnionFind::new(g.vertex_count());
    for &[a, b] in g.edges() {
        if !removed[a] && !removed[b] {
            uf.union(a, b);
        }
    }
    let mut least: HashMap<usize, VertexId> = HashMap::new();
    for v in 0..g.vertex_count() {
        if !removed[v] {
            least.entry(uf.find(v)).or_insert(v);
        }
    }
    (0..g.vertex_count())
        .map(|v| (!removed[v]).then(|| least[&uf.find(v)]))
        .collect()
}

fn class_with(labels: &[Option<VertexId>], c: &Cell) -> EqClass {
    let mut edges: Vec<EdgeId> = c.edges().collect();
    edges.sort_unstable();
    let mut counts: Vec<(VertexId, usize)> = Vec::new();
    let mut comps: Vec<VertexId> = c
        .vertices()
        .map(|v| labels[v].expect("cell vertex off the edge closures"))
        .collect();
    comps.sort_unstable();
    for k in comps {
        match counts.last_mut() {
            Some((last, n)) if *last == k => *n += 1,
            _ => counts.push((k, 1)),
        }
    }
    EqClass { edges, counts }
}

/// `[c]` in canonical form.
pub fn class_of(c: &Cell, g: &Graph) -> EqClass {
    let edges: Vec<EdgeId> = c.edges().collect();
    class_with(&components_without(g, &edges), c)
}

pub type ClassId = usize;

/// Every class of a complex, with its member cells and its one-cell factors.
#[derive(Debug)]
pub struct ClassIndex {
    classes: Vec<EqClass>,
    members: Vec<Vec<usize>>,
    of_cell: Vec<Vec<ClassId>>,
    by_class: HashMap<EqClass, ClassId>,
    by_edges: HashMap<Vec<EdgeId>, Vec<ClassId>>,
    factors: Vec<OnceLock<Result<Vec<ClassId>>>>,
}

impl ClassIndex {
    pub fn new(x: &Complex) -> Self {
        let g = x.graph();
        let mut labels_cache: HashMap<Vec<EdgeId>, Vec<Option<VertexId>>> = HashMap::new();
        let mut idx = ClassIndex {
            classes: Vec::new(),
            members: Vec::new(),
            of_cell: Vec::with_capacity(x.dims()),
            by_class: HashMap::new(),
            by_edges: HashMap::new(),
            factors: Vec::new(),
        };
        for p in 0..x.dims() {
            let mut ids = Vec::with_capacity(x.count(p));
            for (i, c) in x.cells(p).iter().enumerate() {
                let edges: Vec<EdgeId> = {
                    let mut e: Vec<EdgeId> = c.edges().collect();
                    e.sort_unstable();
                    e
                };
                let labels = labels_cache
                    .entry(edges.clone())
                    .or_insert_with(|| components_without(g, &edges));
                let class = class_with(labels, c);
                let id = match idx.by_class.get(&class) {
                    Some(&id) => id,
                    None => {
                        let id = idx.classes.len();
                        idx.by_edges.entry(edges).or_default().push(id);
                        idx.by_class.insert(class.clone(), id);
                        idx.classes.push(class);
                        idx.members.push(Vec::new());
                        idx.factors.push(OnceLock::new());
                        id
                    }
                };
                idx.members[id].push(i);
                ids.push(id);
            }
            idx.of_cell.push(ids);
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, id: ClassId) -> &EqClass {
        &self.classes[id]
    }

    pub fn degree(&self, id: ClassId) -> usize {
        self.classes[id].degree()
    }

    pub fn id(&self, class: &EqClass) -> Option<ClassId> {
        self.by_class.get(class).copied()
    }

    /// Class of cell `i` of dimension `p`.
    pub fn of_cell(&self, p: usize, i: usize) -> ClassId {
        self.of_cell[p][i]
    }

    /// Indices (in the class's dimension) of the cells in the class.
    pub fn members(&self, id: ClassId) -> &[usize] {
        &self.members[id]
    }

    pub fn classes_of_degree(&self, p: usize) -> Vec<ClassId> {
        (0..self.classes.len()).filter(|&id| self.degree(id) == p).collect()
    }

    fn class_of_cell(&self, x: &Complex, c: &Cell) -> ClassId {
        let i = x.index_of(c).expect("valid cell belongs to the complex");
        self.of_cell[c.dim()][i]
    }

    fn representative<'a>(&self, x: &'a Complex, id: ClassId) -> &'a Cell {
        x.cell(self.degree(id), self.members[id][0])
    }

    /// `a ≤ b`: some cell of `a` arises from a cell of `b` by replacing some of
    /// its edges with one of their endpoints each.
    pub fn leq(&self, x: &Complex, a: ClassId, b: ClassId) -> bool {
        let (ea, eb) = (&self.classes[a].edges, &self.classes[b].edges);
        if !ea.iter().all(|e| eb.binary_search(e).is_ok()) {
            return false;
        }
        let c = self.representative(x, b);
        let removed: Vec<EdgeId> = eb.iter().copied().filter(|e| ea.binary_search(e).is_err()).collect();
        let found = endpoint_choices(x.graph(), c, &removed).any(|d| self.class_of_cell(x, &d) == a);
        found
    }

    /// Every class below `b`.
    pub fn lower_set(&self, x: &Complex, b: ClassId) -> Vec<ClassId> {
        let c = self.representative(x, b);
        let eb = &self.classes[b].edges;
        let mut out = HashSet::new();
        for mask in 0u32..(1 << eb.len()) {
            let removed: Vec<EdgeId> = (0..eb.len()).filter(|k| mask >> k & 1 == 1).map(|k| eb[k]).collect();
            for d in endpoint_choices(x.graph(), c, &removed) {
                out.insert(self.class_of_cell(x, &d));
            }
        }
        let mut out: Vec<ClassId> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// The unique collection of one-cell classes below class `id`, one per
    /// edge, in edge order.
    pub fn factors(&self, x: &Complex, id: ClassId) -> Result<Vec<ClassId>> {
        self.factors[id]
            .get_or_init(|| {
                let c = self.representative(x, id);
                let edges = &self.classes[id].edges;
                let mut out = Vec::with_capacity(edges.len());
                for &e in edges {
                    let others: Vec<EdgeId> = edges.iter().copied().filter(|&f| f != e).collect();
                    let mut found: Option<ClassId> = None;
                    for d in endpoint_choices(x.graph(), c, &others) {
                        let k = self.class_of_cell(x, &d);
                        match found {
                            None => found = Some(k),
                            Some(f) if f != k => {
                                return Err(Error::FactorizationNotUnique(format!(
                                    "edge {e} of {} gives {} and {}",
                                    self.classes[id], self.classes[f], self.classes[k]
                                )))
                            }
                            _ => {}
                        }
                    }
                    out.push(found.expect("at least one choice"));
                }
                Ok(out)
            })
            .clone()
    }

    /// One-cell factors of a cell.
    pub fn one_cell_factors(&self, x: &Complex, c: &Cell) -> Result<Vec<ClassId>> {
        if c.dim() == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        self.factors(x, self.class_of_cell(x, c))
    }

    /// All classes of dimension `|factors|` that are upper bounds of the
    /// collection. Empty when the factors repeat or their edges meet.
    pub fn upper_bound_classes(&self, x: &Complex, factors: &[ClassId]) -> Result<Vec<ClassId>> {
        let mut want = factors.to_vec();
        want.sort_unstable();
        if want.windows(2).any(|w| w[0] == w[1]) {
            return Ok(Vec::new());
        }
        let mut edges = Vec::with_capacity(want.len());
        for &f in &want {
            if self.degree(f) != 1 {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    found: self.degree(f),
                });
            }
            edges.push(self.classes[f].edges[0]);
        }
        edges.sort_unstable();
        let Some(candidates) = self.by_edges.get(&edges) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for &cand in candidates {
            let mut fs = self.factors(x, cand)?;
            fs.sort_unstable();
            if fs == want {
                out.push(cand);
            }
        }
        Ok(out)
    }

    /// The unit: the sum of all classes of 0-cells.
    pub fn unit(&self) -> PhiCochain {
        PhiCochain::new(0, self.classes_of_degree(0))
    }

    /// `φ_{[c_1]} ⌣ … ⌣ φ_{[c_k]}` for distinct one-cell classes.
    pub fn monomial(&self, x: &Complex, factors: &[ClassId]) -> Result<PhiCochain> {
        if factors.is_empty() {
            return Ok(self.unit());
        }
        Ok(PhiCochain::new(factors.len(), self.upper_bound_classes(x, factors)?))
    }

    /// Splits a cochain into monomials, grouping its classes by factor
    /// collection. Fails unless every group is exactly a full monomial.
    pub fn as_monomials(&self, x: &Complex, a: &PhiCochain) -> Result<Vec<Vec<ClassId>>> {
        if a.degree == 0 {
            return if a.classes.is_empty() {
                Ok(Vec::new())
            } else if a.classes == self.classes_of_degree(0) {
                Ok(vec![Vec::new()])
            } else {
                Err(Error::NotGenerated("degree-0 cochain other than 0 or 1".into()))
            };
        }
        let mut groups: HashMap<Vec<ClassId>, Vec<ClassId>> = HashMap::new();
        for &c in &a.classes {
            let mut fs = self.factors(x, c)?;
            fs.sort_unstable();
            groups.entry(fs).or_default().push(c);
        }
        let mut out = Vec::new();
        for (fs, mut cs) in groups {
            cs.sort_unstable();
            if self.upper_bound_classes(x, &fs)? != cs {
                return Err(Error::NotGenerated(format!(
                    "classes with factors {fs:?} are not all upper bounds"
                )));
            }
            out.push(fs);
        }
        out.sort();
        Ok(out)
    }

    /// Cup product, expanded over monomials in the degree-one classes.
    pub fn cup_product(&self, x: &Complex, a: &PhiCochain, b: &PhiCochain) -> Result<PhiCochain> {
        let degree = a.degree + b.degree;
        let mut acc: Vec<ClassId> = Vec::new();
        for ka in self.as_monomials(x, a)? {
            for kb in self.as_monomials(x, b)? {
                if ka.iter().any(|f| kb.contains(f)) {
                    continue;
                }
                let mut k: Vec<ClassId> = ka.iter().chain(&kb).copied().collect();
                k.sort_unstable();
                acc.extend(self.monomial(x, &k)?.classes);
            }
        }
        Ok(PhiCochain::from_sum(degree, acc))
    }

    /// `φ(σ)` summed over the cells of a chain.
    pub fn evaluate(&self, a: &PhiCochain, p: usize, cells: &[usize]) -> bool {
        cells
            .iter()
            .filter(|&&i| a.classes.binary_search(&self.of_cell[p][i]).is_ok())
            .count()
            % 2
            == 1
    }
}

/// Cells obtained from `c` by replacing each edge of `removed` with one of
/// its endpoints, in every combination.
fn endpoint_choices<'a>(g: &'a Graph, c: &'a Cell, removed: &'a [EdgeId]) -> impl Iterator<Item = Cell> + 'a {
    (0u32..(1 << removed.len())).map(move |mask| {
        let mut items: Vec<Item> = c.items().to_vec();
        for (k, &e) in removed.iter().enumerate() {
            let v = g.endpoints(e)[(mask >> k & 1) as usize];
            let pos = items.iter().position(|&i| i == Item::edge(e)).unwrap();
            items[pos] = Item::vertex(v);
        }
        Cell::new(items)
    })
}

/// A GF(2) sum of cochains `φ_[c]` of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhiCochain {
    pub degree: usize,
    pub classes: Vec<ClassId>,
}

impl PhiCochain {
    pub fn new(degree: usize, mut classes: Vec<ClassId>) -> Self {
        classes.sort_unstable();
        classes.dedup();
        PhiCochain { degree, classes }
    }

    /// Sum with cancellation in pairs.
    pub fn from_sum(degree: usize, mut classes: Vec<ClassId>) -> Self {
        classes.sort_unstable();
        let mut out: Vec<ClassId> = Vec::with_capacity(classes.len());
        for c in classes {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        PhiCochain {
            degree,
            classes: out,
        }
    }

    pub fn single(degree: usize, class: ClassId) -> Self {
        PhiCochain {
            degree,
            classes: vec![class],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Pairing data between `φ`-cochains and a Morse homology basis: for every
/// basis element, the classes met an odd number of times by `f^∞` of it.
#[derive(Clone, Debug)]
pub struct Pairing {
    odd: Vec<Vec<Vec<ClassId>>>,
}

impl Pairing {
    pub fn new(idx: &ClassIndex, m: &MorseComplexData, h: &MorseHomology) -> Self {
        let odd = (0..h.basis.len())
            .map(|p| {
                let per_cell: Vec<Vec<ClassId>> = (0..m.critical(p).len())
                    .map(|k| odd_classes(idx, p, &m.f_infinity(p, k).cells))
                    .collect();
                h.basis[p]
                    .iter()
                    .map(|b| {
                        let all: Vec<ClassId> = b.ones().flat_map(|k| per_cell[k].iter().copied()).collect();
                        PhiCochain::from_sum(p, all).classes
                    })
                    .collect()
            })
            .collect();
        Pairing { odd }
    }

    pub fn betti(&self, p: usize) -> usize {
        self.odd.get(p).map_or(0, |v| v.len())
    }

    /// `a` evaluated on `f^∞` of basis element `j` of `H_p`.
    pub fn pair(&self, a: &PhiCochain, j: usize) -> Result<bool> {
        let basis = self.odd.get(a.degree).ok_or(Error::DegreeMismatch {
            expected: self.odd.len().saturating_sub(1),
            found: a.degree,
        })?;
        let s = basis.get(j).ok_or_else(|| Error::NotAMember(format!("basis index {j}")))?;
        Ok(a.classes.iter().filter(|c| s.binary_search(c).is_ok()).count() % 2 == 1)
    }

    /// Values of `a` on the whole basis of `H_{deg a}`.
    pub fn evaluations(&self, a: &PhiCochain) -> BitVec {
        let k = self.betti(a.degree);
        BitVec::from_indices(k, (0..k).filter(|&j| self.pair(a, j).unwrap()))
    }
}

fn odd_classes(idx: &ClassIndex, p: usize, cells: &[usize]) -> Vec<ClassId> {
    PhiCochain::from_sum(p, cells.iter().map(|&i| idx.of_cell(p, i)).collect()).classes
}

/// `a` evaluated on `f^∞` of a Morse cycle given over the critical `p`-cells.
pub fn pair(idx: &ClassIndex, a: &PhiCochain, cycle: &BitVec, p: usize, m: &MorseComplexData) -> Result<bool> {
    if a.degree != p {
        return Err(Error::DegreeMismatch {
            expected: p,
            found: a.degree,
        });
    }
    let mut cells = Vec::new();
    for k in cycle.ones() {
        cells.extend(m.f_infinity(p, k).cells.iter().copied());
    }
    Ok(idx.evaluate(a, p, &cells))
}

/// A Z/2 sum of tensors `m(A) ⊗ m(B)` of monomials in a generator list, each
/// monomial given by a bitmask of generator positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    pub terms: Vec<(u64, u64)>,
}

/// Evidence that a product of zero-divisors is nonzero: its matrix of values
/// on pairs of homology basis elements has a 1 at `(left, right)`.
#[derive(Clone, Debug)]
pub struct ZclCertificate {
    pub generators: Vec<ClassId>,
    /// The generators multiplied, as a mask over `generators`.
    pub subset: u64,
    pub left_degree: usize,
    pub left_basis: usize,
    pub right_basis: usize,
    /// Terms of the expansion with both factors nonzero in cohomology.
    pub surviving: TensorElement,
}

#[derive(Clone, Debug)]
pub struct ZclResult {
    pub k: usize,
    pub budget_exhausted: bool,
    pub evaluations: u64,
    pub certificate: Option<ZclCertificate>,
}

/// Largest number of zero-divisors `φ_i ⊗ 1 + 1 ⊗ φ_i`, with distinct `φ_i`
/// from `generators`, whose product is nonzero in `H^* ⊗ H^*` (a repeated
/// factor squares to zero). The search extends nonzero products one
/// generator at a time in increasing order; a product is nonzero when for
/// some `p` the sum over `|A| = p` of `u_A u_{S-A}^T` is nonzero, `u_A` being
/// the values of the monomial `m(A)` on the homology basis.
///
/// `budget` caps the number of monomial evaluations.
pub fn zcl_lower_bound(
    x: &Complex,
    idx: &ClassIndex,
    pairing: &Pairing,
    generators: &[ClassId],
    budget: u64,
) -> Result<ZclResult> {
    if generators.len() > 64 {
        return Err(Error::Precondition("at most 64 generators".into()));
    }
    if let Some(&g) = generators.iter().find(|&&g| idx.degree(g) != 1) {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: idx.degree(g),
        });
    }
    let top = (0..x.dims()).rev().find(|&p| pairing.betti(p) > 0).unwrap_or(0);
    let mut search = Zcl {
        x,
        idx,
        pairing,
        generators,
        memo: HashMap::new(),
        evaluations: 0,
        budget,
        exhausted: false,
        best: (0, None),
        limit: 2 * top,
    };
    let unit = search.u(0)?;
    search.memo.insert(0, unit);
    search.dfs(0, 0)?;
    let (k, cert) = search.best;
    Ok(ZclResult {
        k,
        budget_exhausted: search.exhausted,
        evaluations: search.evaluations,
        certificate: cert,
    })
}

struct Zcl<'a> {
    x: &'a Complex,
    idx: &'a ClassIndex,
    pairing: &'a Pairing,
    generators: &'a [ClassId],
    memo: HashMap<u64, BitVec>,
    evaluations: u64,
    budget: u64,
    exhausted: bool,
    best: (usize, Option<ZclCertificate>),
    limit: usize,
}

impl Zcl<'_> {
    /// Values of the monomial `m(A)` on the homology basis.
    fn u(&self, mask: u64) -> Result<BitVec> {
        let fs: Vec<ClassId> = (0..self.generators.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| self.generators[k])
            .collect();
        let m = self.idx.monomial(self.x, &fs)?;
        Ok(self.pairing.evaluations(&m))
    }

    fn dfs(&mut self, s: u64, from: usize) -> Result<()> {
        for i in from..self.generators.len() {
            if self.exhausted || self.best.0 >= self.limit {
                return Ok(());
            }
            let t = s | 1 << i;
            if t.count_ones() as usize > self.limit {
                return Ok(());
            }
            // new monomials are the subsets of t containing i
            let fresh: Vec<u64> = subsets(s).map(|a| a | 1 << i).collect();
            if self.evaluations + fresh.len() as u64 > self.budget {
                self.exhausted = true;
                return Ok(());
            }
            self.evaluations += fresh.len() as u64;
            let values: Vec<(u64, Result<BitVec>)> =
                fresh.par_iter().map(|&a| (a, self.u(a))).collect();
            for (a, v) in values {
                self.memo.insert(a, v?);
            }
            if let Some(cert) = self.nonzero(t) {
                let k = t.count_ones() as usize;
                if k > self.best.0 {
                    self.best = (k, Some(cert));
                }
                self.dfs(t, i + 1)?;
            }
        }
        Ok(())
    }

    fn nonzero(&self, t: u64) -> Option<ZclCertificate> {
        let k = t.count_ones() as usize;
        let surviving: Vec<(u64, u64)> = subsets(t)
            .filter(|&a| !self.memo[&a].is_zero() && !self.memo[&(t & !a)].is_zero())
            .map(|a| (a, t & !a))
            .collect();
        for p in 0..=k {
            let (rows, cols) = (self.pairing.betti(p), self.pairing.betti(k - p));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut acc = BitMatrix::zeros(rows, cols);
            let mut any = false;
            for &(a, b) in surviving.iter().filter(|(a, _)| a.count_ones() as usize == p) {
                let (ua, ub) = (&self.memo[&a], &self.memo[&b]);
                any = true;
                for r in ua.ones() {
                    for c in ub.ones() {
                        acc.set(r, c, !acc.get(r, c));
                    }
                }
            }
            if !any {
                continue;
            }
            for r in 0..rows {
                if let Some(c) = acc.row(r).first_one() {
                    return Some(ZclCertificate {
                        generators: self.generators.to_vec(),
                        subset: t,
                        left_degree: p,
                        left_basis: r,
                        right_basis: c,
                        surviving: TensorElement {
                            terms: surviving.clone(),
                        },
                    });
                }
            }
        }
        None
    }
}

/// All submasks of `s`, including 0 and `s`.
fn subsets(s: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(s);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & s) };
        Some(cur)
    })
}
