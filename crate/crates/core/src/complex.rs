//! Cells of the discretized configuration spaces `UD^n` and `D^n`, the
//! cellular boundary and cellular homology over GF(2).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::{sparse_rank, xor_sorted};
use crate::graph::{is_sufficiently_subdivided, EdgeId, Graph, UnionFind, VertexId};

/// A vertex or an edge, packed so that every vertex sorts before every edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(u32);

const EDGE_BIT: u32 = 1 << 31;

impl Item {
    pub fn vertex(v: VertexId) -> Self {
        Item(v as u32)
    }

    pub fn edge(e: EdgeId) -> Self {
        Item(EDGE_BIT | e as u32)
    }

    pub fn is_edge(self) -> bool {
        self.0 & EDGE_BIT != 0
    }

    pub fn as_vertex(self) -> Option<VertexId> {
        (!self.is_edge()).then_some(self.0 as usize)
    }

    pub fn as_edge(self) -> Option<EdgeId> {
        self.is_edge().then_some((self.0 & !EDGE_BIT) as usize)
    }
}

impl std::fmt::Display for Item {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_edge() {
            Some(e) => write!(f, "e{e}"),
            None => write!(f, "v{}", self.0),
        }
    }
}

/// A cell given by its items. Unordered cells keep them sorted; ordered cells
/// keep them by robot label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(Vec<Item>);

pub type OrderedCell = Cell;

impl Cell {
    /// An unordered cell; the items are sorted.
    pub fn new(mut items: Vec<Item>) -> Self {
        items.sort_unstable();
        Cell(items)
    }

    /// An ordered cell; item `i` belongs to robot `i`.
    pub fn ordered(items: Vec<Item>) -> Self {
        Cell(items)
    }

    pub fn from_parts(vertices: &[VertexId], edges: &[EdgeId]) -> Self {
        Cell::new(
            vertices
                .iter()
                .map(|&v| Item::vertex(v))
                .chain(edges.iter().map(|&e| Item::edge(e)))
                .collect(),
        )
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|i| i.is_edge()).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().filter_map(|i| i.as_vertex())
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().filter_map(|i| i.as_edge())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.contains(&Item::vertex(v))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.0.contains(&Item::edge(e))
    }

    /// Whether `x` is a vertex of the cell or an endpoint of one of its edges.
    pub fn occupies(&self, g: &Graph, x: VertexId) -> bool {
        self.0.iter().any(|&i| match i.as_edge() {
            Some(e) => g.endpoints(e).contains(&x),
            None => i.as_vertex() == Some(x),
        })
    }

    /// The cell with `from` replaced by `to`, keeping unordered cells sorted.
    pub fn replace(&self, from: Item, to: Item, ordered: bool) -> Cell {
        let mut items = self.0.clone();
        let k = items.iter().position(|&i| i == from).expect("item in cell");
        items[k] = to;
        if ordered {
            Cell(items)
        } else {
            Cell::new(items)
        }
    }

    /// Closures pairwise disjoint in `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = Vec::new();
        for &i in &self.0 {
            match i.as_edge() {
                Some(e) => {
                    if e >= g.edge_count() || g.is_loop(e) {
                        return false;
                    }
                    seen.extend(g.endpoints(e));
                }
                None => {
                    if i.0 as usize >= g.vertex_count() {
                        return false;
                    }
                    seen.push(i.0 as usize);
                }
            }
        }
        let k = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == k
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A GF(2) chain: sorted indices of cells of one dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Chain {
    pub dim: usize,
    pub cells: Vec<usize>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            cells: Vec::new(),
        }
    }

    pub fn from_cells(dim: usize, mut cells: Vec<usize>) -> Self {
        cells.sort_unstable();
        let mut out: Vec<usize> = Vec::with_capacity(cells.len());
        for c in cells {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        Chain { dim, cells: out }
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        debug_assert_eq!(self.dim, other.dim);
        Chain {
            dim: self.dim,
            cells: xor_sorted(&self.cells, &other.cells),
        }
    }

    pub fn contains(&self, c: usize) -> bool {
        self.cells.binary_search(&c).is_ok()
    }
}

/// All cells of `UD^n(Γ)` or `D^n(Γ)`, indexed per dimension.
#[derive(Clone, Debug)]
pub struct Complex {
    graph: Graph,
    n: usize,
    ordered: bool,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
}

impl Complex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// Highest dimension with at least one cell, or `None` for an empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        (0..self.cells.len()).rev().find(|&p| !self.cells[p].is_empty())
    }

    /// Number of dimension slots, `n + 1`.
    pub fn dims(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self, p: usize) -> &[Cell] {
        self.cells.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, p: usize) -> usize {
        self.cells(p).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    pub fn cell(&self, p: usize, i: usize) -> &Cell {
        &self.cells[p][i]
    }

    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.index.get(c.dim())?.get(c).copied()
    }

    /// Indices of the cells in the boundary of cell `i` of dimension `p`.
    pub fn boundary_of(&self, p: usize, i: usize) -> Vec<usize> {
        let c = &self.cells[p][i];
        let mut out = Vec::with_capacity(2 * p);
        for &item in c.items() {
            let Some(e) = item.as_edge() else { continue };
            let [a, b] = self.graph.endpoints(e);
            for v in [a, b] {
                let face = c.replace(item, Item::vertex(v), self.ordered);
                out.push(self.index[p - 1][&face]);
            }
        }
        Chain::from_cells(p - 1, out).cells
    }

    /// `∂` of a chain.
    pub fn boundary(&self, x: &Chain) -> Result<Chain> {
        if x.dim == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut all = Vec::new();
        for &i in &x.cells {
            all.extend(self.boundary_of(x.dim, i));
        }
        Ok(Chain::from_cells(x.dim - 1, all))
    }

    /// Boundary of a single cell.
    pub fn boundary_cell(&self, c: &Cell) -> Result<Chain> {
        let i = self
            .index_of(c)
            .ok_or_else(|| Error::NotAMember(format!("cell {c} is not in the complex")))?;
        self.boundary(&Chain::from_cells(c.dim(), vec![i]))
    }

    /// Columns of `∂_p`, each the sorted list of its nonzero rows.
    pub fn boundary_columns(&self, p: usize) -> Vec<Vec<usize>> {
        if p == 0 || p >= self.cells.len() {
            return Vec::new();
        }
        (0..self.count(p)).map(|i| self.boundary_of(p, i)).collect()
    }

    /// Betti numbers over GF(2), one per dimension slot.
    pub fn cellular_homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.cells.len())
            .map(|p| sparse_rank(self.boundary_columns(p)))
            .collect();
        (0..self.cells.len())
            .map(|p| self.count(p) - ranks[p] - ranks[p + 1])
            .collect()
    }

    /// One path component.
    pub fn is_connected(&self) -> bool {
        let n0 = self.count(0);
        if n0 == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n0);
        let mut parts = n0;
        for i in 0..self.count(1) {
            let f = self.boundary_of(1, i);
            if f.len() == 2 && uf.union(f[0], f[1]) {
                parts -= 1;
            }
        }
        parts == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(p, c)| if p % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }
}

/// Cells of `UD^n(Γ)`. Refuses graphs that are not sufficiently subdivided for `n`.
pub fn enumerate_unordered(g: &Graph, n: usize) -> Result<Complex> {
    check(g, n)?;
    Ok(enumerate_unordered_unchecked(g, n))
}

/// Cells of `D^n(Γ)`. Refuses graphs that are not sufficiently subdivided for `n`.
pub fn enumerate_ordered(g: &Graph, n: usize) -> Result<Complex> {
    check(g, n)?;
    Ok(enumerate_ordered_unchecked(g, n))
}

fn check(g: &Graph, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRobots);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.is_simple() || !is_sufficiently_subdivided(g, n) {
        return Err(Error::InsufficientSubdivision { n });
    }
    Ok(())
}

/// Unordered cells by a depth-first walk over items in increasing order, so
/// each dimension comes out in lexicographic order. Loops are never used.
pub fn enumerate_unordered_unchecked(g: &Graph, n: usize) -> Complex {
    let items: Vec<Item> = (0..g.vertex_count())
        .map(Item::vertex)
        .chain((0..g.edge_count()).filter(|&e| !g.is_loop(e)).map(Item::edge))
        .collect();
    let words = items.len().div_ceil(64).max(1);
    let closure = |i: Item| -> Vec<VertexId> {
        match i.as_edge() {
            Some(e) => g.endpoints(e).to_vec(),
            None => vec![i.as_vertex().unwrap()],
        }
    };
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (k, &i) in items.iter().enumerate() {
        for v in closure(i) {
            at_vertex[v].push(k);
        }
    }
    // allowed[k]: items after k whose closure misses that of k
    let allowed: Vec<Vec<u64>> = (0..items.len())
        .map(|k| {
            let mut row = vec![0u64; words];
            for j in k + 1..items.len() {
                row[j / 64] |= 1 << (j % 64);
            }
            for v in closure(items[k]) {
                for &j in &at_vertex[v] {
                    row[j / 64] &= !(1u64 << (j % 64));
                }
            }
            row
        })
        .collect();

    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); n + 1];
    let mut stack: Vec<Item> = Vec::with_capacity(n);
    let mut full = vec![0u64; words];
    for j in 0..items.len() {
        full[j / 64] |= 1 << (j % 64);
    }
    fn walk(
        avail: &[u64],
        n: usize,
        items: &[Item],
        allowed: &[Vec<u64>],
        stack: &mut Vec<Item>,
        cells: &mut [Vec<Cell>],
    ) {
        if stack.len() == n {
            let c = Cell(stack.clone());
            cells[c.dim()].push(c);
            return;
        }
        let need = n - stack.len();
        let left: usize = avail.iter().map(|w| w.count_ones() as usize).sum();
        if left < need {
            return;
        }
        for (w, &word) in avail.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let k = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let next: Vec<u64> = avail.iter().zip(&allowed[k]).map(|(a, b)| a & b).collect();
                stack.push(items[k]);
                walk(&next, n, items, allowed, stack, cells);
                stack.pop();
            }
        }
    }
    walk(&full, n, &items, &allowed, &mut stack, &mut cells);
    build(g, n, false, cells)
}

/// Ordered cells: each unordered cell in turn, with its items in every order
/// (permutations in lexicographic order).
pub fn enumerate_ordered_unchecked(g: &Graph, n: usize) -> Complex {
    let base = enumerate_unordered_unchecked(g, n);
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); n + 1];
    for (p, list) in base.cells.iter().enumerate() {
        for c in list {
            let mut perm = c.0.clone();
            loop {
                cells[p].push(Cell(perm.clone()));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    build(g, n, true, cells)
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn build(g: &Graph, n: usize, ordered: bool, cells: Vec<Vec<Cell>>) -> Complex {
    let index = cells
        .iter()
        .map(|list| list.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    Complex {
        graph: g.clone(),
        n,
        ordered,
        cells,
        index,
    }
}
