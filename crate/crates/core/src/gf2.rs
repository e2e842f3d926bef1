//! Linear algebra over the two-element field.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVec({s})")
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// Row-major dense matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
            .collect();
        Self::from_rows(cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.data[r].set(c, bit)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools(&(0..self.rows).map(|r| self.get(r, c)).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        BitVec::from_bools(&self.data.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    /// Reduced row echelon form with pivots chosen left to right; returns the
    /// pivot column of each nonzero row.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i].get(c)) else {
                continue;
            };
            self.data.swap(r, p);
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i != r && self.data[i].get(c) {
                    self.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    m.clone().rref().len()
}

/// Basis of the null space `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    let mut r = m.clone();
    let pivots = r.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVec::unit(m.cols, free);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Incremental echelon basis used for membership tests.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns false when it was already in it.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                for row in &mut self.rows {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Representatives of a basis of `span(cycles) / span(boundaries)`, chosen
/// greedily from `cycles` in the given order.
pub fn quotient_basis(cycles: &[BitVec], boundaries: &[BitVec]) -> Result<Vec<BitVec>> {
    let mut cycle_span = Echelon::new();
    for c in cycles {
        cycle_span.insert(c);
    }
    if let Some(b) = boundaries.iter().find(|b| !cycle_span.contains(b)) {
        return Err(Error::Precondition(format!(
            "boundary {b:?} is not in the span of the cycles"
        )));
    }
    let mut span = Echelon::new();
    for b in boundaries {
        span.insert(b);
    }
    Ok(cycles.iter().filter(|c| span.insert(c)).cloned().collect())
}

/// Rank of a sparse matrix given as columns of sorted row indices, by column
/// reduction with the largest row index as pivot.
pub fn sparse_rank(columns: Vec<Vec<usize>>) -> usize {
    let mut pivot_of: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivot_of.get(&low) {
                Some(other) => col = xor_sorted(&col, other),
                None => {
                    pivot_of.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Symmetric difference of two sorted index lists.
pub fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMatrix::identity(3)), 3);
        assert_eq!(rank(&BitMatrix::zeros(4, 7)), 0);
        assert_eq!(rank(&BitMatrix::from_dense(&[&[1, 1], &[1, 1]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&BitMatrix::identity(3)).is_empty());
        let k = kernel_basis(&BitMatrix::zeros(0, 4));
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(*v, BitVec::unit(4, i));
        }
        let k = kernel_basis(&BitMatrix::from_dense(&[&[1, 1]]));
        assert_eq!(k, vec![BitVec::from_bools(&[true, true])]);
    }

    #[test]
    fn quotient_examples() {
        let e1 = BitVec::unit(2, 0);
        let e2 = BitVec::unit(2, 1);
        let q = quotient_basis(&[e1.clone(), e2.clone()], &[e1.clone()]).unwrap();
        assert_eq!(q, vec![e2.clone()]);
        let q = quotient_basis(&[e1.clone(), e2.clone()], &[e1.clone(), e2.clone()]).unwrap();
        assert!(q.is_empty());
        let q = quotient_basis(&[e1.clone(), e2.clone()], &[]).unwrap();
        assert_eq!(q, vec![e1.clone(), e2]);
        assert!(quotient_basis(&[e1], &[BitVec::unit(2, 1)]).is_err());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        // boundary of a triangle
        let cols = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert_eq!(sparse_rank(cols), 2);
    }

    fn naive_rank(rows: &[Vec<bool>], cols: usize) -> usize {
        let mut rows: Vec<Vec<bool>> = rows.to_vec();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r][c] {
                        for k in 0..cols {
                            let v = rows[rank][k];
                            rows[r][k] ^= v;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
        (0usize..9, 0usize..70).prop_flat_map(|(r, c)| {
            (Just(c), proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r))
        })
    }

    fn build(cols: usize, rows: &[Vec<bool>]) -> BitMatrix {
        BitMatrix::from_rows(cols, rows.iter().map(|r| BitVec::from_bools(r)).collect())
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant((cols, rows) in matrix_strategy()) {
            let m = build(cols, &rows);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(rank(&m), naive_rank(&rows, cols));
        }

        #[test]
        fn rank_nullity((cols, rows) in matrix_strategy()) {
            let m = build(cols, &rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len() + rank(&m), cols);
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn quotient_dimension((cols, rows) in matrix_strategy(), pick in any::<u64>()) {
            let cycles: Vec<BitVec> = rows.iter().map(|r| BitVec::from_bools(r)).collect();
            // boundaries: sums of consecutive cycles selected by `pick`
            let boundaries: Vec<BitVec> = cycles
                .windows(2)
                .enumerate()
                .filter(|(i, _)| pick >> (i % 64) & 1 == 1)
                .map(|(_, w)| { let mut b = w[0].clone(); b.xor_assign(&w[1]); b })
                .collect();
            let q = quotient_basis(&cycles, &boundaries).unwrap();
            let zr = naive_rank(&rows, cols);
            let br = rank(&BitMatrix::from_rows(cols, boundaries.clone()));
            prop_assert_eq!(q.len(), zr - br);
        }

        #[test]
        fn sparse_and_dense_rank_agree((cols, rows) in matrix_strategy()) {
            let m = build(cols, &rows);
            let columns: Vec<Vec<usize>> = (0..cols).map(|c| m.column(c).ones().collect()).collect();
            prop_assert_eq!(sparse_rank(columns), rank(&m));
        }
    }
}
