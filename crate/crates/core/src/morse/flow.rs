//! The flows `f^∞` and `F^∞`, and the Morse complex.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use rayon::prelude::*;

use super::{GradientField, Label};
use crate::complex::{Chain, Complex};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

fn apply_w(w: &GradientField, x: &Chain) -> Chain {
    Chain::from_cells(
        x.dim + 1,
        x.cells.iter().filter_map(|&i| w.w(x.dim, i)).collect(),
    )
}

/// `f^∞(x)` by iterating `f = 1 + ∂W + W∂` until it stabilizes. The cap is the
/// number of cells in the degree plus one.
pub fn f_infinity(x: &Complex, w: &GradientField, chain: &Chain) -> Result<Chain> {
    let cap = x.count(chain.dim) + 1;
    let step = |y: &Chain| -> Result<Chain> {
        let mut out = y.clone();
        let wy = apply_w(w, y);
        if !wy.is_zero() {
            out = out.add(&x.boundary(&wy)?);
        }
        if y.dim > 0 && !y.is_zero() {
            out = out.add(&apply_w(w, &x.boundary(y)?));
        }
        Ok(out)
    };
    iterate(chain, cap, step)
}

/// `F^∞(x)` by iterating `F = 1 + ∂W` until it stabilizes.
pub fn flow_infinity(x: &Complex, w: &GradientField, chain: &Chain) -> Result<Chain> {
    let cap = x.count(chain.dim) + 1;
    iterate(chain, cap, |y| {
        let wy = apply_w(w, y);
        Ok(if wy.is_zero() { y.clone() } else { y.add(&x.boundary(&wy)?) })
    })
}

fn iterate(start: &Chain, cap: usize, step: impl Fn(&Chain) -> Result<Chain>) -> Result<Chain> {
    let mut cur = start.clone();
    for _ in 0..=cap {
        let next = step(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::FlowDidNotStabilize { cap })
}

/// `F^∞` by elimination: repeatedly take the redundant cell of lowest rank in
/// the chain and add `∂W` of it. Returns the result and the redundant cells
/// eliminated, in order.
pub(crate) fn eliminate(x: &Complex, w: &GradientField, chain: &Chain) -> (Chain, Vec<usize>) {
    let p = chain.dim;
    let mut present: HashSet<usize> = chain.cells.iter().copied().collect();
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> = chain
        .cells
        .iter()
        .filter(|&&i| w.label(p, i) == Label::Redundant)
        .map(|&i| Reverse((w.rank(p, i), i)))
        .collect();
    let mut processed = Vec::new();
    while let Some(Reverse((_, s))) = heap.pop() {
        if !present.contains(&s) {
            continue;
        }
        processed.push(s);
        let ws = w.w(p, s).unwrap();
        for f in x.boundary_of(p + 1, ws) {
            if !present.remove(&f) {
                present.insert(f);
                if w.label(p, f) == Label::Redundant {
                    heap.push(Reverse((w.rank(p, f), f)));
                }
            }
        }
    }
    let mut cells: Vec<usize> = present.into_iter().collect();
    cells.sort_unstable();
    (Chain { dim: p, cells }, processed)
}

/// `πF^∞(x)`: the critical part of the flow of `x`.
pub fn project_critical(x: &Complex, w: &GradientField, chain: &Chain) -> Chain {
    let (flowed, _) = eliminate(x, w, chain);
    Chain {
        dim: chain.dim,
        cells: flowed
            .cells
            .into_iter()
            .filter(|&i| w.label(chain.dim, i) == Label::Critical)
            .collect(),
    }
}

/// The Morse complex: critical cells per dimension, the boundary `∂̃ = πF^∞∂`
/// as matrices (rows indexed by critical `(p-1)`-cells, columns by critical
/// `p`-cells) and `f^∞` of every critical cell.
#[derive(Clone, Debug)]
pub struct MorseComplexData {
    critical: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
    boundary: Vec<BitMatrix>,
    f_inf: Vec<Vec<Chain>>,
}

impl MorseComplexData {
    /// Complex indices of the critical `p`-cells.
    pub fn critical(&self, p: usize) -> &[usize] {
        self.critical.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(|c| c.len()).collect()
    }

    pub fn dims(&self) -> usize {
        self.critical.len()
    }

    /// Highest dimension with a critical cell.
    pub fn max_critical_dim(&self) -> Option<usize> {
        (0..self.critical.len()).rev().find(|&p| !self.critical[p].is_empty())
    }

    /// Position among the critical `p`-cells of complex cell `i`.
    pub fn position(&self, p: usize, i: usize) -> Option<usize> {
        self.position.get(p)?.get(&i).copied()
    }

    /// `∂̃_p`; `∂̃_0` has no rows.
    pub fn boundary(&self, p: usize) -> &BitMatrix {
        &self.boundary[p]
    }

    /// `f^∞` of the `k`-th critical `p`-cell.
    pub fn f_infinity(&self, p: usize, k: usize) -> &Chain {
        &self.f_inf[p][k]
    }

    pub fn all_boundaries_zero(&self) -> bool {
        self.boundary.iter().all(|b| b.is_zero())
    }
}

/// Computes `∂̃` and `f^∞` for every critical cell. For a critical `c`, the
/// elimination of `∂c` gives `F^∞∂c`, and `f^∞(c)` is `c` plus `W` of every
/// eliminated cell.
pub fn morse_boundary(x: &Complex, w: &GradientField) -> Result<MorseComplexData> {
    let dims = x.dims();
    let critical: Vec<Vec<usize>> = (0..dims).map(|p| w.critical(p)).collect();
    let position: Vec<HashMap<usize, usize>> = critical
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(k, &i)| (i, k)).collect())
        .collect();
    let mut boundary = vec![BitMatrix::zeros(0, critical[0].len())];
    let mut f_inf = vec![critical[0]
        .iter()
        .map(|&i| Chain::from_cells(0, vec![i]))
        .collect::<Vec<_>>()];
    for p in 1..dims {
        let results: Vec<Result<(Vec<usize>, Chain)>> = critical[p]
            .par_iter()
            .map(|&c| {
                let faces = Chain::from_cells(p - 1, x.boundary_of(p, c));
                let (flowed, processed) = eliminate(x, w, &faces);
                let mut rows = Vec::new();
                for &f in &flowed.cells {
                    match w.label(p - 1, f) {
                        Label::Critical => rows.push(position[p - 1][&f]),
                        Label::Collapsible => {}
                        Label::Redundant => {
                            return Err(Error::GradientInconsistency(format!(
                                "flow of the boundary of {} kept a redundant cell",
                                x.cell(p, c)
                            )))
                        }
                    }
                }
                let mut cells = vec![c];
                cells.extend(processed.iter().map(|&s| w.w(p - 1, s).unwrap()));
                Ok((rows, Chain::from_cells(p, cells)))
            })
            .collect();
        let mut matrix = BitMatrix::zeros(critical[p - 1].len(), critical[p].len());
        let mut chains = Vec::with_capacity(results.len());
        for (k, r) in results.into_iter().enumerate() {
            let (rows, chain) = r?;
            for row in rows {
                matrix.set(row, k, true);
            }
            chains.push(chain);
        }
        boundary.push(matrix);
        f_inf.push(chains);
    }
    Ok(MorseComplexData {
        critical,
        position,
        boundary,
        f_inf,
    })
}
