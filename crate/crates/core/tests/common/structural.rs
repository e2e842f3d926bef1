//! Exhaustive structural checks on a built complex. Each returns the number of
//! individual facts checked, or a description of the first violation.

use std::collections::HashMap;

use tc_graphs::cohomology::ClassIndex;
use tc_graphs::complex::{enumerate_ordered, Cell, Chain, Item};
use tc_graphs::gf2::BitMatrix;
use tc_graphs::morse::{classify_intrinsic, initial_reduce, is_order_disrespecting, project_critical, reduce, Label};

use super::Setup;

pub type Check = Result<usize, String>;

pub fn trichotomy(s: &Setup) -> Check {
    let mut n = 0;
    for p in 0..s.x.dims() {
        for i in 0..s.x.count(p) {
            let up = s.w.w(p, i);
            let down = s.w.w_inverse(p, i);
            let label = s.w.label(p, i);
            let ok = match label {
                Label::Critical => up.is_none() && down.is_none(),
                Label::Redundant => up.is_some() && down.is_none(),
                Label::Collapsible => up.is_none() && down.is_some(),
            };
            if !ok {
                return Err(format!("{}: {} labelled {label:?} with pairing {up:?}/{down:?}", s.name, s.x.cell(p, i)));
            }
            if let Some(j) = up {
                if s.w.w_inverse(p + 1, j) != Some(i) || !s.x.boundary_of(p + 1, j).contains(&i) {
                    return Err(format!("{}: W({}) is not a coface paired back", s.name, s.x.cell(p, i)));
                }
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn intrinsic_classification(s: &Setup) -> Check {
    let mut n = 0;
    for p in 0..s.x.dims() {
        for (i, c) in s.x.cells(p).iter().enumerate() {
            let intrinsic = classify_intrinsic(c, &s.tree).map_err(|e| e.to_string())?;
            if intrinsic != s.w.label(p, i) {
                return Err(format!("{}: {c} intrinsic {intrinsic:?}, built {:?}", s.name, s.w.label(p, i)));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn boundary_squared(s: &Setup) -> Check {
    let mut n = 0;
    for p in 2..s.x.dims() {
        for i in 0..s.x.count(p) {
            let d = Chain::from_cells(p - 1, s.x.boundary_of(p, i));
            if !s.x.boundary(&d).unwrap().is_zero() {
                return Err(format!("{}: ∂∂{} ≠ 0", s.name, s.x.cell(p, i)));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn morse_boundary_squared(s: &Setup) -> Check {
    let mut n = 0;
    for p in 2..s.m.dims() {
        let prod: BitMatrix = s.m.boundary(p - 1).mul(s.m.boundary(p));
        if !prod.is_zero() {
            return Err(format!("{}: Morse ∂∂ ≠ 0 in degree {p}", s.name));
        }
        n += 1;
    }
    Ok(n)
}

pub fn flow_of_critical(s: &Setup) -> Check {
    let mut n = 0;
    for p in 0..s.m.dims() {
        for (k, &c) in s.m.critical(p).iter().enumerate() {
            let chain = s.m.f_infinity(p, k);
            for &i in &chain.cells {
                let ok = if i == c { true } else { s.w.label(p, i) == Label::Collapsible };
                if !ok {
                    return Err(format!("{}: f^∞({}) contains {}", s.name, s.x.cell(p, c), s.x.cell(p, i)));
                }
            }
            if !chain.contains(c) {
                return Err(format!("{}: f^∞({}) lost the cell", s.name, s.x.cell(p, c)));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn euler(s: &Setup) -> Check {
    let alt = |v: Vec<usize>| v.iter().enumerate().map(|(p, &k)| if p % 2 == 0 { k as i64 } else { -(k as i64) }).sum::<i64>();
    let raw = alt(s.x.counts());
    let crit = alt(s.m.critical_counts());
    if raw != crit {
        return Err(format!("{}: χ raw {raw} vs critical {crit}", s.name));
    }
    Ok(1)
}

pub fn ordered_counts(s: &Setup) -> Check {
    let o = enumerate_ordered(s.x.graph(), s.n).map_err(|e| e.to_string())?;
    let f: usize = (1..=s.n).product();
    let want: Vec<usize> = s.x.counts().iter().map(|k| k * f).collect();
    if o.counts() != want {
        return Err(format!("{}: ordered {:?} vs n!·unordered {want:?}", s.name, o.counts()));
    }
    Ok(want.len())
}

pub fn cocycles(s: &Setup, idx: &ClassIndex) -> Check {
    let mut n = 0;
    for p in 1..s.x.dims() {
        for j in 0..s.x.count(p) {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for f in s.x.boundary_of(p, j) {
                *counts.entry(idx.of_cell(p - 1, f)).or_default() += 1;
            }
            if let Some((c, _)) = counts.iter().find(|(_, &k)| k % 2 == 1) {
                return Err(format!("{}: φ{} is odd on ∂{}", s.name, idx.class(*c), s.x.cell(p, j)));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn partial_order(s: &Setup, idx: &ClassIndex) -> Check {
    let lower: Vec<Vec<usize>> = (0..idx.len()).map(|b| idx.lower_set(&s.x, b)).collect();
    let mut n = 0;
    for b in 0..idx.len() {
        if lower[b].binary_search(&b).is_err() {
            return Err(format!("{}: {} not ≤ itself", s.name, idx.class(b)));
        }
        for &a in &lower[b] {
            if a != b && lower[a].binary_search(&b).is_ok() {
                return Err(format!("{}: {} and {} below each other", s.name, idx.class(a), idx.class(b)));
            }
            if !lower[a].iter().all(|c| lower[b].binary_search(c).is_ok()) {
                return Err(format!("{}: transitivity fails through {}", s.name, idx.class(a)));
            }
            if !idx.leq(&s.x, a, b) {
                return Err(format!("{}: leq disagrees with the lower set", s.name));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Upper bounds force disjoint edges, factors are unique, and classes below
/// a critical cell's class hold a critical cell.
pub fn upper_bound_properties(s: &Setup, idx: &ClassIndex) -> Check {
    let g = s.x.graph();
    let mut n = 0;
    for b in 0..idx.len() {
        let k = idx.degree(b);
        let lower = idx.lower_set(&s.x, b);
        if k >= 1 {
            let factors = idx.factors(&s.x, b).map_err(|e| format!("{}: {e}", s.name))?;
            let mut ones: Vec<usize> = lower.iter().copied().filter(|&a| idx.degree(a) == 1).collect();
            ones.sort_unstable();
            let mut fs = factors.clone();
            fs.sort_unstable();
            if ones != fs {
                return Err(format!("{}: one-cell classes below {} are not its factors", s.name, idx.class(b)));
            }
            for (i, &f) in factors.iter().enumerate() {
                for &h in &factors[i + 1..] {
                    let (e, d) = (idx.class(f).edges[0], idx.class(h).edges[0]);
                    let [a0, a1] = g.endpoints(e);
                    let [b0, b1] = g.endpoints(d);
                    if e == d || a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
                        return Err(format!("{}: factors of {} share a vertex", s.name, idx.class(b)));
                    }
                }
            }
            n += 1;
        }
        let has_critical = |c: usize| idx.members(c).iter().any(|&i| s.w.label(idx.degree(c), i) == Label::Critical);
        if has_critical(b) {
            for &a in &lower {
                if !has_critical(a) {
                    return Err(format!("{}: {} below a critical class has no critical cell", s.name, idx.class(a)));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

fn pi_f(s: &Setup, c: &Cell) -> Chain {
    let i = s.x.index_of(c).unwrap();
    project_critical(&s.x, &s.w, &Chain::from_cells(c.dim(), vec![i]))
}

fn replace(c: &Cell, from: Item, to: Item) -> Cell {
    c.replace(from, to, false)
}

/// Identities on essential spanning trees: deleted edges block nothing, the
/// initial reduction preserves `πF^∞`, the endpoint faces of `Wc` at a deleted
/// edge flow to zero, and cells with an order-respecting edge over a fully
/// blocked interval flow to zero.
pub fn essential_tree_identities(s: &Setup) -> Check {
    let t = &s.tree;
    if !t.is_essential_tree() {
        return Err(format!("{}: tree is not essential", s.name));
    }
    let root = t.root();
    let mut n = 0;
    for p in 0..s.x.dims() {
        for (i, c) in s.x.cells(p).iter().enumerate() {
            let deleted: Vec<usize> = c.edges().filter(|&e| t.is_deleted(e)).collect();
            for &e in &deleted {
                let ends = t.graph().endpoints(e);
                for v in c.vertices() {
                    if let Some(par) = t.parent(v) {
                        if ends.contains(&par) && (t.tau(e) != root || t.order(v) != 1) {
                            return Err(format!("{}: {v} blocked by deleted edge {e} in {c}", s.name));
                        }
                    }
                }
                n += 1;
            }
            if s.w.label(p, i) == Label::Redundant {
                let (ri, defective) = initial_reduce(c, t).map_err(|e| e.to_string())?;
                if c.edges().all(|e| t.is_deleted(e)) && pi_f(s, c) != pi_f(s, &ri) {
                    return Err(format!("{}: πF^∞ differs between {c} and its initial reduction", s.name));
                }
                if !defective {
                    let wc = s.x.cell(p + 1, s.w.w(p, i).unwrap());
                    for &e in &deleted {
                        for x in [t.tau(e), t.iota(e)] {
                            let face = replace(wc, Item::edge(e), Item::vertex(x));
                            if !pi_f(s, &face).is_zero() {
                                return Err(format!("{}: πF^∞ of {face} is not zero", s.name));
                            }
                            n += 1;
                        }
                    }
                }
                n += 1;
            }
            for e in c.edges().filter(|&e| !t.is_deleted(e)) {
                if is_order_disrespecting(e, c, t).map_err(|e| e.to_string())? {
                    continue;
                }
                let (lo, hi) = (t.order(t.tau(e)), t.order(t.iota(e)));
                let all_blocked = c
                    .vertices()
                    .filter(|&v| lo < t.order(v) && t.order(v) < hi)
                    .all(|v| tc_graphs::morse::is_blocked(v, c, t).unwrap());
                if all_blocked {
                    if !pi_f(s, c).is_zero() {
                        return Err(format!("{}: πF^∞ of {c} is not zero", s.name));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// On trees: every Morse boundary vanishes and `r` preserves `πF^∞`.
pub fn tree_identities(s: &Setup) -> Check {
    if !s.m.all_boundaries_zero() {
        return Err(format!("{}: nonzero Morse boundary on a tree", s.name));
    }
    let mut n = 1;
    for p in 0..s.x.dims() {
        for (i, c) in s.x.cells(p).iter().enumerate() {
            if s.w.label(p, i) == Label::Redundant {
                let r = reduce(c, &s.tree).map_err(|e| e.to_string())?;
                if pi_f(s, c) != pi_f(s, &r) {
                    return Err(format!("{}: πF^∞ differs between {c} and r(c)", s.name));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}
