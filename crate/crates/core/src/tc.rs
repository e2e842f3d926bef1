//! Bounds on the topological complexity of `UD^n(Γ)`: upper bounds from the
//! dimension of the Morse complex, lower bounds from zero-divisor cup length,
//! and the explicit critical cells `Φ_S` and `Ψ_R` that certify equality.

use std::fmt;

use crate::cohomology::{zcl_lower_bound, ClassId, ClassIndex, Pairing, ZclCertificate};
use crate::complex::{enumerate_unordered, Cell, Complex};
use crate::error::{Error, Result};
use crate::graph::{
    build_vertex_disjoint_tree, choose_spanning_tree, find_s_graph_tree, is_s_graph, max_vertex_disjoint_cycles,
    normalize_simple_directions, subdivide_for_n, DisjointCycleTree, EdgeId, Graph, TreeData, VertexId,
};
use crate::morse::{
    build_gradient, classify_intrinsic, morse_boundary, morse_homology, GradientField, Label, MorseComplexData,
    MorseHomology,
};

#[derive(Clone, Debug)]
pub struct TcOptions {
    /// Cap on monomial evaluations in the generic zero-divisor search.
    pub zcl_budget: u64,
    /// Cap on search nodes when looking for vertex-disjoint cycles.
    pub cycle_budget: u64,
    /// Largest generator pool for the generic search.
    pub generator_cap: usize,
}

impl Default for TcOptions {
    fn default() -> Self {
        TcOptions {
            zcl_budget: 1_000_000,
            cycle_budget: 1_000_000,
            generator_cap: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotConnected,
    Degenerate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::NotConnected => "not_connected",
            Status::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    None,
    SGraph,
    VertexDisjoint,
    Generic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::None => "none",
            Method::SGraph => "s_graph",
            Method::VertexDisjoint => "vertex_disjoint_cycles",
            Method::Generic => "generic_zcl",
        })
    }
}

/// A nonzero product of zero-divisors, in printable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub generators: Vec<String>,
    /// Positions in `generators` of the factors multiplied.
    pub factors: Vec<usize>,
    pub left_degree: usize,
    pub left_basis: usize,
    pub right_basis: usize,
    /// Tensor terms `m(A) ⊗ m(B)` of the expansion with both sides nonzero
    /// in cohomology, as factor positions.
    pub surviving: Vec<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct TCReport {
    pub n: usize,
    pub status: Status,
    pub method: Method,
    pub essential: usize,
    pub beta: usize,
    pub k: usize,
    pub lower: usize,
    pub upper_formula: usize,
    pub upper_dimension: usize,
    pub exact: Option<usize>,
    pub budget_exhausted: bool,
    pub betti: Vec<usize>,
    pub critical_counts: Vec<usize>,
    pub witness: Option<Witness>,
    pub trace: Vec<String>,
}

impl TCReport {
    fn empty(n: usize, g: &Graph, status: Status) -> Self {
        TCReport {
            n,
            status,
            method: Method::None,
            essential: g.essential_vertices().len(),
            beta: g.first_betti(),
            k: 0,
            lower: 0,
            upper_formula: 0,
            upper_dimension: 0,
            exact: None,
            budget_exhausted: false,
            betti: Vec::new(),
            critical_counts: Vec::new(),
            witness: None,
            trace: Vec::new(),
        }
    }

    pub fn upper(&self) -> usize {
        self.upper_formula.min(self.upper_dimension)
    }

    fn settle(&mut self) {
        self.exact = (self.status == Status::Ok && self.lower == self.upper()).then_some(self.lower);
    }
}

/// `min{n, ⌊(n+β)/2⌋, m}`, with `m` replaced by `β` when the graph has no
/// essential vertex (a cycle has a critical 1-cell).
pub fn k_parameter(g: &Graph, n: usize) -> usize {
    let beta = g.first_betti();
    let m = match g.essential_vertices().len() {
        0 => beta,
        m => m,
    };
    n.min((n + beta) / 2).min(m)
}

/// `(2K + 1, 2·(top critical dimension) + 1)`.
pub fn upper_bounds(g: &Graph, n: usize, m: &MorseComplexData) -> Result<(usize, usize)> {
    if m.critical(0).len() != 1 {
        return Err(Error::Disconnected);
    }
    let top = m.max_critical_dim().unwrap_or(0);
    Ok((2 * k_parameter(g, n) + 1, 2 * top + 1))
}

/// The Morse-theoretic data for one tree and one `n`.
pub struct Pipeline {
    pub tree: TreeData,
    pub x: Complex,
    pub w: GradientField,
    pub m: MorseComplexData,
    pub h: MorseHomology,
    pub classes: ClassIndex,
    pub pairing: Pairing,
}

impl Pipeline {
    pub fn new(tree: TreeData, n: usize) -> Result<Self> {
        let x = enumerate_unordered(tree.graph(), n)?;
        let w = build_gradient(&x, &tree)?;
        let m = morse_boundary(&x, &w)?;
        let h = morse_homology(&m)?;
        let classes = ClassIndex::new(&x);
        let pairing = Pairing::new(&classes, &m, &h);
        Ok(Pipeline {
            tree,
            x,
            w,
            m,
            h,
            classes,
            pairing,
        })
    }

    fn class_of(&self, c: &Cell) -> Result<ClassId> {
        let i = self
            .x
            .index_of(c)
            .ok_or_else(|| Error::NotAMember(format!("{c} is not a cell of the complex")))?;
        Ok(self.classes.of_cell(c.dim(), i))
    }

    fn label_of(&self, c: &Cell) -> Result<Label> {
        let i = self
            .x
            .index_of(c)
            .ok_or_else(|| Error::NotAMember(format!("{c} is not a cell of the complex")))?;
        Ok(self.w.label(c.dim(), i))
    }

    fn witness(&self, cert: &ZclCertificate) -> Witness {
        let pos = |mask: u64| (0..cert.generators.len()).filter(|k| mask >> k & 1 == 1).collect::<Vec<_>>();
        Witness {
            generators: cert
                .generators
                .iter()
                .map(|&g| self.classes.class(g).to_string())
                .collect(),
            factors: pos(cert.subset),
            left_degree: cert.left_degree,
            left_basis: cert.left_basis,
            right_basis: cert.right_basis,
            surviving: cert.surviving.terms.iter().map(|&(a, b)| (pos(a), pos(b))).collect(),
        }
    }
}

fn step(name: &str, e: impl fmt::Display) -> Error {
    Error::ProofStep {
        step: name.into(),
        message: e.to_string(),
    }
}

fn essential_in_order(t: &TreeData) -> Vec<VertexId> {
    let mut ess = t.graph().essential_vertices();
    ess.sort_by_key(|&v| t.order(v));
    ess
}

/// `Φ_S`: at the `i`-th essential vertex `v_i` in walk order, the edge in
/// direction `s_i` and the vertex in direction 1, plus `n - 2m` vertices
/// stacked along direction 1 beyond the first of those vertices.
pub fn construct_phi_cell(t: &TreeData, s: &[usize], n: usize) -> Result<Cell> {
    let g = t.graph();
    let ess = essential_in_order(t);
    let m = ess.len();
    if s.len() != m {
        return Err(Error::Precondition(format!("sequence of length {} for {m} essential vertices", s.len())));
    }
    if s.iter().any(|&d| d != 2 && d != 3) {
        return Err(Error::Precondition("sequence entries must be 2 or 3".into()));
    }
    if n < 2 * m {
        return Err(Error::Precondition(format!("n = {n} is below 2m = {}", 2 * m)));
    }
    let report = is_s_graph(t);
    if !report.holds() {
        return Err(Error::Precondition(format!("not an S-graph: {}", report.diagnostics.join("; "))));
    }
    let mut vertices = Vec::with_capacity(n - m);
    let mut edges = Vec::with_capacity(m);
    for (&v, &d) in ess.iter().zip(s) {
        let e1 = t.edge_in_direction(v, 1)?;
        if !report.simple_edges.contains(&(v, e1)) {
            return Err(Error::Precondition(format!(
                "direction 1 at vertex {v} does not lead into a simple component"
            )));
        }
        edges.push(t.edge_in_direction(v, d)?);
        vertices.push(t.vertex_in_direction(v, 1)?);
    }
    let mut cur = vertices[0];
    for _ in 0..n - 2 * m {
        cur = t
            .vertex_in_direction(cur, 1)
            .map_err(|_| Error::InsufficientSubdivision { n })?;
        vertices.push(cur);
    }
    let c = Cell::from_parts(&vertices, &edges);
    if c.len() != n || !c.is_valid(g) {
        return Err(Error::InsufficientSubdivision { n });
    }
    if classify_intrinsic(&c, t)? != Label::Critical {
        return Err(step("phi cell", format!("{c} is not critical")));
    }
    Ok(c)
}

/// `Ψ_R`: the cell made of the deleted edges `ẽ_i`, `i ∈ R` (0-based).
pub fn construct_psi_cell(d: &DisjointCycleTree, r: &[usize]) -> Result<Cell> {
    let mut edges: Vec<EdgeId> = Vec::with_capacity(r.len());
    for &i in r {
        edges.push(
            *d.deleted
                .get(i)
                .ok_or_else(|| Error::Precondition(format!("no cycle {i}")))?,
        );
    }
    let t = &d.tree;
    for (a, &e) in edges.iter().enumerate() {
        for &f in &edges[a + 1..] {
            let (ie, jf) = (t.interval(t.wedge(e), t.iota(e)), t.interval(t.wedge(f), t.iota(f)));
            if ie.start() <= jf.end() && jf.start() <= ie.end() {
                return Err(Error::CyclesNotDisjoint(format!("intervals of edges {e} and {f} overlap")));
            }
        }
    }
    let c = Cell::from_parts(&[], &edges);
    if !c.is_valid(t.graph()) {
        return Err(Error::CyclesNotDisjoint(format!("{c} is not a cell")));
    }
    Ok(c)
}

fn factor_pool(p: &Pipeline, cells: &[&Cell]) -> Result<Vec<ClassId>> {
    let mut pool = Vec::new();
    for c in cells {
        for f in p.classes.one_cell_factors(&p.x, c)? {
            if !pool.contains(&f) {
                pool.push(f);
            }
        }
    }
    Ok(pool)
}

fn report_from(g: &Graph, p: &Pipeline, n: usize, method: Method) -> Result<TCReport> {
    let mut r = TCReport::empty(n, g, Status::Ok);
    r.method = method;
    r.k = k_parameter(g, n);
    let (formula, dimension) = upper_bounds(g, n, &p.m)?;
    r.upper_formula = formula;
    r.upper_dimension = dimension;
    r.betti = p.h.betti.clone();
    r.critical_counts = p.m.critical_counts();
    r.lower = 1;
    Ok(r)
}

/// Checks that `class` is the class of exactly the named cell plus redundant
/// cells, and that the cell pairs to 1 with its own Morse cycle.
fn check_companions(p: &Pipeline, c: &Cell) -> Result<()> {
    let id = p.class_of(c)?;
    let dim = c.dim();
    for &i in p.classes.members(id) {
        let other = p.x.cell(dim, i);
        if other != c && p.w.label(dim, i) != Label::Redundant {
            return Err(step("companions", format!("{other} shares the class of {c}")));
        }
    }
    Ok(())
}

/// Runs the argument for S-graphs: `Φ_{(2,…,2)}` and `Φ_{(3,…,3)}` give `2m`
/// one-cell classes whose zero-divisors multiply to something nonzero.
/// `t` must be a spanning tree of a graph sufficiently subdivided for `n`.
pub fn certify_s_graph(g: &Graph, t: &TreeData, n: usize) -> Result<TCReport> {
    let report = is_s_graph(t);
    if !report.holds() {
        return Err(Error::Precondition(format!("not an S-graph: {}", report.diagnostics.join("; "))));
    }
    let t = normalize_simple_directions(t)?;
    let m = essential_in_order(&t).len();
    if n < 2 * m {
        return Err(Error::Precondition(format!("n = {n} is below 2m = {}", 2 * m)));
    }
    let phi2 = construct_phi_cell(&t, &vec![2; m], n).map_err(|e| step("construct Φ_(2,…,2)", e))?;
    let phi3 = construct_phi_cell(&t, &vec![3; m], n).map_err(|e| step("construct Φ_(3,…,3)", e))?;
    let p = Pipeline::new(t, n)?;
    let mut r = report_from(g, &p, n, Method::SGraph)?;
    r.trace.push(format!("tree root {} with {} deleted edges", p.tree.root(), p.tree.deleted_edges().len()));
    r.trace.push(format!("phi(2..2) = {phi2}"));
    r.trace.push(format!("phi(3..3) = {phi3}"));
    for c in [&phi2, &phi3] {
        if p.label_of(c)? != Label::Critical {
            return Err(step("critical", format!("{c} is not critical in the gradient")));
        }
        check_companions(&p, c).map_err(|e| step("companions", e))?;
    }
    let pool = factor_pool(&p, &[&phi2, &phi3]).map_err(|e| step("one-cell factors", e))?;
    if pool.len() != 2 * m {
        return Err(step("one-cell factors", format!("expected {} classes, found {}", 2 * m, pool.len())));
    }
    for c in [&phi2, &phi3] {
        let mut fs = p.classes.one_cell_factors(&p.x, c)?;
        fs.sort_unstable();
        let ub = p.classes.upper_bound_classes(&p.x, &fs)?;
        if ub != vec![p.class_of(c)?] {
            return Err(step("least upper bound", format!("upper bounds of the factors of {c} are {ub:?}")));
        }
    }
    let z = zcl_lower_bound(&p.x, &p.classes, &p.pairing, &pool, u64::MAX)?;
    if z.k < 2 * m {
        return Err(step("zero-divisor product", format!("found a nonzero product of length {} only", z.k)));
    }
    let cert = z.certificate.expect("k > 0 has a certificate");
    // every surviving term pairs mixed sequences S', S''
    let ess = essential_in_order(&p.tree);
    for &(a, b) in &cert.surviving.terms {
        for mask in [a, b] {
            let mut s = vec![0usize; m];
            for (k, &f) in pool.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1) {
                let e = p.classes.class(f).edges[0];
                let j = ess
                    .iter()
                    .position(|&v| p.tree.tau(e) == v)
                    .ok_or_else(|| step("other terms", format!("generator {k} is not at an essential vertex")))?;
                if s[j] != 0 {
                    return Err(step("other terms", "two factors at one vertex survive"));
                }
                s[j] = p.tree.direction_of(ess[j], e).unwrap_or(0);
            }
            let phi = construct_phi_cell(&p.tree, &s, n).map_err(|e| step("other terms", e))?;
            let mono: Vec<ClassId> = (0..pool.len()).filter(|k| mask >> k & 1 == 1).map(|k| pool[k]).collect();
            let expected = vec![p.class_of(&phi)?];
            if p.classes.monomial(&p.x, &mono)?.classes != expected {
                return Err(step("other terms", format!("term is not the class of {phi}")));
            }
        }
    }
    r.trace.push(format!("surviving terms: {}", cert.surviving.terms.len()));
    r.lower = z.k + 1;
    r.witness = Some(p.witness(&cert));
    r.settle();
    Ok(r)
}

/// Runs the argument for `2n` vertex-disjoint cycles: `Ψ_{1..n}` and
/// `Ψ_{n+1..2n}` give `2n` one-cell classes whose zero-divisors multiply to
/// something nonzero.
pub fn certify_vertex_disjoint(g: &Graph, n: usize, options: &TcOptions) -> Result<TCReport> {
    if n == 0 {
        return Err(Error::ZeroRobots);
    }
    let sub = subdivide_for_n(g, n.max(2))?;
    let packing = max_vertex_disjoint_cycles(&sub.graph, options.cycle_budget);
    if packing.cycles.len() < 2 * n {
        return Err(Error::Precondition(format!(
            "need {} vertex-disjoint cycles, found {}{}",
            2 * n,
            packing.cycles.len(),
            if packing.exact { "" } else { " (search budget exhausted)" }
        )));
    }
    let d = build_vertex_disjoint_tree(&sub.graph, &packing.cycles[..2 * n]).map_err(|e| step("tree", e))?;
    let r1: Vec<usize> = (0..n).collect();
    let r2: Vec<usize> = (n..2 * n).collect();
    let psi1 = construct_psi_cell(&d, &r1)?;
    let psi2 = construct_psi_cell(&d, &r2)?;
    let p = Pipeline::new(d.tree.clone(), n)?;
    let mut r = report_from(g, &p, n, Method::VertexDisjoint)?;
    r.trace.push(format!("cycles used: {} (nu {} {})", 2 * n, packing.nu, if packing.exact { "exact" } else { "lower bound" }));
    r.trace.push(format!("deleted edges: {:?}", d.deleted));
    r.trace.push(format!("psi(R1) = {psi1}"));
    r.trace.push(format!("psi(R2) = {psi2}"));
    for c in [&psi1, &psi2] {
        if p.label_of(c)? != Label::Critical {
            return Err(step("critical", format!("{c} is not critical in the gradient")));
        }
        let k = p.m.position(n, p.x.index_of(c).unwrap()).unwrap();
        if !p.m.boundary(n).column(k).is_zero() {
            return Err(step("boundary", format!("Morse boundary of {c} is not zero")));
        }
        if p.classes.members(p.class_of(c)?).len() != 1 {
            return Err(step("companions", format!("class of {c} has other members")));
        }
    }
    let pool = factor_pool(&p, &[&psi1, &psi2]).map_err(|e| step("one-cell factors", e))?;
    if pool.len() != 2 * n {
        return Err(step("one-cell factors", format!("expected {} classes, found {}", 2 * n, pool.len())));
    }
    let z = zcl_lower_bound(&p.x, &p.classes, &p.pairing, &pool, u64::MAX)?;
    if z.k < 2 * n {
        return Err(step("zero-divisor product", format!("found a nonzero product of length {} only", z.k)));
    }
    let cert = z.certificate.expect("k > 0 has a certificate");
    let index_of_generator = |f: ClassId| -> Result<usize> {
        let e = p.classes.class(f).edges[0];
        d.deleted
            .iter()
            .position(|&x| x == e)
            .ok_or_else(|| step("other terms", format!("generator edge {e} is not deleted")))
    };
    for &(a, b) in &cert.surviving.terms {
        if a.count_ones() as usize != n || b.count_ones() as usize != n {
            return Err(step("other terms", "surviving term of unbalanced degree"));
        }
        for mask in [a, b] {
            let mut set = Vec::new();
            let mut mono = Vec::new();
            for k in (0..pool.len()).filter(|k| mask >> k & 1 == 1) {
                set.push(index_of_generator(pool[k])?);
                mono.push(pool[k]);
            }
            let psi = construct_psi_cell(&d, &set).map_err(|e| step("other terms", e))?;
            if p.classes.monomial(&p.x, &mono)?.classes != vec![p.class_of(&psi)?] {
                return Err(step("other terms", format!("term is not the class of {psi}")));
            }
        }
    }
    r.trace.push(format!("surviving terms: {}", cert.surviving.terms.len()));
    r.lower = z.k + 1;
    r.witness = Some(p.witness(&cert));
    r.settle();
    Ok(r)
}

/// Zero-divisor search over the degree-one classes that are nonzero in
/// cohomology, one class per distinct set of values on the `H_1` basis, at
/// most `generator_cap` of them.
pub fn certify_generic(g: &Graph, t: TreeData, n: usize, options: &TcOptions) -> Result<TCReport> {
    let p = Pipeline::new(t, n)?;
    let mut r = report_from(g, &p, n, Method::Generic)?;
    let mut seen = Vec::new();
    let mut pool = Vec::new();
    let mut candidates = 0;
    for c in p.classes.classes_of_degree(1) {
        let u = p
            .pairing
            .evaluations(&crate::cohomology::PhiCochain::single(1, c));
        if u.is_zero() || seen.contains(&u) {
            continue;
        }
        candidates += 1;
        if pool.len() < options.generator_cap {
            seen.push(u);
            pool.push(c);
        }
    }
    r.trace.push(format!("generator pool: {} of {candidates} distinct classes", pool.len()));
    if candidates > pool.len() {
        r.budget_exhausted = true;
    }
    let z = zcl_lower_bound(&p.x, &p.classes, &p.pairing, &pool, options.zcl_budget)?;
    r.trace.push(format!("monomial evaluations: {}", z.evaluations));
    r.budget_exhausted |= z.budget_exhausted;
    r.lower = z.k + 1;
    r.witness = z.certificate.as_ref().map(|c| p.witness(c));
    r.settle();
    Ok(r)
}

/// Bounds `TC(UD^n(Γ))` by the strongest argument that applies: S-graphs
/// with `n ≥ 2m`, then `2n` vertex-disjoint cycles, then a generic search.
/// A failed argument is recorded in the trace before the next is tried.
pub fn tc_report(g: &Graph, n: usize, options: &TcOptions) -> Result<TCReport> {
    if n == 0 || g.vertex_count() == 0 {
        return Ok(TCReport::empty(n, g, Status::Degenerate));
    }
    if !g.is_connected() {
        return Ok(TCReport::empty(n, g, Status::NotConnected));
    }
    let sub = match subdivide_for_n(g, n) {
        Ok(s) => s,
        Err(Error::InsufficientSubdivision { .. }) => return Ok(TCReport::empty(n, g, Status::Degenerate)),
        Err(e) => return Err(e),
    };
    let mut trace = Vec::new();
    let m = g.essential_vertices().len();
    if m > 0 && n >= 2 * m {
        if let Some(t) = find_s_graph_tree(&sub.graph) {
            match certify_s_graph(g, &t, n) {
                Ok(mut r) => {
                    trace.append(&mut r.trace);
                    r.trace = trace;
                    return Ok(r);
                }
                Err(e) => trace.push(format!("s_graph argument failed: {e}")),
            }
        } else {
            trace.push("no S-graph spanning tree found".into());
        }
    }
    let nu = max_vertex_disjoint_cycles(g, options.cycle_budget);
    if nu.nu >= 2 * n {
        match certify_vertex_disjoint(g, n, options) {
            Ok(mut r) => {
                trace.append(&mut r.trace);
                r.trace = trace;
                return Ok(r);
            }
            Err(e) => trace.push(format!("vertex-disjoint argument failed: {e}")),
        }
    }
    let t = choose_spanning_tree(&sub.graph, None)?;
    let x_is_empty = enumerate_unordered(t.graph(), n)?.total_cells() == 0;
    if x_is_empty {
        return Ok(TCReport::empty(n, g, Status::Degenerate));
    }
    let mut r = certify_generic(g, t, n, options)?;
    trace.append(&mut r.trace);
    r.trace = trace;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn k_parameter_examples() {
        assert_eq!(k_parameter(&families::star(3, 1), 2), 1);
        assert_eq!(k_parameter(&families::double_star(4), 4), 2);
        assert_eq!(k_parameter(&families::cycle(4), 3), 1);
        assert_eq!(k_parameter(&families::path(4), 3), 0);
        assert_eq!(k_parameter(&families::complete(6), 1), 1);
    }

    #[test]
    fn degenerate_and_disconnected() {
        let g = families::path(3);
        assert_eq!(tc_report(&g, 0, &TcOptions::default()).unwrap().status, Status::Degenerate);
        let h = Graph::new(2, vec![]).unwrap();
        assert_eq!(tc_report(&h, 1, &TcOptions::default()).unwrap().status, Status::NotConnected);
    }

    #[test]
    fn y_gives_an_interval() {
        let r = tc_report(&families::star(3, 1), 2, &TcOptions::default()).unwrap();
        assert_eq!((r.lower, r.upper()), (2, 3));
        assert_eq!(r.exact, None);
    }

    #[test]
    fn phi_cell_requires_s_graph() {
        let sub = subdivide_for_n(&families::star(3, 1), 2).unwrap();
        let t = choose_spanning_tree(&sub.graph, None).unwrap();
        assert!(matches!(construct_phi_cell(&t, &[2], 2), Err(Error::Precondition(_))));
    }
}
