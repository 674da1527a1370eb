//! LP-duality certificates for disjoint links and separators.
//!
//! The split graph `g′` (see [`crate::reduce::split_and_close`]) carries the
//! primal program "maximize the flow on `f` subject to half-incidence balance
//! and unit capacities" and its dual. An integral primal optimum decomposes
//! into links; an integral dual optimum `(z, y)` yields the cut
//! `F = {uv : σ(u,e)z_u + σ(v,e)z_v < 0}`, which maps to a vertex separator
//! of size at most the optimum.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bigraph::{BidirectedGraph, EdgeId, GraphError, Sign, VertexId};
use crate::oracle::{self, OracleBounds, OracleError};
use crate::ratlp::{
    half, integer_max, is_integral, rational, simplex_max, IntegerSolution, LpError, LpProblem,
    LpSolution, LpStatus, Rational, RationalMatrix,
};
use crate::reduce::{
    attach_terminals, double_for_xpaths, map_cut_to_separator, map_links_back,
    normalize_terminals, split_and_close, ReduceError, SplitGraph, TerminalAttachment,
};
use crate::walks::{
    classify_link, classify_st_link, enumerate_xy_links, Link, LinkVerdict, Walk,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0} program has no optimum ({1:?})")]
    NoOptimum(&'static str, LpStatus),
    #[error("{0} is not integral")]
    NotIntegral(&'static str),
    #[error("support is not balanced at {0}")]
    NotBalanced(VertexId),
    #[error("packing support does not decompose into links: {0}")]
    BadDecomposition(String),
    #[error("dual solution infeasible: {0}")]
    DualInfeasible(String),
    #[error("cut invariant violated: {0}")]
    CutInvariant(String),
}

impl CertifyError {
    /// Errors that mean an invariant of the construction failed, as opposed
    /// to bad input.
    pub fn is_verification_failure(&self) -> bool {
        !matches!(
            self,
            CertifyError::Graph(_)
                | CertifyError::Oracle(_)
                | CertifyError::Reduce(
                    ReduceError::Graph(_)
                        | ReduceError::EqualTerminals
                        | ReduceError::DirectTerminalEdge
                )
        )
    }
}

fn sign_value(s: Sign) -> Rational {
    rational(s.to_i64())
}

fn position_of(g: &BidirectedGraph, f: EdgeId) -> usize {
    g.edge_position(f).expect("closing edge belongs to the graph")
}

/// Column `j` of the program is edge `j` of `g′`, `f` included.
///
/// `maximize x_f  s.t.  ½M·x + ½a·x_f = 0,  0 ≤ x ≤ 1,  0 ≤ x_f ≤ |E(g′)|`.
/// The cap on `x_f` is slack: balance at `s` bounds it by the degree of `s`.
pub fn build_primal(g: &BidirectedGraph, f: EdgeId) -> LpProblem {
    let fpos = position_of(g, f);
    let m = g.edge_count();
    let a_eq = g.incidence_matrix().scale(&half());
    let mut objective = vec![Rational::zero(); m];
    objective[fpos] = rational(1);
    let mut upper = vec![Some(rational(1)); m];
    upper[fpos] = Some(rational(m as i64));
    LpProblem {
        objective,
        b_eq: vec![Rational::zero(); g.vertex_count()],
        a_eq,
        lower: vec![Rational::zero(); m],
        upper,
    }
}

/// The dual program, written as a maximization in equality form.
///
/// Columns: `z⁺` and `z⁻` per vertex (`z = z⁺ - z⁻`), `y` per edge other
/// than `f`, then one surplus per edge. Rows: one per edge of `g′`:
/// `½(σ(u,e)z_u + σ(v,e)z_v) + y_e - surplus_e = 0`, and for `f`,
/// `½aᵀz - surplus_f = 1`. Objective `maximize -1ᵀy`.
#[derive(Debug, Clone)]
pub struct DualProgram {
    pub problem: LpProblem,
    vertices: usize,
    /// Edge positions other than `f`, in order; `y` follows this order.
    y_edges: Vec<usize>,
}

impl DualProgram {
    /// Number of `z` and `y` variables before any encoding.
    pub fn logical_variable_count(&self) -> usize {
        self.vertices + self.y_edges.len()
    }

    pub fn z(&self, values: &[Rational]) -> Vec<Rational> {
        (0..self.vertices)
            .map(|i| &values[i] - &values[self.vertices + i])
            .collect()
    }

    pub fn y(&self, values: &[Rational]) -> Vec<Rational> {
        let base = 2 * self.vertices;
        (0..self.y_edges.len()).map(|k| values[base + k].clone()).collect()
    }
}

pub fn build_dual(g: &BidirectedGraph, f: EdgeId) -> DualProgram {
    let fpos = position_of(g, f);
    let nv = g.vertex_count();
    let ne = g.edge_count();
    let y_edges: Vec<usize> = (0..ne).filter(|&j| j != fpos).collect();
    let cols = 2 * nv + y_edges.len() + ne;
    let mut a = RationalMatrix::zeros(ne, cols);
    let h = half();
    for j in 0..ne {
        let (pu, pv) = g.ends_at(j);
        let e = &g.edges()[j];
        for (p, s) in [(pu, e.sign_u), (pv, e.sign_v)] {
            let c = &h * sign_value(s);
            a.set(j, p, c.clone());
            a.set(j, nv + p, -c);
        }
        a.set(j, 2 * nv + y_edges.len() + j, rational(-1));
    }
    for (k, &j) in y_edges.iter().enumerate() {
        a.set(j, 2 * nv + k, rational(1));
    }
    let mut b_eq = vec![Rational::zero(); ne];
    b_eq[fpos] = rational(1);
    let mut objective = vec![Rational::zero(); cols];
    for k in 0..y_edges.len() {
        objective[2 * nv + k] = rational(-1);
    }
    DualProgram {
        problem: LpProblem {
            objective,
            a_eq: a,
            b_eq,
            lower: vec![Rational::zero(); cols],
            upper: vec![None; cols],
        },
        vertices: nv,
        y_edges,
    }
}

fn terminals_of(g: &BidirectedGraph, f: EdgeId) -> (usize, usize) {
    let fpos = position_of(g, f);
    let (a, b) = g.ends_at(fpos);
    if g.edges()[fpos].sign_u == Sign::Plus {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Links of `g′`.
    pub links: Vec<Link>,
    /// Alternating closed trails avoiding both terminals.
    pub slack_cycles: usize,
}

/// Splits an integral balanced primal solution into links of `g′`.
///
/// `x` is indexed by the edges of `g′` other than `f`, in order.
pub fn decompose_packing(
    g: &BidirectedGraph,
    f: EdgeId,
    x: &[Rational],
    xf: &Rational,
) -> Result<Decomposition, CertifyError> {
    let fpos = position_of(g, f);
    let (s, t) = terminals_of(g, f);
    let others: Vec<usize> = (0..g.edge_count()).filter(|&j| j != fpos).collect();
    if x.len() != others.len() {
        return Err(CertifyError::BadDecomposition("length mismatch".into()));
    }
    let zero = Rational::zero();
    let one = rational(1);
    if !xf.is_integer() || xf.is_negative() || x.iter().any(|v| *v != zero && *v != one) {
        return Err(CertifyError::NotIntegral("primal solution"));
    }
    let mut in_support = vec![false; g.edge_count()];
    for (k, &j) in others.iter().enumerate() {
        in_support[j] = x[k] == one;
    }
    for p in 0..g.vertex_count() {
        let mut balance = Rational::zero();
        for &j in g.incident_at(p) {
            let sign = sign_value(g.sign_at_pos(j, p));
            if j == fpos {
                balance += sign * xf;
            } else if in_support[j] {
                balance += sign;
            }
        }
        if !balance.is_zero() {
            return Err(CertifyError::NotBalanced(g.vertices()[p].clone()));
        }
    }

    let mut used = vec![false; g.edge_count()];
    let next_edge = |used: &[bool], at: usize, arrival: Option<Sign>| {
        g.incident_at(at).iter().copied().find(|&j| {
            in_support[j] && !used[j] && Some(g.sign_at_pos(j, at)) != arrival
        })
    };
    // follows support edges from `start` until a terminal or a dead end
    let trace = |used: &mut Vec<bool>, start: usize, first: usize| -> Result<(Vec<usize>, Vec<usize>), CertifyError> {
        let mut vs = vec![start];
        let mut es = vec![first];
        used[first] = true;
        let mut cur = g.other_pos(first, start);
        loop {
            vs.push(cur);
            if cur == s || cur == t || cur == start {
                return Ok((vs, es));
            }
            let arrival = g.sign_at_pos(*es.last().unwrap(), cur);
            let Some(j) = next_edge(used, cur, Some(arrival)) else {
                return Ok((vs, es));
            };
            used[j] = true;
            es.push(j);
            cur = g.other_pos(j, cur);
        }
    };

    let to_walk = |(vs, es): &(Vec<usize>, Vec<usize>)| {
        Walk::new(
            vs.iter().map(|&p| g.vertices()[p].clone()).collect(),
            es.iter().map(|&j| g.edges()[j].id).collect(),
        )
        .expect("balanced walk")
    };
    let simple = |(vs, _): &(Vec<usize>, Vec<usize>)| {
        let inner = &vs[1..vs.len() - 1];
        let set: BTreeSet<_> = inner.iter().collect();
        set.len() == inner.len() && !inner.contains(&s) && !inner.contains(&t)
    };

    let mut st_paths = Vec::new();
    let mut ss = Vec::new();
    let mut tt = Vec::new();
    for root in [s, t] {
        while let Some(first) = next_edge(&used, root, None) {
            let seg = trace(&mut used, root, first)?;
            let end = *seg.0.last().unwrap();
            if !simple(&seg) || (end != s && end != t) {
                return Err(CertifyError::BadDecomposition(format!(
                    "segment from {} is not a path or almost path",
                    g.vertices()[root]
                )));
            }
            match (root == s, end == s) {
                (true, false) => st_paths.push(to_walk(&seg)),
                (true, true) => ss.push(to_walk(&seg)),
                (false, false) => tt.push(to_walk(&seg)),
                (false, true) => unreachable!("edges at s are consumed first"),
            }
        }
    }
    let mut slack_cycles = 0;
    for j in 0..g.edge_count() {
        if in_support[j] && !used[j] {
            let (a, _) = g.ends_at(j);
            trace(&mut used, a, j)?;
            slack_cycles += 1;
        }
    }
    if ss.len() != tt.len() {
        return Err(CertifyError::BadDecomposition(format!(
            "{} closed pieces at s but {} at t",
            ss.len(),
            tt.len()
        )));
    }
    ss.sort_by_key(|w| w.edges()[0]);
    tt.sort_by_key(|w| w.edges()[0]);
    let mut links: Vec<Link> = st_paths.into_iter().map(Link::Path).collect();
    links.extend(ss.into_iter().zip(tt).map(|(a, b)| Link::Turnaround {
        source_part: a,
        target_part: b,
    }));
    let total: usize = links.iter().map(Link::weight).sum();
    if rational(total as i64) != *xf {
        return Err(CertifyError::BadDecomposition(format!(
            "link weight {total} differs from flow {xf}"
        )));
    }
    Ok(Decomposition {
        links,
        slack_cycles,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    pub edges: BTreeSet<EdgeId>,
}

/// `σ(u,e)z_u + σ(v,e)z_v` for the edge at position `j`.
pub fn edge_potential(g: &BidirectedGraph, j: usize, z: &[Rational]) -> Rational {
    let (pu, pv) = g.ends_at(j);
    let e = &g.edges()[j];
    sign_value(e.sign_u) * &z[pu] + sign_value(e.sign_v) * &z[pv]
}

/// The cut of an integral dual solution. `z` is indexed by vertex position,
/// `y` by the edges other than `f`.
pub fn extract_cut(
    g: &BidirectedGraph,
    f: EdgeId,
    z: &[Rational],
    y: &[Rational],
) -> Result<EdgeCut, CertifyError> {
    let fpos = position_of(g, f);
    if z.len() != g.vertex_count() || y.len() + 1 != g.edge_count() {
        return Err(CertifyError::DualInfeasible("length mismatch".into()));
    }
    if !is_integral(z) || !is_integral(y) {
        return Err(CertifyError::NotIntegral("dual solution"));
    }
    let two = rational(2);
    let mut k = 0;
    for j in 0..g.edge_count() {
        let pot = edge_potential(g, j, z);
        if j == fpos {
            if pot < two {
                return Err(CertifyError::DualInfeasible(format!(
                    "terminal potentials differ by {pot}, need at least 2"
                )));
            }
            continue;
        }
        if y[k].is_negative() || pot + &two * &y[k] < Rational::zero() {
            return Err(CertifyError::DualInfeasible(format!(
                "edge {} violates its dual row",
                g.edges()[j].id
            )));
        }
        k += 1;
    }
    let edges: BTreeSet<EdgeId> = (0..g.edge_count())
        .filter(|&j| edge_potential(g, j, z).is_negative())
        .map(|j| g.edges()[j].id)
        .collect();
    if edges.contains(&f) {
        return Err(CertifyError::CutInvariant("closing edge in cut".into()));
    }
    let total: Rational = y.iter().sum();
    if rational(edges.len() as i64) > total {
        return Err(CertifyError::CutInvariant(format!(
            "cut of size {} exceeds dual value {total}",
            edges.len()
        )));
    }
    Ok(EdgeCut { edges })
}

/// Everything computed on the split graph.
#[derive(Debug, Clone)]
pub struct LpTrace {
    pub split: SplitGraph,
    /// Optimum of the relaxation (P), as returned by the simplex.
    pub primal: LpSolution,
    /// Optimum of (D).
    pub dual: LpSolution,
    /// Best integral point of (P), found by branch and bound.
    pub integer: IntegerSolution,
    /// Integral values on the edges other than `f`.
    pub x: Vec<Rational>,
    pub xf: Rational,
    /// Dual potentials by vertex position of the split graph.
    pub z: Vec<Rational>,
    /// Dual edge variables on the edges other than `f`.
    pub y: Vec<Rational>,
    pub cut: EdgeCut,
    pub decomposition: Decomposition,
}

impl LpTrace {
    pub fn z_at(&self, v: &VertexId) -> Option<&Rational> {
        self.split.graph.vertex_position(v).map(|p| &self.z[p])
    }

    /// The relaxation optimum exceeds the best integral point.
    pub fn has_integrality_gap(&self) -> bool {
        self.primal.objective_value > self.xf
    }
}

fn solve_split(split: SplitGraph) -> Result<LpTrace, CertifyError> {
    let g = &split.graph;
    let fpos = position_of(g, split.f);
    let primal_lp = build_primal(g, split.f);
    let primal = simplex_max(&primal_lp)?;
    if primal.status != LpStatus::Optimal {
        return Err(CertifyError::NoOptimum("primal", primal.status));
    }
    let dual_lp = build_dual(g, split.f);
    let dual = simplex_max(&dual_lp.problem)?;
    if dual.status != LpStatus::Optimal {
        return Err(CertifyError::NoOptimum("dual", dual.status));
    }
    let integer = integer_max(&primal_lp, Some(primal.clone()), None)?;
    if integer.status != LpStatus::Optimal {
        return Err(CertifyError::NoOptimum("integer primal", integer.status));
    }
    let x: Vec<Rational> = (0..g.edge_count())
        .filter(|&j| j != fpos)
        .map(|j| integer.values[j].clone())
        .collect();
    let xf = integer.values[fpos].clone();
    let z = dual_lp.z(&dual.values);
    let y = dual_lp.y(&dual.values);
    let decomposition = decompose_packing(g, split.f, &x, &xf)?;
    let cut = extract_cut(g, split.f, &z, &y)?;
    Ok(LpTrace {
        split,
        primal,
        dual,
        integer,
        x,
        xf,
        z,
        y,
        cut,
        decomposition,
    })
}

/// True iff `g` has an X–Y link. Exact: decided by branch and bound.
pub fn has_xy_link(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
) -> Result<bool, CertifyError> {
    if x.is_empty() || y.is_empty() {
        return Ok(false);
    }
    let att = attach_terminals(g, x, y)?;
    let split = split_and_close(&att.graph, &att.s, &att.t)?;
    has_flow(&split)
}

/// True iff `g` has an `s`–`t` link.
pub fn has_st_link(g: &BidirectedGraph, s: &VertexId, t: &VertexId) -> Result<bool, CertifyError> {
    let normalized = normalize_terminals(g, s, t)?;
    match split_and_close(&normalized, s, t) {
        Err(ReduceError::DirectTerminalEdge) => Ok(true),
        Err(e) => Err(e.into()),
        Ok(split) => has_flow(&split),
    }
}

/// True iff `g` has a nontrivial X–X path.
pub fn has_x_path(g: &BidirectedGraph, x: &BTreeSet<VertexId>) -> Result<bool, CertifyError> {
    if x.len() < 2 {
        return Ok(false);
    }
    let d = double_for_xpaths(g, x)?;
    has_xy_link(&d.graph, &d.x1, &d.x2)
}

fn has_flow(split: &SplitGraph) -> Result<bool, CertifyError> {
    let p = build_primal(&split.graph, split.f);
    let root = simplex_max(&p)?;
    if root.objective_value.is_zero() {
        return Ok(false);
    }
    let one = rational(1);
    let ip = integer_max(&p, Some(root), Some(&one))?;
    Ok(ip.status == LpStatus::Optimal && ip.objective_value >= one)
}

/// Where the reported separator came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorSource {
    /// The image of the dual cut, unchanged.
    Dual,
    /// The dual image with redundant vertices removed.
    Minimized,
    /// Subset search in increasing size found a smaller set.
    Search,
}

impl SeparatorSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SeparatorSource::Dual => "dual",
            SeparatorSource::Minimized => "minimized",
            SeparatorSource::Search => "search",
        }
    }
}

/// Largest number of candidate sets the fallback search may test.
pub const SEARCH_BUDGET: usize = 4096;

/// Drops redundant vertices from `start` (in id order), then looks for a
/// strictly smaller separator among the candidates by increasing size, as
/// long as that takes at most [`SEARCH_BUDGET`] tests.
fn refine_separator(
    start: BTreeSet<VertexId>,
    candidates: &[VertexId],
    separates: impl Fn(&BTreeSet<VertexId>) -> Result<bool, CertifyError>,
) -> Result<(BTreeSet<VertexId>, SeparatorSource), CertifyError> {
    let mut current = start.clone();
    for v in &start {
        let mut smaller = current.clone();
        smaller.remove(v);
        if separates(&smaller)? {
            current = smaller;
        }
    }
    let source = if current == start {
        SeparatorSource::Dual
    } else {
        SeparatorSource::Minimized
    };
    let n = candidates.len();
    let below = current.len().min(n + 1);
    let total = (0..below).fold(0usize, |acc, k| acc.saturating_add(binomial(n, k)));
    if total > SEARCH_BUDGET {
        return Ok((current, source));
    }
    for k in 0..below {
        for combo in crate::ratlp::regular::combinations(n, k) {
            let set: BTreeSet<VertexId> = combo.iter().map(|&i| candidates[i].clone()).collect();
            if separates(&set)? {
                return Ok((set, SeparatorSource::Search));
            }
        }
    }
    Ok((current, source))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Verification flags of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks {
    /// Relaxation optimum equals dual optimum.
    pub duality: bool,
    /// The simplex returned an integral basic optimum of the relaxation.
    /// Informational: the relaxation is only half-integral in general.
    pub relaxation_integral: bool,
    /// The relaxation optimum exceeds the packing value. Informational.
    pub integrality_gap: bool,
    pub dual_integral: bool,
    /// The integral support is balanced at every vertex.
    pub balanced: bool,
    /// Every link classifies as a link of the input graph.
    pub links_valid: bool,
    pub disjoint: bool,
    /// The link weights add up to the value.
    pub value_matches_links: bool,
    pub cut_excludes_closing: bool,
    /// `|F| ≤ 1ᵀy`.
    pub cut_bound: bool,
    /// `|S| ≤ value`.
    pub separator_bound: bool,
    /// Oracle re-check of the separator; `None` when beyond oracle bounds.
    pub separator_valid: Option<bool>,
    pub separator_source: SeparatorSource,
    /// Closed alternating trails in the support that avoid `s` and `t`.
    pub slack_cycles: usize,
    /// Relaxations solved by branch and bound.
    pub branch_nodes: usize,
}

impl Checks {
    /// Everything about the LP side and the links.
    pub fn lp_passed(&self) -> bool {
        self.duality
            && self.dual_integral
            && self.balanced
            && self.links_valid
            && self.disjoint
            && self.value_matches_links
            && self.cut_excludes_closing
            && self.cut_bound
    }

    pub fn passed(&self) -> bool {
        self.lp_passed() && self.separator_bound && self.separator_valid != Some(false)
    }

    fn trivial() -> Self {
        Checks {
            duality: true,
            relaxation_integral: true,
            integrality_gap: false,
            dual_integral: true,
            balanced: true,
            links_valid: true,
            disjoint: true,
            value_matches_links: true,
            cut_excludes_closing: true,
            cut_bound: true,
            separator_bound: true,
            separator_valid: Some(true),
            separator_source: SeparatorSource::Dual,
            slack_cycles: 0,
            branch_nodes: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MengerCertificate {
    /// Packing value: paths once, turnarounds twice.
    pub value: usize,
    /// Links of the input graph.
    pub links: Vec<Link>,
    pub separator: BTreeSet<VertexId>,
    /// Image of the dual cut before refinement.
    pub dual_separator: BTreeSet<VertexId>,
    /// Optimum of the relaxation.
    pub primal_value: Rational,
    pub dual_value: Rational,
    pub checks: Checks,
    /// `None` when the instance was settled without solving.
    pub trace: Option<LpTrace>,
    /// The terminal attachment, for the set version.
    pub attachment: Option<TerminalAttachment>,
}

fn pairwise_disjoint(links: &[Link], shared: &BTreeSet<VertexId>) -> bool {
    let sets: Vec<BTreeSet<VertexId>> = links
        .iter()
        .map(|l| l.vertex_set().difference(shared).cloned().collect())
        .collect();
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

fn base_checks(trace: &LpTrace, value: usize, links: &[Link], separator: &BTreeSet<VertexId>) -> Checks {
    let primal_value = &trace.primal.objective_value;
    let dual_value = -&trace.dual.objective_value;
    let y_total: Rational = trace.y.iter().sum();
    Checks {
        duality: *primal_value == dual_value,
        relaxation_integral: is_integral(&trace.primal.values),
        integrality_gap: trace.has_integrality_gap(),
        dual_integral: is_integral(&trace.z) && is_integral(&trace.y),
        balanced: true,
        links_valid: true,
        disjoint: true,
        value_matches_links: links.iter().map(Link::weight).sum::<usize>() == value,
        cut_excludes_closing: !trace.cut.edges.contains(&trace.split.f),
        cut_bound: rational(trace.cut.edges.len() as i64) <= y_total,
        separator_bound: separator.len() <= value,
        separator_valid: None,
        separator_source: SeparatorSource::Dual,
        slack_cycles: trace.decomposition.slack_cycles,
        branch_nodes: trace.integer.nodes,
    }
}

fn to_usize(x: &Rational) -> Result<usize, CertifyError> {
    if !x.is_integer() || x.is_negative() {
        return Err(CertifyError::NotIntegral("packing value"));
    }
    x.to_integer()
        .try_into()
        .map_err(|_| CertifyError::NotIntegral("packing value"))
}

pub fn solve_menger(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
) -> Result<MengerCertificate, CertifyError> {
    solve_menger_with(g, x, y, &OracleBounds::default())
}

/// Certificate for X–Y links; the separator is re-checked by brute force
/// when `g` is within `verify`.
pub fn solve_menger_with(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
    verify: &OracleBounds,
) -> Result<MengerCertificate, CertifyError> {
    let mut cert = menger_core(g, x, y)?;
    if cert.trace.is_some() {
        let candidates = g.vertices().to_vec();
        let (separator, source) = refine_separator(cert.dual_separator.clone(), &candidates, |c| {
            let h = g.delete_vertices(c)?;
            let xs = x.difference(c).cloned().collect();
            let ys = y.difference(c).cloned().collect();
            Ok(!has_xy_link(&h, &xs, &ys)?)
        })?;
        cert.checks.separator_bound = separator.len() <= cert.value;
        cert.checks.separator_source = source;
        cert.separator = separator;
    }
    if verify.admits(g) {
        cert.checks.separator_valid = Some(oracle::separates(g, x, y, &cert.separator)?);
    }
    Ok(cert)
}

/// Packing, links and the raw dual separator, without refinement or oracle.
fn menger_core(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
) -> Result<MengerCertificate, CertifyError> {
    g.check_vertices(x.iter().chain(y))?;
    if x.is_empty() || y.is_empty() {
        return Ok(MengerCertificate {
            value: 0,
            links: Vec::new(),
            separator: BTreeSet::new(),
            dual_separator: BTreeSet::new(),
            primal_value: Rational::zero(),
            dual_value: Rational::zero(),
            checks: Checks::trivial(),
            trace: None,
            attachment: None,
        });
    }
    let attachment = attach_terminals(g, x, y)?;
    let split = split_and_close(&attachment.graph, &attachment.s, &attachment.t)?;
    let trace = solve_split(split)?;
    let chain = [&attachment.map, &trace.split.map];
    let links = map_links_back(&chain, &trace.decomposition.links)?;
    let separator = map_cut_to_separator(&chain, &trace.cut.edges)?;
    let value = to_usize(&trace.xf)?;

    let mut checks = base_checks(&trace, value, &links, &separator);
    checks.links_valid = links
        .iter()
        .all(|l| !matches!(classify_link(g, l, x, y), LinkVerdict::NotALink(_)));
    checks.disjoint = pairwise_disjoint(&links, &BTreeSet::new());
    Ok(MengerCertificate {
        value,
        links,
        dual_separator: separator.clone(),
        separator,
        primal_value: trace.primal.objective_value.clone(),
        dual_value: -&trace.dual.objective_value,
        checks,
        trace: Some(trace),
        attachment: Some(attachment),
    })
}

pub fn solve_st(
    g: &BidirectedGraph,
    s: &VertexId,
    t: &VertexId,
) -> Result<MengerCertificate, CertifyError> {
    solve_st_with(g, s, t, &OracleBounds::default())
}

/// Certificate for internally disjoint `s`–`t` links; the separator avoids
/// `s` and `t`.
pub fn solve_st_with(
    g: &BidirectedGraph,
    s: &VertexId,
    t: &VertexId,
    verify: &OracleBounds,
) -> Result<MengerCertificate, CertifyError> {
    let normalized = normalize_terminals(g, s, t)?;
    let split = split_and_close(&normalized, s, t)?;
    let trace = solve_split(split)?;
    let chain = [&trace.split.map];
    let links = map_links_back(&chain, &trace.decomposition.links)?;
    let dual_separator = map_cut_to_separator(&chain, &trace.cut.edges)?;
    let value = to_usize(&trace.xf)?;

    let mut checks = base_checks(&trace, value, &links, &dual_separator);
    checks.links_valid = links
        .iter()
        .all(|l| !matches!(classify_st_link(g, l, s, t), LinkVerdict::NotALink(_)));
    let ends: BTreeSet<VertexId> = [s.clone(), t.clone()].into_iter().collect();
    checks.disjoint = pairwise_disjoint(&links, &ends);
    let candidates: Vec<VertexId> = g.vertices().iter().filter(|v| !ends.contains(*v)).cloned().collect();
    let (separator, source) = refine_separator(dual_separator.clone(), &candidates, |c| {
        Ok(!has_st_link(&g.delete_vertices(c)?, s, t)?)
    })?;
    checks.separator_bound = separator.len() <= value && separator.is_disjoint(&ends);
    checks.separator_source = source;
    if verify.admits(g) {
        checks.separator_valid = Some(oracle::separates_st(g, s, t, &separator)?);
    }
    Ok(MengerCertificate {
        value,
        links,
        separator,
        dual_separator,
        primal_value: trace.primal.objective_value.clone(),
        dual_value: -&trace.dual.objective_value,
        checks,
        trace: Some(trace),
        attachment: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPathChecks {
    pub paths_valid: bool,
    pub disjoint: bool,
    /// `|S| ≤ 2 · packing`.
    pub separator_bound: bool,
    pub separator_valid: Option<bool>,
    pub separator_source: SeparatorSource,
}

impl XPathChecks {
    pub fn passed(&self) -> bool {
        self.paths_valid && self.disjoint && self.separator_bound && self.separator_valid != Some(false)
    }
}

/// Disjoint X-paths and a hitting set of at most twice their number.
#[derive(Debug, Clone)]
pub struct XPathCertificate {
    /// Number of disjoint X-paths.
    pub packing: usize,
    pub paths: Vec<Walk>,
    pub separator: BTreeSet<VertexId>,
    /// Certificate on the doubled graph, its separator left unrefined; its
    /// value is `2 · packing`.
    pub doubled: MengerCertificate,
    pub checks: XPathChecks,
}

impl XPathCertificate {
    pub fn passed(&self) -> bool {
        self.checks.passed() && self.doubled.checks.lp_passed()
    }
}

pub fn solve_xpaths(g: &BidirectedGraph, x: &BTreeSet<VertexId>) -> Result<XPathCertificate, CertifyError> {
    solve_xpaths_with(g, x, &OracleBounds::default())
}

/// Solves on two disjoint copies of `g`, where every X-path of one copy and
/// every X-path of the other form a turnaround. The dual cut must clear one
/// copy entirely: the copy on the `s` side when `z_s > 0`, otherwise the `t`
/// side (then `z_t < 0`, since `z_s - z_t ≥ 2`).
pub fn solve_xpaths_with(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    verify: &OracleBounds,
) -> Result<XPathCertificate, CertifyError> {
    let doubled_graph = double_for_xpaths(g, x)?;
    let doubled = menger_core(&doubled_graph.graph, &doubled_graph.x1, &doubled_graph.x2)?;
    let map = &doubled_graph.map;
    let paths = doubled
        .links
        .iter()
        .map(|l| match l {
            Link::Turnaround { source_part, .. } => map.project_walk(source_part),
            Link::Path(_) => Err(ReduceError::InvalidDerivedLink(
                "copies of X are never joined by a path".into(),
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let keep_copy = match &doubled.trace {
        Some(trace) if !trace.z_at(&trace.split.s).expect("terminal").is_positive() => 1,
        _ => 0,
    };
    let projected = doubled
        .separator
        .iter()
        .filter(|v| map.copy_of(v) == Some(keep_copy))
        .map(|v| map.pull_vertex(v))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let packing = paths.len();
    let (separator, source) = refine_separator(projected, g.vertices(), |c| {
        let h = g.delete_vertices(c)?;
        Ok(!has_x_path(&h, &x.difference(c).cloned().collect())?)
    })?;
    let path_links: Vec<Link> = paths.iter().cloned().map(Link::Path).collect();
    let mut checks = XPathChecks {
        paths_valid: paths.iter().all(|w| {
            !w.is_trivial()
                && x.contains(w.first())
                && x.contains(w.last())
                && crate::walks::is_path(g, w)
        }),
        disjoint: pairwise_disjoint(&path_links, &BTreeSet::new()),
        separator_bound: separator.len() <= 2 * packing && 2 * packing == doubled.value,
        separator_valid: None,
        separator_source: source,
    };
    if verify.admits(g) {
        let h = g.delete_vertices(&separator)?;
        let rest: BTreeSet<VertexId> = x.difference(&separator).cloned().collect();
        checks.separator_valid = Some(oracle::x_paths(&h, &rest).is_empty());
    }
    Ok(XPathCertificate {
        packing,
        paths,
        separator,
        doubled,
        checks,
    })
}

/// Exhaustive re-check of the cut against every `s`–`t` link of `g′`
/// other than `f` itself.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CutAudit {
    pub paths: usize,
    pub turnarounds: usize,
    pub failures: Vec<String>,
}

fn word_mask(g: &BidirectedGraph, w: &Walk) -> Vec<u64> {
    let mut words = vec![0u64; g.vertex_count().div_ceil(64)];
    for v in w.vertices() {
        let p = g.vertex_position(v).expect("walk of g");
        words[p / 64] |= 1 << (p % 64);
    }
    words
}

/// Every link must meet the cut, and the potentials must telescope:
/// `z_t - z_s` along a path and twice that along a turnaround.
pub fn audit_cut(trace: &LpTrace) -> CutAudit {
    let g = &trace.split.graph;
    let (s, t, f) = (&trace.split.s, &trace.split.t, trace.split.f);
    let zs = trace.z_at(s).expect("terminal").clone();
    let zt = trace.z_at(t).expect("terminal").clone();
    let gap = &zt - &zs;
    let sum = |w: &Walk| -> Rational {
        w.edges()
            .iter()
            .map(|&e| edge_potential(g, g.edge_position(e).unwrap(), &trace.z))
            .sum()
    };
    let hits = |w: &Walk| w.edges().iter().any(|e| trace.cut.edges.contains(e));
    let mut audit = CutAudit::default();
    let single = |v: &VertexId| [v.clone()].into_iter().collect::<BTreeSet<_>>();
    for w in crate::walks::enumerate_paths(g, &single(s), &single(t)) {
        if w.edges().contains(&f) {
            continue;
        }
        audit.paths += 1;
        if sum(&w) != gap {
            audit.failures.push(format!("path {:?} sums to {}", w.vertices(), sum(&w)));
        }
        if !hits(&w) {
            audit.failures.push(format!("path {:?} avoids the cut", w.vertices()));
        }
    }
    let parts = |root: &VertexId, avoid: &VertexId| -> Vec<(Vec<u64>, Rational, bool)> {
        crate::walks::enumerate_almost_paths(g, root)
            .into_iter()
            .filter(|w| !w.vertices().contains(avoid))
            .map(|w| (word_mask(g, &w), sum(&w), hits(&w)))
            .collect()
    };
    let ss = parts(s, t);
    let tt = parts(t, s);
    let double_gap = &gap + &gap;
    for (ma, sa, ha) in &ss {
        for (mb, sb, hb) in &tt {
            if ma.iter().zip(mb).any(|(a, b)| a & b != 0) {
                continue;
            }
            audit.turnarounds += 1;
            if sa + sb != double_gap {
                audit.failures.push(format!("turnaround sums to {}", sa + sb));
            }
            if !ha && !hb {
                audit.failures.push("turnaround avoids the cut".into());
            }
        }
    }
    audit
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoTurnaroundVerdict {
    /// Some X–Y turnaround exists.
    NotApplicable,
    /// Solver value, oracle packing and oracle separator all equal this.
    Equal(usize),
    Violated {
        solver: usize,
        oracle_max: usize,
        oracle_min: oracle::SeparatorSize,
    },
}

/// Without X–Y turnarounds the packing value equals the minimum separator.
pub fn check_no_turnaround_equality(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
    bounds: &OracleBounds,
) -> Result<NoTurnaroundVerdict, CertifyError> {
    if !bounds.admits(g) {
        return Err(OracleError::SizeBoundExceeded {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            bounds: *bounds,
        }
        .into());
    }
    if enumerate_xy_links(g, x, y).iter().any(|l| !l.is_path()) {
        return Ok(NoTurnaroundVerdict::NotApplicable);
    }
    let cert = solve_menger_with(g, x, y, bounds)?;
    let oracle_max = oracle::max_links(g, x, y, bounds)?.value;
    let oracle_min = oracle::min_separator(g, x, y, bounds)?.size;
    if cert.value == oracle_max && oracle_min == oracle::SeparatorSize::Finite(oracle_max) {
        Ok(NoTurnaroundVerdict::Equal(cert.value))
    } else {
        Ok(NoTurnaroundVerdict::Violated {
            solver: cert.value,
            oracle_max,
            oracle_min,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::GraphBuilder;
    use crate::fixtures;
    use crate::walks::enumerate_st_links;

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    fn set(items: &[&str]) -> BTreeSet<VertexId> {
        items.iter().map(|s| v(s)).collect()
    }

    fn short_path() -> BidirectedGraph {
        GraphBuilder::new()
            .vertices(["s", "v", "t"])
            .edge("s", "v", "-+")
            .edge("v", "t", "-+")
            .build()
            .unwrap()
    }

    #[test]
    fn primal_layout() {
        let sp = split_and_close(&short_path(), &v("s"), &v("t")).unwrap();
        let p = build_primal(&sp.graph, sp.f);
        assert_eq!(p.num_rows(), sp.graph.vertex_count());
        assert_eq!(p.num_vars(), sp.graph.edge_count());
        assert!(p.is_feasible(&vec![Rational::zero(); p.num_vars()]));
    }

    #[test]
    fn dual_layout() {
        let sp = split_and_close(&short_path(), &v("s"), &v("t")).unwrap();
        let d = build_dual(&sp.graph, sp.f);
        assert_eq!(
            d.logical_variable_count(),
            sp.graph.vertex_count() + sp.graph.edge_count() - 1
        );
    }

    #[test]
    fn short_path_certificate() {
        let cert = solve_st(&short_path(), &v("s"), &v("t")).unwrap();
        assert_eq!(cert.value, 1);
        assert_eq!(cert.separator, set(&["v"]));
        assert!(cert.checks.passed(), "{:?}", cert.checks);
        let trace = cert.trace.unwrap();
        assert_eq!(trace.cut.edges.len(), 1);
    }

    #[test]
    fn direct_edge_is_refused() {
        let g = GraphBuilder::new().vertices(["s", "t"]).edge("s", "t", "-+").build().unwrap();
        assert_eq!(
            solve_st(&g, &v("s"), &v("t")).unwrap_err(),
            CertifyError::Reduce(ReduceError::DirectTerminalEdge)
        );
        assert_eq!(
            solve_st(&g, &v("s"), &v("s")).unwrap_err(),
            CertifyError::Reduce(ReduceError::EqualTerminals)
        );
    }

    #[test]
    fn turnaround_instance_has_value_two() {
        // s-a-b-s and t-c-d-t closed pieces, no s-t path
        let g = GraphBuilder::new()
            .vertices(["s", "a", "b", "t", "c", "d"])
            .edge("s", "a", "-+")
            .edge("a", "b", "-+")
            .edge("b", "s", "--")
            .edge("t", "c", "+-")
            .edge("c", "d", "+-")
            .edge("d", "t", "++")
            .build()
            .unwrap();
        let cert = solve_st(&g, &v("s"), &v("t")).unwrap();
        assert_eq!(cert.value, 2);
        assert_eq!(cert.links.len(), 1);
        assert!(!cert.links[0].is_path());
        assert!(cert.checks.passed(), "{:?}", cert.checks);
        let (p, _) = oracle::st(&g, &v("s"), &v("t"), &OracleBounds::default()).unwrap();
        assert_eq!(p.value, 2);
    }

    #[test]
    fn zero_potentials_are_dual_infeasible() {
        let sp = split_and_close(&short_path(), &v("s"), &v("t")).unwrap();
        let z = vec![Rational::zero(); sp.graph.vertex_count()];
        let y = vec![Rational::zero(); sp.graph.edge_count() - 1];
        assert!(matches!(
            extract_cut(&sp.graph, sp.f, &z, &y),
            Err(CertifyError::DualInfeasible(_))
        ));
    }

    #[test]
    fn unbalanced_support_is_rejected() {
        let sp = split_and_close(&short_path(), &v("s"), &v("t")).unwrap();
        let x = vec![rational(1), rational(0), rational(0)];
        assert!(matches!(
            decompose_packing(&sp.graph, sp.f, &x, &rational(1)),
            Err(CertifyError::NotBalanced(_))
        ));
        let x = vec![half(), half(), half()];
        assert!(matches!(
            decompose_packing(&sp.graph, sp.f, &x, &half()),
            Err(CertifyError::NotIntegral(_))
        ));
    }

    #[test]
    fn single_path_support_decomposes() {
        let sp = split_and_close(&short_path(), &v("s"), &v("t")).unwrap();
        let x = vec![rational(1); 3];
        let d = decompose_packing(&sp.graph, sp.f, &x, &rational(1)).unwrap();
        assert_eq!(d.links.len(), 1);
        assert!(d.links[0].is_path());
        assert_eq!(d.slack_cycles, 0);
    }

    #[test]
    fn slack_cycle_is_discarded() {
        // s-v-t path plus a disjoint alternating cycle a-b-a
        let g = GraphBuilder::new()
            .vertices(["s", "v", "t", "a", "b"])
            .edge("s", "v", "-+")
            .edge("v", "t", "-+")
            .edge("a", "b", "+-")
            .edge("a", "b", "-+")
            .build()
            .unwrap();
        let sp = split_and_close(&g, &v("s"), &v("t")).unwrap();
        let cert = solve_st(&g, &v("s"), &v("t")).unwrap();
        let base = cert.trace.unwrap();
        // turn every edge on: the cycle a+ - b- - b+ - a- - a+ is balanced
        let x = vec![rational(1); sp.graph.edge_count() - 1];
        let d = decompose_packing(&sp.graph, sp.f, &x, &rational(1)).unwrap();
        assert_eq!(d.slack_cycles, 1);
        assert_eq!(d.links, base.decomposition.links);
    }

    #[test]
    fn two_triangles_certificate() {
        let inst = fixtures::two_triangles();
        let cert = solve_menger(&inst.graph, &inst.x, &inst.y).unwrap();
        assert_eq!(cert.value, 2);
        assert_eq!(cert.separator.len(), 2);
        assert!(cert.checks.passed(), "{:?}", cert.checks);
        // the relaxation overshoots: each terminal gadget carries half a unit
        assert!(cert.primal_value >= rational(2));
        assert_eq!(cert.primal_value, cert.dual_value);
    }

    #[test]
    fn open_triangle_certificate() {
        let inst = fixtures::open_triangle();
        let cert = solve_menger(&inst.graph, &inst.x, &inst.y).unwrap();
        assert_eq!(cert.value, 2);
        assert_eq!(cert.separator, set(&["x1"]));
        assert!(cert.checks.passed(), "{:?}", cert.checks);
    }

    #[test]
    fn single_vertex_in_both_sets() {
        let g = GraphBuilder::new().vertex("v").build().unwrap();
        let cert = solve_menger(&g, &set(&["v"]), &set(&["v"])).unwrap();
        assert_eq!(cert.value, 1);
        assert_eq!(cert.separator, set(&["v"]));
        assert_eq!(cert.links, vec![Link::Path(Walk::trivial(v("v")))]);
    }

    #[test]
    fn empty_sets_short_circuit() {
        let g = GraphBuilder::new().vertices(["a", "b"]).edge("a", "b", "+-").build().unwrap();
        let cert = solve_menger(&g, &BTreeSet::new(), &set(&["b"])).unwrap();
        assert_eq!(cert.value, 0);
        assert!(cert.trace.is_none());
    }

    #[test]
    fn edgeless_attachment_witness() {
        let g = GraphBuilder::new().vertices(["a", "b"]).build().unwrap();
        let cert = solve_menger(&g, &set(&["a"]), &set(&["b"])).unwrap();
        assert_eq!(cert.value, 0);
        assert!(cert.separator.is_empty());
    }

    #[test]
    fn xpaths_on_triangle() {
        let tri = fixtures::x_triangle();
        let cert = solve_xpaths(&tri.graph, &tri.x).unwrap();
        assert_eq!(cert.packing, 1);
        assert!(cert.separator.len() <= 2);
        assert!(cert.passed(), "{:?}", cert.checks);
    }

    #[test]
    fn xpaths_small_cases() {
        let g = GraphBuilder::new().vertices(["a", "b"]).build().unwrap();
        let cert = solve_xpaths(&g, &set(&["a", "b"])).unwrap();
        assert_eq!(cert.packing, 0);
        assert!(cert.separator.is_empty());
        let g = GraphBuilder::new().vertices(["a", "b"]).edge("a", "b", "+-").build().unwrap();
        let cert = solve_xpaths(&g, &set(&["a", "b"])).unwrap();
        assert_eq!(cert.packing, 1);
        assert_eq!(cert.separator.len(), 1);
        assert!(cert.passed());
    }

    #[test]
    fn no_turnaround_equality() {
        let inst = fixtures::two_triangles();
        let b = OracleBounds::default();
        assert_eq!(
            check_no_turnaround_equality(&inst.graph, &inst.x, &inst.y, &b).unwrap(),
            NoTurnaroundVerdict::NotApplicable
        );
        // digraph a->b->d, a->c->d encoded with tails `-` and heads `+`
        let g = GraphBuilder::new()
            .vertices(["a", "b", "c", "d"])
            .edge("a", "b", "-+")
            .edge("b", "d", "-+")
            .edge("a", "c", "-+")
            .edge("c", "d", "-+")
            .build()
            .unwrap();
        assert_eq!(
            check_no_turnaround_equality(&g, &set(&["a"]), &set(&["d"]), &b).unwrap(),
            NoTurnaroundVerdict::Equal(1)
        );
        let g = GraphBuilder::new().vertices(["a", "b"]).build().unwrap();
        assert_eq!(
            check_no_turnaround_equality(&g, &set(&["a"]), &set(&["b"]), &b).unwrap(),
            NoTurnaroundVerdict::Equal(0)
        );
    }

    #[test]
    fn every_split_link_meets_the_cut() {
        let inst = fixtures::open_triangle();
        let cert = solve_menger(&inst.graph, &inst.x, &inst.y).unwrap();
        let trace = cert.trace.unwrap();
        let g = &trace.split.graph;
        let f = trace.split.f;
        for link in enumerate_st_links(g, &trace.split.s, &trace.split.t) {
            if !link.edge_set().contains(&f) {
                assert!(!link.edge_set().is_disjoint(&trace.cut.edges));
            }
        }
        let audit = audit_cut(&trace);
        assert!(audit.failures.is_empty(), "{:?}", audit.failures);
        assert!(audit.turnarounds > 0);
    }
}
