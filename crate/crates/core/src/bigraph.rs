//! Bidirected multigraphs: a multigraph with a sign at every edge endpoint.
//!
//! Vertices are opaque string tokens and keep insertion order, as do edges,
//! so incidence matrices and everything derived from them are reproducible.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::Neg;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::ratlp::RationalMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Parses a two-character sign pair such as `"+-"`.
    pub fn pair_from_str(s: &str) -> Option<(Sign, Sign)> {
        let mut chars = s.chars();
        let a = Sign::from_char(chars.next()?)?;
        let b = Sign::from_char(chars.next()?)?;
        if chars.next().is_some() {
            return None;
        }
        Some((a, b))
    }

    /// `+1` or `-1`.
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Opaque vertex token. Ordered lexicographically by its text.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(name: &str) -> Self {
        VertexId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(Arc::from(s))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub sign_u: Sign,
    pub sign_v: Sign,
    /// Optional user-facing name carried through file round trips.
    pub label: Option<String>,
}

impl Edge {
    /// Sign of this edge at endpoint `w`, or `None` if `w` is not an endpoint.
    pub fn sign_at(&self, w: &VertexId) -> Option<Sign> {
        if *w == self.u {
            Some(self.sign_u)
        } else if *w == self.v {
            Some(self.sign_v)
        } else {
            None
        }
    }

    pub fn other_end(&self, w: &VertexId) -> Option<&VertexId> {
        if *w == self.u {
            Some(&self.v)
        } else if *w == self.v {
            Some(&self.u)
        } else {
            None
        }
    }

    pub fn joins(&self, a: &VertexId, b: &VertexId) -> bool {
        (self.u == *a && self.v == *b) || (self.u == *b && self.v == *a)
    }

    /// Display name: the label when present, otherwise the numeric id.
    pub fn name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => self.id.to_string(),
        }
    }
}

/// Input record for [`BidirectedGraph::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub u: VertexId,
    pub v: VertexId,
    pub sign_u: Sign,
    pub sign_v: Sign,
    pub label: Option<String>,
}

impl EdgeSpec {
    pub fn new(u: impl Into<VertexId>, v: impl Into<VertexId>, sign_u: Sign, sign_v: Sign) -> Self {
        EdgeSpec {
            u: u.into(),
            v: v.into(),
            sign_u,
            sign_v,
            label: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("loop at vertex `{0}` rejected")]
    LoopRejected(VertexId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertexId(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidirectedGraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_pos: HashMap<VertexId, usize>,
    edge_pos: HashMap<EdgeId, usize>,
    /// Endpoint positions of each edge, parallel to `edges`.
    ends: Vec<(usize, usize)>,
    /// Incident edge positions per vertex position, in edge order.
    incident: Vec<Vec<usize>>,
}

impl BidirectedGraph {
    /// Builds a graph, assigning edge ids `0, 1, …` in input order.
    pub fn build<V>(vertex_ids: V, edge_specs: &[EdgeSpec]) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
    {
        let edges = edge_specs
            .iter()
            .enumerate()
            .map(|(i, s)| Edge {
                id: EdgeId(i as u32),
                u: s.u.clone(),
                v: s.v.clone(),
                sign_u: s.sign_u,
                sign_v: s.sign_v,
                label: s.label.clone(),
            })
            .collect();
        Self::from_parts(vertex_ids.into_iter().map(Into::into).collect(), edges)
    }

    /// Builds a graph from explicit edge records, keeping their ids.
    pub fn from_parts(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut vertex_pos = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_pos.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertexId(v.clone()));
            }
        }
        let mut edge_pos = HashMap::with_capacity(edges.len());
        let mut ends = Vec::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(GraphError::LoopRejected(e.u.clone()));
            }
            let pu = *vertex_pos
                .get(&e.u)
                .ok_or_else(|| GraphError::UnknownVertex(e.u.clone()))?;
            let pv = *vertex_pos
                .get(&e.v)
                .ok_or_else(|| GraphError::UnknownVertex(e.v.clone()))?;
            if edge_pos.insert(e.id, i).is_some() {
                return Err(GraphError::DuplicateEdgeId(e.id));
            }
            ends.push((pu, pv));
            incident[pu].push(i);
            incident[pv].push(i);
        }
        Ok(BidirectedGraph {
            vertices,
            edges,
            vertex_pos,
            edge_pos,
            ends,
            incident,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertex_pos.contains_key(v)
    }

    pub fn vertex_position(&self, v: &VertexId) -> Option<usize> {
        self.vertex_pos.get(v).copied()
    }

    pub fn edge_position(&self, e: EdgeId) -> Option<usize> {
        self.edge_pos.get(&e).copied()
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edge_position(e).map(|i| &self.edges[i])
    }

    /// Endpoint positions of the edge at position `i`.
    pub(crate) fn ends_at(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    /// Edge positions incident to the vertex at position `p`.
    pub(crate) fn incident_at(&self, p: usize) -> &[usize] {
        &self.incident[p]
    }

    /// Sign of the edge at position `i` at the vertex at position `p`.
    pub(crate) fn sign_at_pos(&self, i: usize, p: usize) -> Sign {
        let (a, _) = self.ends[i];
        if a == p {
            self.edges[i].sign_u
        } else {
            self.edges[i].sign_v
        }
    }

    pub(crate) fn other_pos(&self, i: usize, p: usize) -> usize {
        let (a, b) = self.ends[i];
        if a == p {
            b
        } else {
            a
        }
    }

    /// Edges incident to `v`, in edge order.
    pub fn incident_edges(&self, v: &VertexId) -> impl Iterator<Item = &Edge> {
        let list: &[usize] = match self.vertex_pos.get(v) {
            Some(&p) => &self.incident[p],
            None => &[],
        };
        list.iter().map(move |&i| &self.edges[i])
    }

    pub fn check_vertex(&self, v: &VertexId) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.clone()))
        }
    }

    pub fn check_vertices<'a>(
        &self,
        vs: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<(), GraphError> {
        vs.into_iter().try_for_each(|v| self.check_vertex(v))
    }

    /// Signed incidence matrix: rows follow vertex order, columns edge order.
    pub fn incidence_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.vertex_count(), self.edge_count());
        for (j, e) in self.edges.iter().enumerate() {
            let (pu, pv) = self.ends[j];
            m.set(pu, j, sign_value(e.sign_u));
            m.set(pv, j, sign_value(e.sign_v));
        }
        m
    }

    /// The graph minus `drop` and every edge touching it. Ids are preserved.
    pub fn delete_vertices(&self, drop: &BTreeSet<VertexId>) -> Result<Self, GraphError> {
        self.check_vertices(drop)?;
        let vertices = self
            .vertices
            .iter()
            .filter(|v| !drop.contains(*v))
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !drop.contains(&e.u) && !drop.contains(&e.v))
            .cloned()
            .collect();
        Self::from_parts(vertices, edges)
    }

    /// Flips every half-edge sign at `v`.
    pub fn switch_vertex(&self, v: &VertexId) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                if e.u == *v {
                    e.sign_u = -e.sign_u;
                }
                if e.v == *v {
                    e.sign_v = -e.sign_v;
                }
                e
            })
            .collect();
        Self::from_parts(self.vertices.clone(), edges)
    }

    /// Returns a copy with the signs of the given edges replaced.
    pub(crate) fn with_edges(&self, edges: Vec<Edge>) -> Self {
        Self::from_parts(self.vertices.clone(), edges).expect("edge endpoints unchanged")
    }
}

fn sign_value(s: Sign) -> BigRational {
    match s {
        Sign::Plus => BigRational::one(),
        Sign::Minus => -BigRational::one(),
    }
}

/// Hands out vertex names not yet used in a graph under construction.
#[derive(Debug, Default)]
pub(crate) struct FreshNames {
    used: HashSet<VertexId>,
}

impl FreshNames {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn reserve(&mut self, v: &VertexId) {
        self.used.insert(v.clone());
    }

    /// `base`, or `base` followed by apostrophes until unused.
    pub(crate) fn fresh(&mut self, base: &str) -> VertexId {
        let mut name = base.to_string();
        while self.used.contains(name.as_str()) {
            name.push('\'');
        }
        let id = VertexId::from(name);
        self.used.insert(id.clone());
        id
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Convenience builder used by fixtures, tests and examples.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeSpec>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, v: impl Into<VertexId>) -> Self {
        self.vertices.push(v.into());
        self
    }

    pub fn vertices<I, V>(mut self, vs: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        self.vertices.extend(vs.into_iter().map(Into::into));
        self
    }

    /// Adds an edge with signs written as a pair, e.g. `"+-"`.
    ///
    /// Panics on a malformed sign pair; this is a literal-construction helper.
    pub fn edge(mut self, u: impl Into<VertexId>, v: impl Into<VertexId>, signs: &str) -> Self {
        let (a, b) = Sign::pair_from_str(signs).expect("sign pair such as \"+-\"");
        self.edges.push(EdgeSpec::new(u, v, a, b));
        self
    }

    pub fn build(self) -> Result<BidirectedGraph, GraphError> {
        BidirectedGraph::build(self.vertices, &self.edges)
    }
}

#[cfg(test)]
pub(crate) fn is_zero_or_unit(x: &BigRational) -> bool {
    use num_traits::{Signed, Zero};
    x.is_zero() || x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::fixtures;

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn single_edge_graph() {
        let g = GraphBuilder::new().vertices(["a", "b"]).edge("a", "b", "+-").build().unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].id, EdgeId(0));
    }

    #[test]
    fn rejects_loops_unknown_and_duplicates() {
        let err = GraphBuilder::new().vertex("a").edge("a", "a", "+-").build().unwrap_err();
        assert_eq!(err, GraphError::LoopRejected(v("a")));
        let err = GraphBuilder::new().vertex("a").edge("a", "b", "+-").build().unwrap_err();
        assert_eq!(err, GraphError::UnknownVertex(v("b")));
        let err = GraphBuilder::new().vertices(["a", "a"]).build().unwrap_err();
        assert_eq!(err, GraphError::DuplicateVertexId(v("a")));
    }

    #[test]
    fn incidence_follows_signs() {
        let g = GraphBuilder::new().vertices(["a", "b"]).edge("a", "b", "+-").build().unwrap();
        let m = g.incidence_matrix();
        assert_eq!(m.get(0, 0).to_integer(), 1.into());
        assert_eq!(m.get(1, 0).to_integer(), (-1).into());
    }

    #[test]
    fn digraph_encoding_gives_classical_incidence() {
        // tails `-`, heads `+`
        let g = GraphBuilder::new()
            .vertices(["a", "b", "c"])
            .edge("a", "b", "-+")
            .edge("b", "c", "-+")
            .build()
            .unwrap();
        let m = g.incidence_matrix();
        for j in 0..m.cols() {
            let col: Vec<i64> = (0..m.rows())
                .map(|i| m.get(i, j).to_integer().try_into().unwrap())
                .collect();
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
        }
    }

    #[test]
    fn two_triangles_columns_are_two_plus_entries() {
        let g = fixtures::two_triangles().graph;
        let m = g.incidence_matrix();
        assert_eq!((m.rows(), m.cols()), (6, 6));
        for j in 0..m.cols() {
            let plus = (0..m.rows()).filter(|&i| m.get(i, j).is_one()).count();
            let abs_sum: BigRational = (0..m.rows()).map(|i| m.get(i, j).abs()).sum();
            assert_eq!(plus, 2);
            assert_eq!(abs_sum, BigRational::from_integer(2.into()));
            assert!((0..m.rows()).all(|i| is_zero_or_unit(m.get(i, j))));
        }
    }

    #[test]
    fn deletion() {
        let g = fixtures::open_triangle().graph;
        assert_eq!(g.delete_vertices(&BTreeSet::new()).unwrap(), g);
        let minus_a = g.delete_vertices(&[v("x1")].into_iter().collect()).unwrap();
        assert!(minus_a
            .edges()
            .iter()
            .all(|e| !e.u.as_str().starts_with('x') && !e.v.as_str().starts_with('x')));
        assert_eq!(minus_a.edge_count(), 3);
        let all: BTreeSet<_> = g.vertices().iter().cloned().collect();
        let empty = g.delete_vertices(&all).unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (0, 0));
        assert!(g.delete_vertices(&[v("zz")].into_iter().collect()).is_err());
    }

    #[test]
    fn deletion_keeps_edge_ids() {
        let g = GraphBuilder::new()
            .vertices(["a", "b", "c"])
            .edge("a", "b", "++")
            .edge("b", "c", "--")
            .build()
            .unwrap();
        let h = g.delete_vertices(&[v("a")].into_iter().collect()).unwrap();
        assert_eq!(h.edges()[0].id, EdgeId(1));
    }

    #[test]
    fn switching() {
        let g = GraphBuilder::new().vertices(["a", "b"]).edge("a", "b", "+-").build().unwrap();
        let h = g.switch_vertex(&v("a")).unwrap();
        assert_eq!((h.edges()[0].sign_u, h.edges()[0].sign_v), (Sign::Minus, Sign::Minus));
        assert_eq!(h.switch_vertex(&v("a")).unwrap(), g);
        assert!(g.switch_vertex(&v("q")).is_err());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut names = FreshNames::new();
        names.reserve(&v("s"));
        assert_eq!(names.fresh("s"), v("s'"));
        assert_eq!(names.fresh("s"), v("s''"));
        assert_eq!(names.fresh("t"), v("t"));
    }

    #[test]
    fn sign_negation_is_involution() {
        for s in [Sign::Plus, Sign::Minus] {
            assert_eq!(-(-s), s);
            assert_ne!(-s, s);
        }
        assert_eq!(Sign::pair_from_str("+-"), Some((Sign::Plus, Sign::Minus)));
        assert_eq!(Sign::pair_from_str("+"), None);
        assert_eq!(Sign::pair_from_str("+-+"), None);
    }
}
