//! Walk semantics in bidirected graphs and exhaustive link enumeration.
//!
//! Two consecutive edges of a walk must carry opposite signs at the vertex
//! they share. The first and last vertex carry no condition, even when the
//! walk is closed.

use std::collections::{BTreeSet, HashSet};

use crate::bigraph::{BidirectedGraph, EdgeId, Sign, VertexId};

/// Alternating vertex/edge sequence `v0, e1, v1, …, ek, vk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Walk {
    /// Returns `None` unless `vertices.len() == edges.len() + 1`.
    pub fn new(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Option<Self> {
        (vertices.len() == edges.len() + 1).then_some(Walk { vertices, edges })
    }

    pub fn trivial(v: VertexId) -> Self {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> &VertexId {
        &self.vertices[0]
    }

    pub fn last(&self) -> &VertexId {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        !self.is_trivial() && self.first() == self.last()
    }

    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Walk { vertices, edges }
    }

    /// Distinct vertices of the walk.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkDefect {
    UnknownVertex,
    UnknownEdge,
    /// The edge does not join the two vertices around it.
    NotIncident,
    /// Equal signs at an interior vertex.
    SameSigns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkVerdict {
    Valid,
    /// `position` indexes `vertices` for vertex defects and sign defects, and
    /// `edges` for edge defects.
    Invalid { reason: WalkDefect, position: usize },
}

impl WalkVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, WalkVerdict::Valid)
    }
}

pub fn check_walk(g: &BidirectedGraph, w: &Walk) -> WalkVerdict {
    let invalid = |reason, position| WalkVerdict::Invalid { reason, position };
    for (i, v) in w.vertices.iter().enumerate() {
        if !g.contains_vertex(v) {
            return invalid(WalkDefect::UnknownVertex, i);
        }
    }
    let mut arrival: Option<Sign> = None;
    for (i, e) in w.edges.iter().enumerate() {
        let Some(edge) = g.edge(*e) else {
            return invalid(WalkDefect::UnknownEdge, i);
        };
        let (a, b) = (&w.vertices[i], &w.vertices[i + 1]);
        if !edge.joins(a, b) {
            return invalid(WalkDefect::NotIncident, i);
        }
        let leave = edge.sign_at(a).expect("endpoint");
        if let Some(arr) = arrival {
            if arr == leave {
                return invalid(WalkDefect::SameSigns, i);
            }
        }
        arrival = edge.sign_at(b);
    }
    WalkVerdict::Valid
}

fn has_distinct_edges(w: &Walk) -> bool {
    let set: HashSet<_> = w.edges.iter().collect();
    set.len() == w.edges.len()
}

/// Valid walk on pairwise distinct vertices.
pub fn is_path(g: &BidirectedGraph, w: &Walk) -> bool {
    let set: HashSet<_> = w.vertices.iter().collect();
    set.len() == w.vertices.len() && check_walk(g, w).is_valid()
}

/// Nontrivial closed trail at its first vertex whose other vertices are distinct.
pub fn is_almost_path(g: &BidirectedGraph, w: &Walk) -> bool {
    if !w.is_closed() || w.len() < 2 || !has_distinct_edges(w) {
        return false;
    }
    let inner = &w.vertices[1..w.vertices.len() - 1];
    let set: HashSet<_> = inner.iter().collect();
    set.len() == inner.len() && !inner.contains(w.first()) && check_walk(g, w).is_valid()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Link {
    Path(Walk),
    /// Two vertex-disjoint pieces, one on the source side and one on the
    /// target side. For set links these are open paths; for terminal
    /// (`s`–`t`) links they are almost paths at `s` and at `t`.
    Turnaround { source_part: Walk, target_part: Walk },
}

impl Link {
    /// Paths count once, turnarounds twice.
    pub fn weight(&self) -> usize {
        match self {
            Link::Path(_) => 1,
            Link::Turnaround { .. } => 2,
        }
    }

    pub fn is_path(&self) -> bool {
        matches!(self, Link::Path(_))
    }

    pub fn parts(&self) -> Vec<&Walk> {
        match self {
            Link::Path(w) => vec![w],
            Link::Turnaround {
                source_part,
                target_part,
            } => vec![source_part, target_part],
        }
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.parts().into_iter().flat_map(|w| w.vertices.iter().cloned()).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.parts().into_iter().flat_map(|w| w.edges.iter().copied()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkVerdict {
    Path,
    Turnaround,
    NotALink(String),
}

fn not_a_link(reason: impl Into<String>) -> LinkVerdict {
    LinkVerdict::NotALink(reason.into())
}

/// Classifies an X–Y link candidate.
pub fn classify_link(
    g: &BidirectedGraph,
    candidate: &Link,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
) -> LinkVerdict {
    match candidate {
        Link::Path(w) => {
            if !is_path(g, w) {
                not_a_link("not a path")
            } else if !x.contains(w.first()) || !y.contains(w.last()) {
                not_a_link("endpoints outside X and Y")
            } else {
                LinkVerdict::Path
            }
        }
        Link::Turnaround {
            source_part,
            target_part,
        } => {
            for (part, set, side) in [(source_part, x, "X"), (target_part, y, "Y")] {
                if part.is_trivial() {
                    return not_a_link(format!("trivial {side}-part"));
                }
                if !is_path(g, part) {
                    return not_a_link(format!("{side}-part is not a path"));
                }
                if !set.contains(part.first()) || !set.contains(part.last()) {
                    return not_a_link(format!("{side}-part leaves {side}"));
                }
            }
            if !source_part.vertex_set().is_disjoint(&target_part.vertex_set()) {
                return not_a_link("parts share a vertex");
            }
            LinkVerdict::Turnaround
        }
    }
}

/// Classifies an `s`–`t` link candidate.
pub fn classify_st_link(
    g: &BidirectedGraph,
    candidate: &Link,
    s: &VertexId,
    t: &VertexId,
) -> LinkVerdict {
    match candidate {
        Link::Path(w) => {
            if !is_path(g, w) {
                not_a_link("not a path")
            } else if w.first() != s || w.last() != t {
                not_a_link("path does not run from s to t")
            } else {
                LinkVerdict::Path
            }
        }
        Link::Turnaround {
            source_part,
            target_part,
        } => {
            if source_part.first() != s || !is_almost_path(g, source_part) {
                return not_a_link("source part is not an almost path at s");
            }
            if target_part.first() != t || !is_almost_path(g, target_part) {
                return not_a_link("target part is not an almost path at t");
            }
            if !source_part.vertex_set().is_disjoint(&target_part.vertex_set()) {
                return not_a_link("parts share a vertex");
            }
            LinkVerdict::Turnaround
        }
    }
}

type PosWalk = (Vec<usize>, Vec<usize>);

fn to_walk(g: &BidirectedGraph, (vs, es): &PosWalk) -> Walk {
    Walk {
        vertices: vs.iter().map(|&p| g.vertices()[p].clone()).collect(),
        edges: es.iter().map(|&i| g.edges()[i].id).collect(),
    }
}

fn reversed_key((vs, es): &PosWalk) -> PosWalk {
    (vs.iter().rev().copied().collect(), es.iter().rev().copied().collect())
}

struct PathSearch<'a> {
    g: &'a BidirectedGraph,
    targets: Vec<bool>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    on_path: Vec<bool>,
    found: Vec<PosWalk>,
}

impl PathSearch<'_> {
    fn extend(&mut self, arrival: Option<Sign>) {
        let cur = *self.vertices.last().unwrap();
        if self.targets[cur] {
            self.found.push((self.vertices.clone(), self.edges.clone()));
        }
        for &i in self.g.incident_at(cur) {
            if Some(self.g.sign_at_pos(i, cur)) == arrival {
                continue;
            }
            let next = self.g.other_pos(i, cur);
            if self.on_path[next] {
                continue;
            }
            self.on_path[next] = true;
            self.vertices.push(next);
            self.edges.push(i);
            self.extend(Some(self.g.sign_at_pos(i, next)));
            self.edges.pop();
            self.vertices.pop();
            self.on_path[next] = false;
        }
    }
}

fn position_set(g: &BidirectedGraph, set: &BTreeSet<VertexId>) -> Vec<bool> {
    let mut mask = vec![false; g.vertex_count()];
    for v in set {
        if let Some(p) = g.vertex_position(v) {
            mask[p] = true;
        }
    }
    mask
}

/// Every `A`–`B` path, trivial ones included, deduplicated up to reversal.
///
/// Interior vertices are unrestricted. Vertices of `a` or `b` missing from
/// `g` are ignored.
pub fn enumerate_paths(
    g: &BidirectedGraph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
) -> Vec<Walk> {
    let sources = position_set(g, a);
    let targets = position_set(g, b);
    let mut search = PathSearch {
        g,
        targets: targets.clone(),
        vertices: Vec::new(),
        edges: Vec::new(),
        on_path: vec![false; g.vertex_count()],
        found: Vec::new(),
    };
    for start in (0..g.vertex_count()).filter(|&p| sources[p]) {
        search.on_path[start] = true;
        search.vertices.push(start);
        search.extend(None);
        search.vertices.pop();
        search.on_path[start] = false;
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in search.found {
        let (first, last) = (w.0[0], *w.0.last().unwrap());
        let key = if sources[last] && targets[first] {
            std::cmp::min(w.clone(), reversed_key(&w))
        } else {
            w.clone()
        };
        if seen.insert(key) {
            out.push(to_walk(g, &w));
        }
    }
    out
}

fn almost_paths_at(g: &BidirectedGraph, root: usize) -> Vec<PosWalk> {
    struct Search<'a> {
        g: &'a BidirectedGraph,
        root: usize,
        vertices: Vec<usize>,
        edges: Vec<usize>,
        on_path: Vec<bool>,
        found: Vec<PosWalk>,
    }
    impl Search<'_> {
        fn extend(&mut self, arrival: Sign) {
            let cur = *self.vertices.last().unwrap();
            for &i in self.g.incident_at(cur) {
                if self.g.sign_at_pos(i, cur) == arrival || self.edges.contains(&i) {
                    continue;
                }
                let next = self.g.other_pos(i, cur);
                if next == self.root {
                    let mut vs = self.vertices.clone();
                    vs.push(next);
                    let mut es = self.edges.clone();
                    es.push(i);
                    self.found.push((vs, es));
                    continue;
                }
                if self.on_path[next] {
                    continue;
                }
                self.on_path[next] = true;
                self.vertices.push(next);
                self.edges.push(i);
                self.extend(self.g.sign_at_pos(i, next));
                self.edges.pop();
                self.vertices.pop();
                self.on_path[next] = false;
            }
        }
    }
    let mut search = Search {
        g,
        root,
        vertices: vec![root],
        edges: Vec::new(),
        on_path: vec![false; g.vertex_count()],
        found: Vec::new(),
    };
    search.on_path[root] = true;
    for &i in g.incident_at(root) {
        let next = g.other_pos(i, root);
        search.on_path[next] = true;
        search.vertices.push(next);
        search.edges.push(i);
        search.extend(g.sign_at_pos(i, next));
        search.edges.pop();
        search.vertices.pop();
        search.on_path[next] = false;
    }
    let mut seen = HashSet::new();
    search
        .found
        .into_iter()
        .filter(|w| seen.insert(std::cmp::min(w.clone(), reversed_key(w))))
        .collect()
}

/// Every almost path at `v`, deduplicated up to reversal.
pub fn enumerate_almost_paths(g: &BidirectedGraph, v: &VertexId) -> Vec<Walk> {
    match g.vertex_position(v) {
        Some(p) => almost_paths_at(g, p).iter().map(|w| to_walk(g, w)).collect(),
        None => Vec::new(),
    }
}

/// All X–Y paths followed by all X–Y turnarounds.
pub fn enumerate_xy_links(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
) -> Vec<Link> {
    let mut links: Vec<Link> = enumerate_paths(g, x, y).into_iter().map(Link::Path).collect();
    let nontrivial = |set| {
        enumerate_paths(g, set, set)
            .into_iter()
            .filter(|w| !w.is_trivial())
            .map(|w| {
                let vs = w.vertex_set();
                (w, vs)
            })
            .collect::<Vec<_>>()
    };
    let xx = nontrivial(x);
    let yy = nontrivial(y);
    for (p, pv) in &xx {
        for (q, qv) in &yy {
            if pv.is_disjoint(qv) {
                links.push(Link::Turnaround {
                    source_part: p.clone(),
                    target_part: q.clone(),
                });
            }
        }
    }
    links
}

/// All `s`–`t` paths followed by all `s`–`t` turnarounds.
pub fn enumerate_st_links(g: &BidirectedGraph, s: &VertexId, t: &VertexId) -> Vec<Link> {
    let single = |v: &VertexId| [v.clone()].into_iter().collect::<BTreeSet<_>>();
    let mut links: Vec<Link> = enumerate_paths(g, &single(s), &single(t))
        .into_iter()
        .map(Link::Path)
        .collect();
    let at = |root: &VertexId, avoid: &VertexId| {
        enumerate_almost_paths(g, root)
            .into_iter()
            .filter(|w| !w.vertices.contains(avoid))
            .map(|w| {
                let vs = w.vertex_set();
                (w, vs)
            })
            .collect::<Vec<_>>()
    };
    let ss = at(s, t);
    let tt = at(t, s);
    for (p, pv) in &ss {
        for (q, qv) in &tt {
            if pv.is_disjoint(qv) {
                links.push(Link::Turnaround {
                    source_part: p.clone(),
                    target_part: q.clone(),
                });
            }
        }
    }
    links
}
