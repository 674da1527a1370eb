//! Graph reductions with invertible bookkeeping.
//!
//! * terminal attachment: X and Y become two terminals `s` and `t`;
//! * vertex splitting: every non-terminal vertex becomes a `+`/`-` pair joined
//!   by a split edge, and a closing edge `f` joins `t` to `s`, which turns
//!   internal vertex-disjointness into edge-disjointness;
//! * doubling: two disjoint copies, turning X-paths into turnarounds.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::bigraph::{BidirectedGraph, Edge, EdgeId, FreshNames, GraphError, Sign, VertexId};
use crate::walks::{Link, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Source,
    Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Terminal,
    Split,
    Double,
}

/// Where a derived vertex comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexOrigin {
    /// Same vertex, or one of the two copies (`copy` is 0 or 1).
    Image { original: VertexId, copy: u8 },
    /// The `sign` half of a split vertex.
    Half { original: VertexId, sign: Sign },
    /// Attachment vertex between a terminal and the vertex it guards.
    Gadget { guards: VertexId, side: Side },
    Terminal(Side),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// An original edge; `ends` are its endpoints in the original graph.
    Image {
        original: EdgeId,
        ends: (VertexId, VertexId),
        copy: u8,
    },
    Gadget { guards: VertexId, side: Side },
    /// The edge between the two halves of a split vertex.
    Split(VertexId),
    /// The edge `f` from `t` to `s`.
    Closing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub kind: ReductionKind,
    pub vertex_origin: BTreeMap<VertexId, VertexOrigin>,
    pub edge_origin: BTreeMap<EdgeId, EdgeOrigin>,
    pub vertex_images: BTreeMap<VertexId, Vec<VertexId>>,
    pub edge_images: BTreeMap<EdgeId, Vec<EdgeId>>,
    /// Terminals of the derived graph, when the reduction has them.
    pub source: Option<VertexId>,
    pub target: Option<VertexId>,
    pub closing: Option<EdgeId>,
}

impl ReductionMap {
    fn new(kind: ReductionKind) -> Self {
        ReductionMap {
            kind,
            vertex_origin: BTreeMap::new(),
            edge_origin: BTreeMap::new(),
            vertex_images: BTreeMap::new(),
            edge_images: BTreeMap::new(),
            source: None,
            target: None,
            closing: None,
        }
    }

    fn record_vertex(&mut self, derived: &VertexId, origin: VertexOrigin) {
        match &origin {
            VertexOrigin::Image { original, .. } | VertexOrigin::Half { original, .. } => {
                self.vertex_images
                    .entry(original.clone())
                    .or_default()
                    .push(derived.clone());
            }
            _ => {}
        }
        self.vertex_origin.insert(derived.clone(), origin);
    }

    fn record_edge(&mut self, derived: EdgeId, origin: EdgeOrigin) {
        if let EdgeOrigin::Image { original, .. } = &origin {
            self.edge_images.entry(*original).or_default().push(derived);
        }
        self.edge_origin.insert(derived, origin);
    }

    /// Original vertex behind a derived one. Gadget vertices map to the
    /// vertex they guard; terminals have no preimage.
    pub fn pull_vertex(&self, v: &VertexId) -> Result<VertexId, ReduceError> {
        match self.vertex_origin.get(v) {
            Some(VertexOrigin::Image { original, .. }) | Some(VertexOrigin::Half { original, .. }) => {
                Ok(original.clone())
            }
            Some(VertexOrigin::Gadget { guards, .. }) => Ok(guards.clone()),
            Some(VertexOrigin::Terminal(_)) | None => Err(ReduceError::UnmappableVertex(v.clone())),
        }
    }

    /// One vertex of this map's original graph covering derived cut edge `e`.
    pub fn cut_edge_vertex(&self, e: EdgeId) -> Result<VertexId, ReduceError> {
        match self.edge_origin.get(&e) {
            Some(EdgeOrigin::Split(v)) | Some(EdgeOrigin::Gadget { guards: v, .. }) => Ok(v.clone()),
            Some(EdgeOrigin::Image { ends: (a, b), .. }) => {
                let terminal = |v: &VertexId| {
                    Some(v) == self.source.as_ref() || Some(v) == self.target.as_ref()
                };
                [a, b]
                    .into_iter()
                    .filter(|v| !terminal(v))
                    .min()
                    .cloned()
                    .ok_or(ReduceError::UnmappableEdge(e))
            }
            Some(EdgeOrigin::Closing) | None => Err(ReduceError::UnmappableEdge(e)),
        }
    }

    fn pull_edge(&self, e: EdgeId) -> Result<EdgeId, ReduceError> {
        match self.edge_origin.get(&e) {
            Some(EdgeOrigin::Image { original, .. }) => Ok(*original),
            _ => Err(ReduceError::InvalidDerivedLink(format!("edge {e} has no preimage"))),
        }
    }

    /// Collapses split halves and drops split edges.
    fn pull_split_walk(&self, w: &Walk) -> Result<Walk, ReduceError> {
        let mut vertices = vec![self.pull_vertex(w.first())?];
        let mut edges = Vec::new();
        for (e, v) in w.edges().iter().zip(&w.vertices()[1..]) {
            match self.edge_origin.get(e) {
                Some(EdgeOrigin::Split(_)) => continue,
                Some(EdgeOrigin::Image { original, .. }) => {
                    edges.push(*original);
                    vertices.push(self.pull_vertex(v)?);
                }
                _ => {
                    return Err(ReduceError::InvalidDerivedLink(format!(
                        "edge {e} cannot appear in a link"
                    )))
                }
            }
        }
        Ok(Walk::new(vertices, edges).expect("balanced walk"))
    }

    /// Strips `terminal, gadget` from both ends of a terminal-graph walk.
    fn pull_terminal_walk(&self, w: &Walk) -> Result<Walk, ReduceError> {
        let bad = |why: &str| ReduceError::InvalidDerivedLink(why.to_string());
        let n = w.vertices().len();
        if n < 5 {
            return Err(bad("terminal walk too short"));
        }
        for v in [&w.vertices()[0], &w.vertices()[n - 1]] {
            if !matches!(self.vertex_origin.get(v), Some(VertexOrigin::Terminal(_))) {
                return Err(bad("walk does not start and end at terminals"));
            }
        }
        for v in [&w.vertices()[1], &w.vertices()[n - 2]] {
            if !matches!(self.vertex_origin.get(v), Some(VertexOrigin::Gadget { .. })) {
                return Err(bad("walk does not pass through attachment vertices"));
            }
        }
        let vertices = w.vertices()[2..n - 2]
            .iter()
            .map(|v| match self.vertex_origin.get(v) {
                Some(VertexOrigin::Image { original, .. }) => Ok(original.clone()),
                _ => Err(bad("interior of a terminal walk leaves the original graph")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let edges = w.edges()[2..w.edges().len() - 2]
            .iter()
            .map(|e| self.pull_edge(*e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Walk::new(vertices, edges).expect("balanced walk"))
    }

    /// Maps a link of the derived graph to the original graph.
    pub fn pull_link(&self, link: &Link) -> Result<Link, ReduceError> {
        let pull = |w: &Walk| match self.kind {
            ReductionKind::Split => self.pull_split_walk(w),
            ReductionKind::Terminal => self.pull_terminal_walk(w),
            ReductionKind::Double => Err(ReduceError::NotInvertible),
        };
        Ok(match link {
            Link::Path(w) => Link::Path(pull(w)?),
            Link::Turnaround {
                source_part,
                target_part,
            } => Link::Turnaround {
                source_part: pull(source_part)?,
                target_part: pull(target_part)?,
            },
        })
    }

    /// Relabels a walk of one copy of a doubled graph back to the original.
    pub fn project_walk(&self, w: &Walk) -> Result<Walk, ReduceError> {
        if self.kind != ReductionKind::Double {
            return Err(ReduceError::NotInvertible);
        }
        let vertices = w
            .vertices()
            .iter()
            .map(|v| self.pull_vertex(v))
            .collect::<Result<Vec<_>, _>>()?;
        let edges = w
            .edges()
            .iter()
            .map(|e| self.pull_edge(*e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Walk::new(vertices, edges).expect("balanced walk"))
    }

    /// Which copy of a doubled graph `v` lives in.
    pub fn copy_of(&self, v: &VertexId) -> Option<u8> {
        match self.vertex_origin.get(v) {
            Some(VertexOrigin::Image { copy, .. }) => Some(*copy),
            _ => None,
        }
    }

    /// Lifts a link of the original graph into the derived graph, following
    /// the construction rules. Inverse of [`ReductionMap::pull_link`].
    pub fn lift_link(
        &self,
        original: &BidirectedGraph,
        derived: &BidirectedGraph,
        link: &Link,
    ) -> Result<Link, ReduceError> {
        let lift = |w: &Walk, side: Option<Side>| match self.kind {
            ReductionKind::Split => self.lift_split_walk(original, w),
            ReductionKind::Terminal => self.lift_terminal_walk(original, derived, w, side),
            ReductionKind::Double => Err(ReduceError::NotInvertible),
        };
        Ok(match link {
            Link::Path(w) => Link::Path(lift(w, None)?),
            Link::Turnaround {
                source_part,
                target_part,
            } => Link::Turnaround {
                source_part: lift(source_part, Some(Side::Source))?,
                target_part: lift(target_part, Some(Side::Target))?,
            },
        })
    }

    fn image_edge(&self, e: EdgeId) -> Result<EdgeId, ReduceError> {
        self.edge_images
            .get(&e)
            .and_then(|v| v.first().copied())
            .ok_or_else(|| ReduceError::InvalidDerivedLink(format!("edge {e} has no image")))
    }

    fn half_of(&self, v: &VertexId, sign: Sign) -> Result<VertexId, ReduceError> {
        let images = self
            .vertex_images
            .get(v)
            .ok_or_else(|| ReduceError::InvalidDerivedLink(format!("vertex {v} has no image")))?;
        if images.len() == 1 {
            return Ok(images[0].clone());
        }
        let idx = if sign == Sign::Plus { 0 } else { 1 };
        Ok(images[idx].clone())
    }

    fn split_edge_of(&self, v: &VertexId) -> Result<EdgeId, ReduceError> {
        self.edge_origin
            .iter()
            .find(|(_, o)| matches!(o, EdgeOrigin::Split(w) if w == v))
            .map(|(e, _)| *e)
            .ok_or_else(|| ReduceError::InvalidDerivedLink(format!("{v} is not split")))
    }

    fn lift_split_walk(&self, g: &BidirectedGraph, w: &Walk) -> Result<Walk, ReduceError> {
        let bad = |why: String| ReduceError::InvalidDerivedLink(why);
        let is_terminal = |v: &VertexId| {
            Some(v) == self.source.as_ref() || Some(v) == self.target.as_ref()
        };
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let first = w.first();
        if !is_terminal(first) {
            return Err(bad(format!("{first} is not a terminal")));
        }
        vertices.push(first.clone());
        for (i, e) in w.edges().iter().enumerate() {
            let v = &w.vertices()[i + 1];
            let edge = g.edge(*e).ok_or_else(|| bad(format!("unknown edge {e}")))?;
            let arrive = edge.sign_at(v).ok_or_else(|| bad(format!("{e} misses {v}")))?;
            edges.push(self.image_edge(*e)?);
            if is_terminal(v) {
                vertices.push(v.clone());
                continue;
            }
            if i + 1 == w.edges().len() {
                return Err(bad(format!("{v} is not a terminal")));
            }
            vertices.push(self.half_of(v, arrive)?);
            edges.push(self.split_edge_of(v)?);
            vertices.push(self.half_of(v, -arrive)?);
        }
        Ok(Walk::new(vertices, edges).expect("balanced walk"))
    }

    fn lift_terminal_walk(
        &self,
        g: &BidirectedGraph,
        derived: &BidirectedGraph,
        w: &Walk,
        part: Option<Side>,
    ) -> Result<Walk, ReduceError> {
        let (s, t) = match (&self.source, &self.target) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(ReduceError::NotInvertible),
        };
        // sign at the end vertex of the original edge adjacent to the gadget
        let end_sign = |at_start: bool| -> Option<Sign> {
            if w.is_trivial() {
                return None;
            }
            let (e, v) = if at_start {
                (w.edges()[0], w.first())
            } else {
                (w.edges()[w.len() - 1], w.last())
            };
            g.edge(e).and_then(|edge| edge.sign_at(v))
        };
        let (start_side, end_side) = match part {
            None => (Side::Source, Side::Target),
            Some(side) => (side, side),
        };
        let (start_gadget, start_edges) = self.gadget(derived, w.first(), start_side)?;
        let (end_gadget, end_edges) = self.gadget(derived, w.last(), end_side)?;
        // the gadget edge needs the sign opposite to the path's own edge;
        // a trivial path takes `+` into the source gadget and `-` into the target one
        let start_sign = end_sign(true).map_or(Sign::Plus, |x| -x);
        let end_sign = end_sign(false).map_or(-start_sign, |x| -x);
        let pick = |edges: &GadgetEdges, sign: Sign| {
            if sign == Sign::Plus {
                edges.plus
            } else {
                edges.minus
            }
        };
        let mut vertices = vec![
            if start_side == Side::Source { s.clone() } else { t.clone() },
            start_gadget.clone(),
        ];
        let mut edges = vec![start_edges.spoke, pick(&start_edges, start_sign)];
        vertices.extend(w.vertices().iter().cloned());
        edges.extend(w.edges().iter().map(|e| self.image_edge(*e)).collect::<Result<Vec<_>, _>>()?);
        vertices.push(end_gadget.clone());
        vertices.push(if end_side == Side::Source { s.clone() } else { t.clone() });
        edges.push(pick(&end_edges, end_sign));
        edges.push(end_edges.spoke);
        Ok(Walk::new(vertices, edges).expect("balanced walk"))
    }

    fn gadget(
        &self,
        derived: &BidirectedGraph,
        guards: &VertexId,
        side: Side,
    ) -> Result<(VertexId, GadgetEdges), ReduceError> {
        let hub = self
            .vertex_origin
            .iter()
            .find(|(_, o)| matches!(o, VertexOrigin::Gadget { guards: g, side: sd } if g == guards && *sd == side))
            .map(|(v, _)| v.clone())
            .ok_or_else(|| {
                ReduceError::InvalidDerivedLink(format!("{guards} has no {side:?} attachment"))
            })?;
        let mut spoke = None;
        let mut plus = None;
        let mut minus = None;
        for e in derived.incident_edges(&hub) {
            let other = e.other_end(&hub).expect("incident");
            if other == guards {
                match e.sign_at(guards).expect("incident") {
                    Sign::Plus => plus = Some(e.id),
                    Sign::Minus => minus = Some(e.id),
                }
            } else {
                spoke = Some(e.id);
            }
        }
        match (spoke, plus, minus) {
            (Some(spoke), Some(plus), Some(minus)) => Ok((hub, GadgetEdges { spoke, plus, minus })),
            _ => Err(ReduceError::InvalidDerivedLink(format!("malformed attachment at {hub}"))),
        }
    }
}

struct GadgetEdges {
    spoke: EdgeId,
    plus: EdgeId,
    minus: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("terminals must be distinct")]
    EqualTerminals,
    #[error("terminal signs are not normalized")]
    NotNormalized,
    #[error("an edge joins the two terminals directly")]
    DirectTerminalEdge,
    #[error("derived link cannot be mapped back: {0}")]
    InvalidDerivedLink(String),
    #[error("cut edge {0} has no vertex preimage")]
    UnmappableEdge(EdgeId),
    #[error("vertex {0} has no preimage")]
    UnmappableVertex(VertexId),
    #[error("reduction cannot be inverted on links")]
    NotInvertible,
}

#[derive(Debug, Clone)]
pub struct TerminalAttachment {
    pub graph: BidirectedGraph,
    pub s: VertexId,
    pub t: VertexId,
    pub map: ReductionMap,
}

struct Assembly {
    names: FreshNames,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    map: ReductionMap,
}

impl Assembly {
    fn new(kind: ReductionKind) -> Self {
        Assembly {
            names: FreshNames::new(),
            vertices: Vec::new(),
            edges: Vec::new(),
            map: ReductionMap::new(kind),
        }
    }

    fn vertex(&mut self, base: &str, origin: VertexOrigin) -> VertexId {
        let v = self.names.fresh(base);
        self.vertices.push(v.clone());
        self.map.record_vertex(&v, origin);
        v
    }

    fn edge(
        &mut self,
        (u, sign_u): (&VertexId, Sign),
        (v, sign_v): (&VertexId, Sign),
        origin: EdgeOrigin,
        label: Option<String>,
    ) -> EdgeId {
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge {
            id,
            u: u.clone(),
            v: v.clone(),
            sign_u,
            sign_v,
            label,
        });
        self.map.record_edge(id, origin);
        id
    }

    fn finish(self) -> (BidirectedGraph, ReductionMap) {
        let g = BidirectedGraph::from_parts(self.vertices, self.edges)
            .expect("reductions produce well-formed graphs");
        (g, self.map)
    }
}

fn image_origin(e: &Edge, copy: u8) -> EdgeOrigin {
    EdgeOrigin::Image {
        original: e.id,
        ends: (e.u.clone(), e.v.clone()),
        copy,
    }
}

/// Adds terminals `s` and `t`. Every `x ∈ X` gets its own attachment vertex
/// `x~s` with one edge to `s` (`-` at `s`, `+` at `x~s`) and two parallel
/// edges to `x` (`-` at `x~s`; `+` and `-` at `x`). `Y` is attached to `t`
/// symmetrically with all signs reversed. All half-edges at `s` are `-` and
/// all at `t` are `+`.
pub fn attach_terminals(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
) -> Result<TerminalAttachment, ReduceError> {
    g.check_vertices(x.iter().chain(y))?;
    let mut asm = Assembly::new(ReductionKind::Terminal);
    for v in g.vertices() {
        asm.names.reserve(v);
    }
    for v in g.vertices() {
        asm.vertices.push(v.clone());
        asm.map.record_vertex(
            v,
            VertexOrigin::Image {
                original: v.clone(),
                copy: 0,
            },
        );
    }
    let s = asm.vertex("s", VertexOrigin::Terminal(Side::Source));
    let t = asm.vertex("t", VertexOrigin::Terminal(Side::Target));
    for e in g.edges() {
        asm.edge((&e.u, e.sign_u), (&e.v, e.sign_v), image_origin(e, 0), e.label.clone());
    }
    for (side, set, terminal) in [(Side::Source, x, &s), (Side::Target, y, &t)] {
        // source side: terminal `-`, hub `+` towards it and `-` towards the vertex
        let toward_terminal = if side == Side::Source { Sign::Plus } else { Sign::Minus };
        let at_terminal = -toward_terminal;
        let suffix = if side == Side::Source { "~s" } else { "~t" };
        // attach in graph order so the layout does not depend on set order
        for v in g.vertices().iter().filter(|v| set.contains(*v)) {
            let origin = VertexOrigin::Gadget {
                guards: v.clone(),
                side,
            };
            let hub = asm.vertex(&format!("{v}{suffix}"), origin);
            let gadget = || EdgeOrigin::Gadget {
                guards: v.clone(),
                side,
            };
            asm.edge((terminal, at_terminal), (&hub, toward_terminal), gadget(), None);
            asm.edge((&hub, -toward_terminal), (v, Sign::Plus), gadget(), None);
            asm.edge((&hub, -toward_terminal), (v, Sign::Minus), gadget(), None);
        }
    }
    asm.map.source = Some(s.clone());
    asm.map.target = Some(t.clone());
    let (graph, map) = asm.finish();
    Ok(TerminalAttachment { graph, s, t, map })
}

/// Sets every half-edge sign at `s` to `-` and at `t` to `+`.
pub fn normalize_terminals(
    g: &BidirectedGraph,
    s: &VertexId,
    t: &VertexId,
) -> Result<BidirectedGraph, ReduceError> {
    if s == t {
        return Err(ReduceError::EqualTerminals);
    }
    g.check_vertices([s, t])?;
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let mut e = e.clone();
            for (end, sign) in [(&e.u, &mut e.sign_u), (&e.v, &mut e.sign_v)] {
                if end == s {
                    *sign = Sign::Minus;
                } else if end == t {
                    *sign = Sign::Plus;
                }
            }
            e
        })
        .collect();
    Ok(g.with_edges(edges))
}

fn is_normalized(g: &BidirectedGraph, s: &VertexId, t: &VertexId) -> bool {
    g.incident_edges(s).all(|e| e.sign_at(s) == Some(Sign::Minus))
        && g.incident_edges(t).all(|e| e.sign_at(t) == Some(Sign::Plus))
}

#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub graph: BidirectedGraph,
    pub s: VertexId,
    pub t: VertexId,
    /// The closing edge, always the last edge of `graph`.
    pub f: EdgeId,
    pub map: ReductionMap,
}

/// Splits every non-terminal `v` into `v+` (its `+` ends) and `v-` (its `-`
/// ends) joined by an edge with `-` at `v+` and `+` at `v-`, then closes with
/// `f` from `t` to `s` (`-` at `t`, `+` at `s`).
pub fn split_and_close(
    g: &BidirectedGraph,
    s: &VertexId,
    t: &VertexId,
) -> Result<SplitGraph, ReduceError> {
    if s == t {
        return Err(ReduceError::EqualTerminals);
    }
    g.check_vertices([s, t])?;
    if !is_normalized(g, s, t) {
        return Err(ReduceError::NotNormalized);
    }
    if g.incident_edges(s).any(|e| e.joins(s, t)) {
        return Err(ReduceError::DirectTerminalEdge);
    }
    let mut asm = Assembly::new(ReductionKind::Split);
    asm.names.reserve(s);
    asm.names.reserve(t);
    let mut halves: BTreeMap<VertexId, [VertexId; 2]> = BTreeMap::new();
    for v in g.vertices() {
        let image = VertexOrigin::Image {
            original: v.clone(),
            copy: 0,
        };
        if v == s || v == t {
            asm.vertices.push(v.clone());
            asm.map.record_vertex(v, image);
            continue;
        }
        let plus = asm.vertex(
            &format!("{v}+"),
            VertexOrigin::Half {
                original: v.clone(),
                sign: Sign::Plus,
            },
        );
        let minus = asm.vertex(
            &format!("{v}-"),
            VertexOrigin::Half {
                original: v.clone(),
                sign: Sign::Minus,
            },
        );
        halves.insert(v.clone(), [plus, minus]);
    }
    let end = |v: &VertexId, sign: Sign| match halves.get(v) {
        Some([plus, minus]) => {
            if sign == Sign::Plus {
                plus.clone()
            } else {
                minus.clone()
            }
        }
        None => v.clone(),
    };
    for e in g.edges() {
        let (u, v) = (end(&e.u, e.sign_u), end(&e.v, e.sign_v));
        asm.edge((&u, e.sign_u), (&v, e.sign_v), image_origin(e, 0), e.label.clone());
    }
    for v in g.vertices() {
        if let Some([plus, minus]) = halves.get(v) {
            asm.edge(
                (plus, Sign::Minus),
                (minus, Sign::Plus),
                EdgeOrigin::Split(v.clone()),
                None,
            );
        }
    }
    let f = asm.edge((t, Sign::Minus), (s, Sign::Plus), EdgeOrigin::Closing, None);
    asm.map.source = Some(s.clone());
    asm.map.target = Some(t.clone());
    asm.map.closing = Some(f);
    let (graph, map) = asm.finish();
    Ok(SplitGraph {
        graph,
        s: s.clone(),
        t: t.clone(),
        f,
        map,
    })
}

#[derive(Debug, Clone)]
pub struct Doubled {
    pub graph: BidirectedGraph,
    pub x1: BTreeSet<VertexId>,
    pub x2: BTreeSet<VertexId>,
    pub map: ReductionMap,
}

/// Disjoint union of two relabeled copies; `x1`, `x2` are the images of `X`.
pub fn double_for_xpaths(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
) -> Result<Doubled, ReduceError> {
    g.check_vertices(x)?;
    let mut asm = Assembly::new(ReductionKind::Double);
    for v in g.vertices() {
        asm.names.reserve(v);
    }
    let mut sets = [BTreeSet::new(), BTreeSet::new()];
    for copy in 0..2u8 {
        let suffix = if copy == 0 { "'" } else { "''" };
        let mut rename = BTreeMap::new();
        for v in g.vertices() {
            let w = asm.vertex(
                &format!("{v}{suffix}"),
                VertexOrigin::Image {
                    original: v.clone(),
                    copy,
                },
            );
            if x.contains(v) {
                sets[copy as usize].insert(w.clone());
            }
            rename.insert(v.clone(), w);
        }
        for e in g.edges() {
            asm.edge(
                (&rename[&e.u], e.sign_u),
                (&rename[&e.v], e.sign_v),
                image_origin(e, copy),
                e.label.clone(),
            );
        }
    }
    let (graph, map) = asm.finish();
    let [x1, x2] = sets;
    Ok(Doubled { graph, x1, x2, map })
}

/// Maps links of the most-derived graph back through `chain`, which lists
/// reductions from the original graph outwards.
pub fn map_links_back(chain: &[&ReductionMap], links: &[Link]) -> Result<Vec<Link>, ReduceError> {
    links
        .iter()
        .map(|l| {
            chain
                .iter()
                .rev()
                .try_fold(l.clone(), |link, map| map.pull_link(&link))
        })
        .collect()
}

/// One original vertex per cut edge of the most-derived graph.
pub fn map_cut_to_separator(
    chain: &[&ReductionMap],
    cut: &BTreeSet<EdgeId>,
) -> Result<BTreeSet<VertexId>, ReduceError> {
    let Some((last, rest)) = chain.split_last() else {
        return Err(ReduceError::NotInvertible);
    };
    cut.iter()
        .map(|&e| {
            let v = last.cut_edge_vertex(e)?;
            rest.iter().rev().try_fold(v, |v, map| map.pull_vertex(&v))
        })
        .collect()
}
