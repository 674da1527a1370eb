//! Brute-force ground truth for small instances.
//!
//! Links are enumerated exhaustively, packings are found by branch and bound
//! over vertex bitmasks, and separators by scanning vertex subsets in
//! increasing size. Nothing here touches the LP code.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::bigraph::{BidirectedGraph, GraphError, VertexId};
use crate::ratlp::regular::combinations;
use crate::walks::{enumerate_paths, enumerate_st_links, enumerate_xy_links, Link, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_vertices: 10,
            max_edges: 16,
        }
    }
}

impl OracleBounds {
    pub fn admits(&self, g: &BidirectedGraph) -> bool {
        g.vertex_count() <= self.max_vertices && g.edge_count() <= self.max_edges
    }

    fn check(&self, g: &BidirectedGraph) -> Result<(), OracleError> {
        if self.admits(g) {
            Ok(())
        } else {
            Err(OracleError::SizeBoundExceeded {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                bounds: *self,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance with {vertices} vertices and {edges} edges exceeds oracle bounds {bounds:?}")]
    SizeBoundExceeded {
        vertices: usize,
        edges: usize,
        bounds: OracleBounds,
    },
    #[error("terminals must be distinct")]
    EqualTerminals,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingResult {
    /// Paths count once, turnarounds twice.
    pub value: usize,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SeparatorSize {
    Finite(usize),
    /// Some link has no vertex that may be deleted.
    Infinite,
}

impl fmt::Display for SeparatorSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatorSize::Finite(n) => write!(f, "{n}"),
            SeparatorSize::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorResult {
    pub size: SeparatorSize,
    pub vertices: BTreeSet<VertexId>,
}

fn mask_of(g: &BidirectedGraph, vs: impl IntoIterator<Item = VertexId>) -> u64 {
    vs.into_iter()
        .filter_map(|v| g.vertex_position(&v))
        .fold(0, |m, p| m | (1u64 << p))
}

/// Maximum-weight family of pairwise disjoint masks.
fn max_packing(n: usize, items: &[(u64, usize)]) -> (usize, Vec<usize>) {
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (mask, _)) in items.iter().enumerate() {
        for (p, list) in by_vertex.iter_mut().enumerate() {
            if mask & (1 << p) != 0 {
                list.push(i);
            }
        }
    }
    struct Search<'a> {
        items: &'a [(u64, usize)],
        by_vertex: Vec<Vec<usize>>,
        best: Option<(usize, Vec<usize>)>,
        choice: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, avail: u64, value: usize) {
            // every link spends at least one vertex per unit of weight
            if let Some((best, _)) = &self.best {
                if value + avail.count_ones() as usize <= *best {
                    return;
                }
            }
            let next = (0..self.by_vertex.len()).find(|&p| {
                avail & (1 << p) != 0
                    && self.by_vertex[p]
                        .iter()
                        .any(|&i| self.items[i].0 & !avail == 0)
            });
            let Some(p) = next else {
                if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                    self.best = Some((value, self.choice.clone()));
                }
                return;
            };
            for k in 0..self.by_vertex[p].len() {
                let i = self.by_vertex[p][k];
                let (mask, w) = self.items[i];
                if mask & !avail == 0 {
                    self.choice.push(i);
                    self.run(avail & !mask, value + w);
                    self.choice.pop();
                }
            }
            self.run(avail & !(1 << p), value);
        }
    }
    // links without a countable vertex never conflict
    let free: Vec<usize> = (0..items.len()).filter(|&i| items[i].0 == 0).collect();
    let free_value: usize = free.iter().map(|&i| items[i].1).sum();
    let mut search = Search {
        items,
        by_vertex,
        best: None,
        choice: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.run(all, 0);
    let (value, mut chosen) = search.best.expect("the empty family is always found");
    chosen.extend(free);
    (value + free_value, chosen)
}

/// Smallest subset of `candidates` (positions, already in tie-break order)
/// meeting every mask; `None` if some mask misses all candidates.
fn min_hitting_set(candidates: &[usize], masks: &[u64]) -> Option<Vec<usize>> {
    let allowed = candidates.iter().fold(0u64, |m, &p| m | (1 << p));
    let mut distinct: Vec<u64> = masks
        .iter()
        .map(|m| m & allowed)
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    if distinct.contains(&0) {
        return None;
    }
    distinct.sort_unstable_by_key(|m| m.count_ones());
    // drop masks that contain another mask; hitting the smaller one suffices
    let mut minimal: Vec<u64> = Vec::new();
    for m in distinct {
        if !minimal.iter().any(|&k| (k & m) == k) {
            minimal.push(m);
        }
    }
    for size in 0..=candidates.len() {
        for combo in combinations(candidates.len(), size) {
            let chosen = combo.iter().fold(0u64, |m, &i| m | (1 << candidates[i]));
            if minimal.iter().all(|&m| m & chosen != 0) {
                return Some(combo.iter().map(|&i| candidates[i]).collect());
            }
        }
    }
    unreachable!("the full candidate set hits every nonempty mask")
}

fn positions_in_id_order(g: &BidirectedGraph, skip: &[&VertexId]) -> Vec<usize> {
    let mut ids: Vec<&VertexId> = g.vertices().iter().filter(|v| !skip.contains(v)).collect();
    ids.sort();
    ids.into_iter()
        .map(|v| g.vertex_position(v).expect("own vertex"))
        .collect()
}

fn pack(g: &BidirectedGraph, links: Vec<Link>, ignore: u64) -> PackingResult {
    let items: Vec<(u64, usize)> = links
        .iter()
        .map(|l| (mask_of(g, l.vertex_set()) & !ignore, l.weight()))
        .collect();
    let (value, chosen) = max_packing(g.vertex_count(), &items);
    PackingResult {
        value,
        links: chosen.into_iter().map(|i| links[i].clone()).collect(),
    }
}

fn separator(
    g: &BidirectedGraph,
    links: &[Link],
    skip: &[&VertexId],
) -> SeparatorResult {
    let masks: Vec<u64> = links.iter().map(|l| mask_of(g, l.vertex_set())).collect();
    let candidates = positions_in_id_order(g, skip);
    match min_hitting_set(&candidates, &masks) {
        Some(chosen) => SeparatorResult {
            size: SeparatorSize::Finite(chosen.len()),
            vertices: chosen.into_iter().map(|p| g.vertices()[p].clone()).collect(),
        },
        None => SeparatorResult {
            size: SeparatorSize::Infinite,
            vertices: BTreeSet::new(),
        },
    }
}

/// Maximum number of pairwise vertex-disjoint X–Y links, turnarounds twice.
pub fn max_links(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
    bounds: &OracleBounds,
) -> Result<PackingResult, OracleError> {
    bounds.check(g)?;
    g.check_vertices(x.iter().chain(y))?;
    Ok(pack(g, enumerate_xy_links(g, x, y), 0))
}

/// Smallest vertex set leaving no X–Y link; ties go to the lexicographically
/// first set of ids.
pub fn min_separator(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
    bounds: &OracleBounds,
) -> Result<SeparatorResult, OracleError> {
    bounds.check(g)?;
    g.check_vertices(x.iter().chain(y))?;
    Ok(separator(g, &enumerate_xy_links(g, x, y), &[]))
}

/// Internally disjoint `s`–`t` links and the smallest separator avoiding
/// `s` and `t`.
pub fn st(
    g: &BidirectedGraph,
    s: &VertexId,
    t: &VertexId,
    bounds: &OracleBounds,
) -> Result<(PackingResult, SeparatorResult), OracleError> {
    if s == t {
        return Err(OracleError::EqualTerminals);
    }
    bounds.check(g)?;
    g.check_vertices([s, t])?;
    let links = enumerate_st_links(g, s, t);
    let ends = mask_of(g, [s.clone(), t.clone()]);
    Ok((pack(g, links.clone(), ends), separator(g, &links, &[s, t])))
}

/// Nontrivial X–X paths.
pub fn x_paths(g: &BidirectedGraph, x: &BTreeSet<VertexId>) -> Vec<Walk> {
    enumerate_paths(g, x, x)
        .into_iter()
        .filter(|w| !w.is_trivial())
        .collect()
}

/// Maximum number of disjoint X-paths and the smallest set hitting all of them.
pub fn xpaths(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    bounds: &OracleBounds,
) -> Result<(usize, usize), OracleError> {
    bounds.check(g)?;
    g.check_vertices(x)?;
    let links: Vec<Link> = x_paths(g, x).into_iter().map(Link::Path).collect();
    let packing = pack(g, links.clone(), 0).value;
    let hitting = match separator(g, &links, &[]).size {
        SeparatorSize::Finite(n) => n,
        SeparatorSize::Infinite => unreachable!("every X-path has a vertex"),
    };
    Ok((packing, hitting))
}

/// True iff no X–Y link survives deleting `drop`.
pub fn separates(
    g: &BidirectedGraph,
    x: &BTreeSet<VertexId>,
    y: &BTreeSet<VertexId>,
    drop: &BTreeSet<VertexId>,
) -> Result<bool, OracleError> {
    let h = g.delete_vertices(drop)?;
    let x: BTreeSet<_> = x.difference(drop).cloned().collect();
    let y: BTreeSet<_> = y.difference(drop).cloned().collect();
    Ok(enumerate_xy_links(&h, &x, &y).is_empty())
}

/// True iff no `s`–`t` link survives deleting `drop` (which must avoid `s`, `t`).
pub fn separates_st(
    g: &BidirectedGraph,
    s: &VertexId,
    t: &VertexId,
    drop: &BTreeSet<VertexId>,
) -> Result<bool, OracleError> {
    if drop.contains(s) || drop.contains(t) {
        return Ok(false);
    }
    let h = g.delete_vertices(drop)?;
    Ok(enumerate_st_links(&h, s, t).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::GraphBuilder;
    use crate::fixtures;

    fn v(s: &str) -> VertexId {
        VertexId::new(s)
    }

    fn set(items: &[&str]) -> BTreeSet<VertexId> {
        items.iter().map(|s| v(s)).collect()
    }

    #[test]
    fn two_triangles_values() {
        let inst = fixtures::two_triangles();
        let b = OracleBounds::default();
        let p = max_links(&inst.graph, &inst.x, &inst.y, &b).unwrap();
        assert_eq!(p.value, 2);
        assert_eq!(p.links.len(), 1);
        let s = min_separator(&inst.graph, &inst.x, &inst.y, &b).unwrap();
        assert_eq!(s.size, SeparatorSize::Finite(2));
        assert!(separates(&inst.graph, &inst.x, &inst.y, &s.vertices).unwrap());
    }

    #[test]
    fn open_triangle_values() {
        let inst = fixtures::open_triangle();
        let b = OracleBounds::default();
        assert_eq!(max_links(&inst.graph, &inst.x, &inst.y, &b).unwrap().value, 2);
        let s = min_separator(&inst.graph, &inst.x, &inst.y, &b).unwrap();
        assert_eq!(s.size, SeparatorSize::Finite(1));
        assert_eq!(s.vertices, set(&["x1"]));
    }

    #[test]
    fn edgeless() {
        let g = GraphBuilder::new().vertices(["a", "b"]).build().unwrap();
        let b = OracleBounds::default();
        assert_eq!(max_links(&g, &set(&["a"]), &set(&["b"]), &b).unwrap().value, 0);
        let s = min_separator(&g, &set(&["a"]), &set(&["b"]), &b).unwrap();
        assert_eq!(s.size, SeparatorSize::Finite(0));
        assert_eq!(xpaths(&g, &set(&["a", "b"]), &b).unwrap(), (0, 0));
    }

    #[test]
    fn st_direct_edge_is_infinite() {
        let g = GraphBuilder::new().vertices(["s", "t"]).edge("s", "t", "-+").build().unwrap();
        let (p, s) = st(&g, &v("s"), &v("t"), &OracleBounds::default()).unwrap();
        assert_eq!(p.value, 1);
        assert_eq!(s.size, SeparatorSize::Infinite);
        assert_eq!(
            st(&g, &v("s"), &v("s"), &OracleBounds::default()).unwrap_err(),
            OracleError::EqualTerminals
        );
    }

    #[test]
    fn st_short_path() {
        let g = GraphBuilder::new()
            .vertices(["s", "v", "t"])
            .edge("s", "v", "-+")
            .edge("v", "t", "-+")
            .build()
            .unwrap();
        let (p, s) = st(&g, &v("s"), &v("t"), &OracleBounds::default()).unwrap();
        assert_eq!(p.value, 1);
        assert_eq!(s.size, SeparatorSize::Finite(1));
        assert_eq!(s.vertices, set(&["v"]));
    }

    #[test]
    fn xpaths_small() {
        let b = OracleBounds::default();
        let g = GraphBuilder::new().vertices(["a", "b"]).edge("a", "b", "++").build().unwrap();
        assert_eq!(xpaths(&g, &set(&["a", "b"]), &b).unwrap(), (1, 1));
        let tri = fixtures::x_triangle();
        assert_eq!(xpaths(&tri.graph, &tri.x, &b).unwrap(), (1, 2));
    }

    #[test]
    fn bounds_are_enforced() {
        let inst = fixtures::two_triangles();
        let tiny = OracleBounds {
            max_vertices: 3,
            max_edges: 16,
        };
        assert!(matches!(
            max_links(&inst.graph, &inst.x, &inst.y, &tiny),
            Err(OracleError::SizeBoundExceeded { .. })
        ));
    }

    #[test]
    fn packing_search_prefers_heavier_families() {
        // masks over 4 vertices: a turnaround on all four beats one path
        let items = [(0b0001, 1), (0b1111, 2)];
        assert_eq!(max_packing(4, &items).0, 2);
        let items = [(0b0001, 1), (0b0010, 1), (0b0100, 1), (0b1111, 2)];
        assert_eq!(max_packing(4, &items).0, 3);
        assert_eq!(max_packing(3, &[]).0, 0);
    }
}
