//! JSON renderings of certificates and oracle results.
//!
//! Rationals are exact `"p/q"` strings; counts are plain numbers.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bigraph::{BidirectedGraph, EdgeId, VertexId};
use crate::certify::{Checks, MengerCertificate, XPathCertificate, XPathChecks};
use crate::oracle::{PackingResult, SeparatorResult, SeparatorSize};
use crate::ratlp::format_pq;
use crate::walks::{Link, Walk};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkJson {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkJson {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<WalkJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpJson {
    pub primal: String,
    pub dual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChecksJson {
    pub duality: bool,
    /// Informational: the relaxation need not have an integral optimum.
    pub relaxation_integral: bool,
    /// Informational: relaxation optimum above the packing value.
    pub integrality_gap: bool,
    pub dual_integral: bool,
    pub balanced: bool,
    pub links_valid: bool,
    pub disjoint: bool,
    pub value_matches_links: bool,
    pub cut_excludes_closing: bool,
    pub cut_bound: bool,
    pub separator_bound: bool,
    /// Present only when the oracle re-checked the separator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator_valid: Option<bool>,
    pub passed: bool,
}

impl From<&Checks> for ChecksJson {
    fn from(c: &Checks) -> Self {
        ChecksJson {
            duality: c.duality,
            relaxation_integral: c.relaxation_integral,
            integrality_gap: c.integrality_gap,
            dual_integral: c.dual_integral,
            balanced: c.balanced,
            links_valid: c.links_valid,
            disjoint: c.disjoint,
            value_matches_links: c.value_matches_links,
            cut_excludes_closing: c.cut_excludes_closing,
            cut_bound: c.cut_bound,
            separator_bound: c.separator_bound,
            separator_valid: c.separator_valid,
            passed: c.passed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub value: usize,
    pub links: Vec<LinkJson>,
    pub separator: Vec<String>,
    pub separator_size: usize,
    /// `dual`, `minimized` or `search`.
    pub separator_source: &'static str,
    pub dual_separator: Vec<String>,
    pub lp: LpJson,
    pub slack_cycles: usize,
    pub branch_nodes: usize,
    pub checks: ChecksJson,
    /// Oracle optimum, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XPathChecksJson {
    pub paths_valid: bool,
    pub disjoint: bool,
    pub separator_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator_valid: Option<bool>,
    pub doubled_passed: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XPathJson {
    pub packing: usize,
    pub paths: Vec<LinkJson>,
    pub separator: Vec<String>,
    pub separator_size: usize,
    pub separator_source: &'static str,
    pub lp: LpJson,
    pub checks: XPathChecksJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingJson {
    pub value: usize,
    pub links: Vec<LinkJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatorJson {
    /// A number, or the string `"infinite"`.
    pub size: serde_json::Value,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XPathOracleJson {
    pub packing: usize,
    pub min_hitting_set: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_links: Option<PackingJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_separator: Option<SeparatorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub st_max_links: Option<PackingJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub st_min_separator: Option<SeparatorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xpaths: Option<XPathOracleJson>,
}

fn edge_name(g: &BidirectedGraph, e: EdgeId) -> String {
    g.edge(e).map_or_else(|| e.to_string(), |edge| edge.name())
}

fn names(vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(VertexId::to_string).collect()
}

pub fn walk_json(g: &BidirectedGraph, w: &Walk) -> WalkJson {
    WalkJson {
        vertices: names(w.vertices()),
        edges: w.edges().iter().map(|&e| edge_name(g, e)).collect(),
    }
}

pub fn link_json(g: &BidirectedGraph, link: &Link) -> LinkJson {
    match link {
        Link::Path(w) => {
            let WalkJson { vertices, edges } = walk_json(g, w);
            LinkJson {
                kind: "path",
                vertices,
                edges,
                parts: None,
            }
        }
        Link::Turnaround {
            source_part,
            target_part,
        } => {
            let parts = vec![walk_json(g, source_part), walk_json(g, target_part)];
            LinkJson {
                kind: "turnaround",
                vertices: parts.iter().flat_map(|p| p.vertices.clone()).collect(),
                edges: parts.iter().flat_map(|p| p.edges.clone()).collect(),
                parts: Some(parts),
            }
        }
    }
}

fn set_names(s: &BTreeSet<VertexId>) -> Vec<String> {
    s.iter().map(VertexId::to_string).collect()
}

pub fn certificate_json(g: &BidirectedGraph, cert: &MengerCertificate) -> CertificateJson {
    CertificateJson {
        value: cert.value,
        links: cert.links.iter().map(|l| link_json(g, l)).collect(),
        separator: set_names(&cert.separator),
        separator_size: cert.separator.len(),
        separator_source: cert.checks.separator_source.as_str(),
        dual_separator: set_names(&cert.dual_separator),
        lp: LpJson {
            primal: format_pq(&cert.primal_value),
            dual: format_pq(&cert.dual_value),
        },
        slack_cycles: cert.checks.slack_cycles,
        branch_nodes: cert.checks.branch_nodes,
        checks: (&cert.checks).into(),
        oracle: None,
    }
}

fn xpath_checks_json(c: &XPathChecks, doubled_passed: bool) -> XPathChecksJson {
    XPathChecksJson {
        paths_valid: c.paths_valid,
        disjoint: c.disjoint,
        separator_bound: c.separator_bound,
        separator_valid: c.separator_valid,
        doubled_passed,
        passed: c.passed() && doubled_passed,
    }
}

pub fn xpath_json(g: &BidirectedGraph, cert: &XPathCertificate) -> XPathJson {
    XPathJson {
        packing: cert.packing,
        paths: cert
            .paths
            .iter()
            .map(|w| link_json(g, &Link::Path(w.clone())))
            .collect(),
        separator: set_names(&cert.separator),
        separator_size: cert.separator.len(),
        separator_source: cert.checks.separator_source.as_str(),
        lp: LpJson {
            primal: format_pq(&cert.doubled.primal_value),
            dual: format_pq(&cert.doubled.dual_value),
        },
        checks: xpath_checks_json(&cert.checks, cert.doubled.checks.lp_passed()),
    }
}

pub fn packing_json(g: &BidirectedGraph, p: &PackingResult) -> PackingJson {
    PackingJson {
        value: p.value,
        links: p.links.iter().map(|l| link_json(g, l)).collect(),
    }
}

pub fn separator_json(s: &SeparatorResult) -> SeparatorJson {
    SeparatorJson {
        size: match s.size {
            SeparatorSize::Finite(n) => n.into(),
            SeparatorSize::Infinite => "infinite".into(),
        },
        vertices: set_names(&s.vertices),
    }
}
