//! The line-oriented instance format.
//!
//! ```text
//! # comment
//! vertex a
//! vertex b
//! edge a b +- [label]
//! set X a
//! set Y b
//! terminal s a
//! terminal t b
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bigraph::{BidirectedGraph, EdgeSpec, GraphError, Sign, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: BidirectedGraph,
    pub x: BTreeSet<VertexId>,
    pub y: BTreeSet<VertexId>,
    pub s: Option<VertexId>,
    pub t: Option<VertexId>,
}

impl InstanceFile {
    pub fn new(graph: BidirectedGraph) -> Self {
        InstanceFile {
            graph,
            x: BTreeSet::new(),
            y: BTreeSet::new(),
            s: None,
            t: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop at vertex `{0}` rejected")]
    LoopRejected(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("terminal {0} designated twice")]
    DuplicateTerminal(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut declared = BTreeSet::new();
    let mut edges: Vec<(usize, EdgeSpec)> = Vec::new();
    let mut sets: Vec<(usize, char, VertexId)> = Vec::new();
    let mut s = None;
    let mut t = None;
    let mut terminal_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else {
            continue;
        };
        match head {
            "vertex" => {
                let [id] = rest else {
                    return Err(syntax(line, "expected `vertex <id>`"));
                };
                if !declared.insert(*id) {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::DuplicateVertex(id.to_string()),
                    });
                }
                vertices.push(VertexId::new(id));
            }
            "edge" => {
                let (u, v, signs, label) = match rest {
                    [u, v, signs] => (u, v, signs, None),
                    [u, v, signs, label] => (u, v, signs, Some(label.to_string())),
                    _ => return Err(syntax(line, "expected `edge <u> <v> <signs> [<label>]`")),
                };
                let Some((su, sv)) = Sign::pair_from_str(signs) else {
                    return Err(syntax(line, format!("bad sign pair `{signs}`")));
                };
                if u == v {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::LoopRejected(u.to_string()),
                    });
                }
                let mut spec = EdgeSpec::new(*u, *v, su, sv);
                spec.label = label;
                edges.push((line, spec));
            }
            "set" => {
                let Some((&which, ids)) = rest.split_first() else {
                    return Err(syntax(line, "expected `set X|Y <id>...`"));
                };
                let which = match which {
                    "X" => 'X',
                    "Y" => 'Y',
                    other => return Err(syntax(line, format!("unknown set `{other}`"))),
                };
                sets.extend(ids.iter().map(|id| (line, which, VertexId::new(id))));
            }
            "terminal" => {
                let [which, id] = rest else {
                    return Err(syntax(line, "expected `terminal s|t <id>`"));
                };
                let slot = match *which {
                    "s" => &mut s,
                    "t" => &mut t,
                    other => return Err(syntax(line, format!("unknown terminal `{other}`"))),
                };
                if slot.is_some() {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::DuplicateTerminal(which.chars().next().unwrap()),
                    });
                }
                *slot = Some(VertexId::new(id));
                terminal_lines.push((line, VertexId::new(id)));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let unknown = |line: usize, v: &VertexId| ParseError {
        line,
        kind: ParseErrorKind::UnknownVertex(v.to_string()),
    };
    for (line, e) in &edges {
        for w in [&e.u, &e.v] {
            if !declared.contains(w.as_str()) {
                return Err(unknown(*line, w));
            }
        }
    }
    let mut x = BTreeSet::new();
    let mut y = BTreeSet::new();
    for (line, which, v) in sets {
        if !declared.contains(v.as_str()) {
            return Err(unknown(line, &v));
        }
        let target = if which == 'X' { &mut x } else { &mut y };
        target.insert(v);
    }
    for (line, v) in &terminal_lines {
        if !declared.contains(v.as_str()) {
            return Err(unknown(*line, v));
        }
    }
    let specs: Vec<EdgeSpec> = edges.into_iter().map(|(_, e)| e).collect();
    let graph = BidirectedGraph::build(vertices, &specs).map_err(|e| {
        // every failure mode was ruled out above
        let kind = match e {
            GraphError::UnknownVertex(v) => ParseErrorKind::UnknownVertex(v.to_string()),
            GraphError::LoopRejected(v) => ParseErrorKind::LoopRejected(v.to_string()),
            other => ParseErrorKind::Syntax(other.to_string()),
        };
        ParseError { line: 0, kind }
    })?;
    Ok(InstanceFile { graph, x, y, s, t })
}

pub fn serialize_instance(inst: &InstanceFile) -> String {
    let mut out = String::new();
    for v in inst.graph.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in inst.graph.edges() {
        write!(out, "edge {} {} {}{}", e.u, e.v, e.sign_u, e.sign_v).unwrap();
        if let Some(label) = &e.label {
            write!(out, " {label}").unwrap();
        }
        out.push('\n');
    }
    for (name, set) in [("X", &inst.x), ("Y", &inst.y)] {
        if !set.is_empty() {
            out.push_str("set ");
            out.push_str(name);
            for v in set {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
    }
    if let Some(s) = &inst.s {
        writeln!(out, "terminal s {s}").unwrap();
    }
    if let Some(t) = &inst.t {
        writeln!(out, "terminal t {t}").unwrap();
    }
    out
}
