//! Exact disjoint-link packings and vertex separators in bidirected graphs.
//!
//! An X–Y *link* is either an X–Y path or a *turnaround*: a nontrivial
//! X–X path plus a disjoint nontrivial Y–Y path, counted twice. The maximum
//! packing of disjoint links is computed by an exact rational LP whose dual
//! yields a separator no larger than the packing. Every result can be
//! cross-checked against the brute-force [`oracle`].
//!
//! ```
//! use bidirected_menger::{fixtures, solve_menger};
//!
//! let inst = fixtures::open_triangle();
//! let cert = solve_menger(&inst.graph, &inst.x, &inst.y).unwrap();
//! assert_eq!(cert.value, 2);
//! assert_eq!(cert.separator.len(), 1);
//! assert!(cert.checks.passed());
//! ```

pub mod bigraph;
pub mod certify;
pub mod cli;
pub mod fixtures;
pub mod oracle;
pub mod ratlp;
pub mod reduce;
pub mod walks;

pub use bigraph::{BidirectedGraph, Edge, EdgeId, GraphBuilder, GraphError, Sign, VertexId};
pub use certify::{
    solve_menger, solve_st, solve_xpaths, CertifyError, Checks, MengerCertificate, XPathCertificate,
};
pub use cli::instance::{parse_instance, serialize_instance, InstanceFile};
pub use oracle::OracleBounds;
pub use ratlp::Rational;
pub use walks::{Link, Walk};
