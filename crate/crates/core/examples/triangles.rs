//! Two triangles, with and without one edge.
//!
//! No edge joins the triangles, so the only links are turnarounds, each
//! worth two. With all six edges every X-side path misses some vertex of
//! X, so blocking needs two vertices. Dropping `x2x3` makes `x1` hit every
//! X-side path, and one vertex separates a packing of value two.
//!
//! ```text
//! cargo run --example triangles
//! ```

use bidirected_menger::{fixtures, oracle, solve_menger, Link, OracleBounds};

fn describe(link: &Link) -> String {
    let names = |w: &bidirected_menger::Walk| {
        w.vertices().iter().map(|v| v.as_str()).collect::<Vec<_>>().join("-")
    };
    match link {
        Link::Path(w) => format!("path {}", names(w)),
        Link::Turnaround {
            source_part,
            target_part,
        } => format!("turnaround {} + {}", names(source_part), names(target_part)),
    }
}

fn main() {
    for (name, inst) in [("two triangles", fixtures::two_triangles()), ("open triangle", fixtures::open_triangle())] {
        let cert = solve_menger(&inst.graph, &inst.x, &inst.y).expect("small instance");
        println!("{name}: value {}", cert.value);
        for l in &cert.links {
            println!("  {} (weight {})", describe(l), l.weight());
        }
        println!(
            "  separator {:?} (dual cut gave {:?}, refined by {})",
            cert.separator,
            cert.dual_separator,
            cert.checks.separator_source.as_str()
        );
        println!("  relaxation {} / dual {}", cert.primal_value, cert.dual_value);

        let b = OracleBounds::default();
        let max = oracle::max_links(&inst.graph, &inst.x, &inst.y, &b).unwrap();
        let min = oracle::min_separator(&inst.graph, &inst.x, &inst.y, &b).unwrap();
        println!("  brute force: max {} min {}", max.value, min.size);
        assert_eq!(max.value, cert.value);
        assert!(cert.checks.passed());
    }
}
