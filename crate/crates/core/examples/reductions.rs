//! The graph transformations behind the solver, step by step.
//!
//! ```text
//! cargo run --example reductions
//! ```

use bidirected_menger::reduce::{attach_terminals, double_for_xpaths, split_and_close};
use bidirected_menger::{fixtures, BidirectedGraph};

fn show(label: &str, g: &BidirectedGraph) {
    println!("{label}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        println!("  {}: {}{} {}{}", e.name(), e.u, e.sign_u.as_char(), e.v, e.sign_v.as_char());
    }
}

fn main() {
    let inst = fixtures::open_triangle();
    show("input", &inst.graph);

    let att = attach_terminals(&inst.graph, &inst.x, &inst.y).unwrap();
    show("terminals attached", &att.graph);

    let sp = split_and_close(&att.graph, &att.s, &att.t).unwrap();
    println!("closing edge {}", sp.f);
    println!(
        "split and closed: {} vertices, {} edges",
        sp.graph.vertex_count(),
        sp.graph.edge_count()
    );

    let tri = fixtures::x_triangle();
    let d = double_for_xpaths(&tri.graph, &tri.x).unwrap();
    println!("doubled triangle: X1 {:?} X2 {:?}", d.x1, d.x2);
}
