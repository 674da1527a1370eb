//! Walks, paths and links by hand.
//!
//! A walk may only pass through a vertex by entering on one sign and
//! leaving on the other.
//!
//! ```text
//! cargo run --example walks
//! ```

use std::collections::BTreeSet;

use bidirected_menger::walks::{check_walk, classify_link, enumerate_xy_links, is_path};
use bidirected_menger::{EdgeId, GraphBuilder, Link, VertexId, Walk};

fn main() {
    let g = GraphBuilder::new()
        .vertices(["a", "b", "c"])
        .edge("a", "b", "++")
        .edge("b", "c", "-+")
        .edge("b", "c", "++")
        .build()
        .unwrap();
    let v = |s: &str| VertexId::new(s);
    let through = Walk::new(vec![v("a"), v("b"), v("c")], vec![EdgeId(0), EdgeId(1)]).unwrap();
    let blocked = Walk::new(vec![v("a"), v("b"), v("c")], vec![EdgeId(0), EdgeId(2)]).unwrap();
    println!("a-b-c via e1: {:?} path {}", check_walk(&g, &through), is_path(&g, &through));
    println!("a-b-c via e2: {:?} path {}", check_walk(&g, &blocked), is_path(&g, &blocked));
    println!("reversed: {:?}", through.reversed().vertices());

    let x: BTreeSet<VertexId> = [v("a")].into();
    let y: BTreeSet<VertexId> = [v("c")].into();
    for l in enumerate_xy_links(&g, &x, &y) {
        println!("link {:?} weight {}", classify_link(&g, &l, &x, &y), l.weight());
        if let Link::Path(w) = &l {
            println!("  edges {:?}", w.edges());
        }
    }
}
