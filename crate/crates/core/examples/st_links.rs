//! Internally disjoint s–t links.
//!
//! The edge `b t` arrives at `t` with the wrong sign, so `s b t` is only
//! an almost path; `s a t` is the one real path.
//!
//! ```text
//! cargo run --example st_links
//! ```

use bidirected_menger::{fixtures, oracle, solve_st, GraphBuilder, OracleBounds, VertexId};

fn main() {
    let inst = fixtures::short_st();
    let (s, t) = (inst.s.clone().unwrap(), inst.t.clone().unwrap());
    let cert = solve_st(&inst.graph, &s, &t).expect("solvable");
    println!("short_st: value {} separator {:?}", cert.value, cert.separator);
    for l in &cert.links {
        println!("  {l:?}");
    }

    // a turnaround: an almost path at s and one at t, no s-t path at all
    let g = GraphBuilder::new()
        .vertices(["s", "t", "a", "b", "c", "d"])
        .edge("s", "a", "-+")
        .edge("a", "b", "-+")
        .edge("b", "s", "--")
        .edge("t", "c", "+-")
        .edge("c", "d", "+-")
        .edge("d", "t", "++")
        .build()
        .unwrap();
    let (s, t) = (VertexId::new("s"), VertexId::new("t"));
    let cert = solve_st(&g, &s, &t).expect("solvable");
    let (max, min) = oracle::st(&g, &s, &t, &OracleBounds::default()).unwrap();
    println!(
        "two loops: value {} separator {:?}; brute force {}/{}",
        cert.value, cert.separator, max.value, min.size
    );

    // an edge straight from s to t cannot be separated
    let direct = GraphBuilder::new().vertices(["s", "t"]).edge("s", "t", "-+").build().unwrap();
    match solve_st(&direct, &s, &t) {
        Ok(c) => println!("direct edge: value {}", c.value),
        Err(e) => println!("direct edge: {e}"),
    }
}
