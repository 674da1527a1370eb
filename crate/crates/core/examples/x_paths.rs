//! Disjoint paths between distinct vertices of one set X.
//!
//! On a triangle with X everything, one path fits, and any hitting set
//! needs two vertices: the factor two is tight.
//!
//! ```text
//! cargo run --example x_paths
//! ```

use bidirected_menger::cli::gen::{random_instance, GenParams};
use bidirected_menger::{fixtures, oracle, solve_xpaths, OracleBounds};

fn main() {
    let tri = fixtures::x_triangle();
    let cert = solve_xpaths(&tri.graph, &tri.x).unwrap();
    println!(
        "triangle: {} path(s), hitting set {:?}, doubled value {}",
        cert.packing, cert.separator, cert.doubled.value
    );

    for seed in 0..5 {
        let inst = random_instance(&GenParams {
            n: 6,
            m: 9,
            seed,
            x_size: 4,
            y_size: 0,
            overlap_allowed: false,
        })
        .unwrap();
        let cert = solve_xpaths(&inst.graph, &inst.x).unwrap();
        let (packing, hitting) = oracle::xpaths(&inst.graph, &inst.x, &OracleBounds::default()).unwrap();
        println!(
            "seed {seed}: packing {} (oracle {packing}), hitting set {} (oracle min {hitting}) passed {}",
            cert.packing,
            cert.separator.len(),
            cert.passed()
        );
    }
}
