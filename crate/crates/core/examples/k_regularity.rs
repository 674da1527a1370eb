//! Incidence matrices of bidirected graphs are 2-regular: twice the inverse
//! of every nonsingular square submatrix is integral.
//!
//! ```text
//! cargo run --example k_regularity
//! ```

use bidirected_menger::cli::gen::{derive_seed, random_trial};
use bidirected_menger::ratlp::{check_k_regular, find_k_regular_violation, RationalMatrix};

fn main() {
    let triangle = RationalMatrix::from_i64_rows(&[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1]]);
    println!("all-positive triangle:");
    println!("  1-regular violation {:?}", find_k_regular_violation(&triangle, 1, 3));
    println!("  2-regular {}", check_k_regular(&triangle, 2, 3));

    let mut ok = 0;
    for i in 0..20 {
        let inst = random_trial(derive_seed(1, i), 5, 8, 1);
        let m = inst.graph.incidence_matrix();
        if check_k_regular(&m, 2, 4) {
            ok += 1;
        }
    }
    println!("random incidence matrices 2-regular up to order 4: {ok}/20");
}
