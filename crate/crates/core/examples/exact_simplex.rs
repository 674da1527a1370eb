//! The exact simplex and branch and bound on their own.
//!
//! The "handcuff" below is the incidence matrix of two odd cycles joined by
//! an edge. Its relaxation sits at a half-integral vertex with value 1; the
//! only integral point is zero.
//!
//! ```text
//! cargo run --example exact_simplex
//! ```

use bidirected_menger::ratlp::{
    format_pq, integer_max, rational, simplex_max, LpProblem, RationalMatrix,
};

fn main() {
    // maximize x0 + x1 subject to x0 + 2 x1 + s = 4, 0 <= x <= 3
    let p = LpProblem {
        objective: vec![rational(1), rational(1), rational(0)],
        a_eq: RationalMatrix::from_i64_rows(&[&[1, 2, 1]]),
        b_eq: vec![rational(4)],
        lower: vec![rational(0); 3],
        upper: vec![Some(rational(3)), Some(rational(3)), None],
    };
    let sol = simplex_max(&p).unwrap();
    println!(
        "small lp: {:?} value {} at {:?}",
        sol.status,
        format_pq(&sol.objective_value),
        sol.values.iter().map(format_pq).collect::<Vec<_>>()
    );

    // rows h a k b; columns ha(-+) ha(--) hk(+-) kb(++) kb(+-); maximize hk
    let m = RationalMatrix::from_i64_rows(&[
        &[-1, -1, 1, 0, 0],
        &[1, -1, 0, 0, 0],
        &[0, 0, -1, 1, 1],
        &[0, 0, 0, 1, -1],
    ]);
    let handcuff = LpProblem {
        objective: vec![rational(0), rational(0), rational(1), rational(0), rational(0)],
        a_eq: m,
        b_eq: vec![rational(0); 4],
        lower: vec![rational(0); 5],
        upper: vec![Some(rational(1)); 5],
    };
    let relax = simplex_max(&handcuff).unwrap();
    println!(
        "handcuff relaxation {} at {:?}",
        format_pq(&relax.objective_value),
        relax.values.iter().map(format_pq).collect::<Vec<_>>()
    );
    let int = integer_max(&handcuff, Some(relax), None).unwrap();
    println!("handcuff integer optimum {} after {} nodes", format_pq(&int.objective_value), int.nodes);
}
