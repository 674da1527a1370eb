//! Seeded comparison of every certificate against exhaustive search.
//!
//! ```text
//! cargo run --release --example oracle_crosscheck -- 50 7
//! ```

use bidirected_menger::cli::selfcheck::{run_selfcheck, SelfcheckConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(40);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let summary = run_selfcheck(&SelfcheckConfig {
        trials,
        seed,
        ..SelfcheckConfig::default()
    });
    print!("{}", summary.render(false));
    let nodes: usize = summary.reports.iter().filter_map(|r| r.lp).map(|f| f.branch_nodes).sum();
    println!("branch and bound nodes in total: {nodes}");
}
