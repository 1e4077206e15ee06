//! Runs every seeded property suite and the mutation check.
//!
//! ```text
//! cargo run --release --example properties -- [seed]
//! ```

use std::time::Instant;

use partition_theta::selftest::{run_all, DEFAULT_SEED};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(DEFAULT_SEED);
    let start = Instant::now();
    let reports = run_all(seed);
    for r in &reports {
        let verdict = if r.pass { "ok" } else { "FAILED" };
        println!("{:<20} {:>6} cases  {verdict}", r.name, r.cases);
        for f in &r.failures {
            println!("    {f}");
        }
    }
    println!("seed {seed}, {:.2?}", start.elapsed());
    if reports.iter().any(|r| !r.pass) {
        std::process::exit(1);
    }
}
