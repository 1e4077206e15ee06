//! Exhaustive parameter search at one or more bases.
//!
//! ```text
//! cargo run --release --example search -- 16 20 23
//! ```

use std::time::Instant;

use partition_theta::search::{run_search, SearchConfig};

fn main() {
    let mut n_values: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("bases must be integers"))
        .collect();
    if n_values.is_empty() {
        n_values = vec![16, 20, 23];
    }
    for n in n_values {
        let start = Instant::now();
        let result = run_search(&SearchConfig::new(vec![n]));
        println!(
            "n = {n}: {} tuples, {} symbolic successes, {} identities, {} dilations ({:.2?})",
            result.stats.tuples,
            result.stats.symbolic_successes,
            result.hits.len(),
            result.dilations.len(),
            start.elapsed()
        );
        for (reason, count) in &result.stats.failures {
            println!("    {reason:<26} {count}");
        }
        for hit in &result.hits {
            println!(
                "  {}   from {} (x{})",
                hit.identity, hit.params, hit.multiplicity
            );
        }
        for d in &result.dilations {
            println!("  dilation of {}   from {}", d.reduced, d.hit.params);
        }
    }
}
