//! Validates the built-in identity catalog: coefficient checks, parameter
//! re-derivations and auxiliary proof steps.
//!
//! ```text
//! cargo run --release --example verify_corpus -- [order]
//! ```

use std::collections::BTreeMap;
use std::time::Instant;

use partition_theta::corpus::{validate_corpus, Corpus, ProofKind};

fn main() {
    let order = std::env::args()
        .nth(1)
        .map(|s| s.parse().unwrap())
        .unwrap_or(1000);
    let corpus = Corpus::shipped();
    let entries: Vec<_> = corpus.entries.iter().collect();

    let start = Instant::now();
    let reports = validate_corpus(&entries, order);
    let elapsed = start.elapsed();

    let mut per_modulus: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for (e, r) in entries.iter().zip(&reports) {
        let slot = per_modulus.entry(e.modulus).or_default();
        slot.0 += r.pass as usize;
        slot.1 += 1;
        if !r.pass {
            println!("{}: {:?}", r.label, r.details);
        }
    }
    for (m, (ok, total)) in &per_modulus {
        println!("M = {m:>2}: {ok}/{total}");
    }
    let count = |k| entries.iter().filter(|e| e.proof == k).count();
    let steps: usize = reports.iter().map(|r| r.steps.len()).sum();
    println!(
        "{} direct, {} iteration ({steps} auxiliary steps), {} other",
        count(ProofKind::Direct),
        count(ProofKind::Iteration),
        count(ProofKind::Special) + count(ProofKind::Quintuple)
    );
    let passed = reports.iter().filter(|r| r.pass).count();
    println!(
        "{passed}/{} pass at order {order} in {elapsed:.2?}",
        reports.len()
    );
}
