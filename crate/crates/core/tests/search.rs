use std::collections::BTreeSet;

use partition_theta::corpus::{Corpus, ProofKind};
use partition_theta::search::{enumerate_params, export_records, run_search, SearchConfig};

#[test]
fn finds_the_six_modulus_40_identities() {
    let r = run_search(&SearchConfig::new(vec![20]));
    assert_eq!(r.hits.len(), 6);
    let corpus = Corpus::shipped();
    let expected: BTreeSet<_> = corpus
        .with_modulus(40)
        .iter()
        .map(|e| e.identity().unwrap())
        .collect();
    let found: BTreeSet<_> = r.hits.iter().map(|h| h.identity.clone()).collect();
    assert_eq!(found, expected);
    assert_eq!(r.stats.verification_failures, 0);
}

#[test]
fn output_is_independent_of_worker_count() {
    let run = |w| {
        let r = run_search(&SearchConfig {
            workers: w,
            ..SearchConfig::new(vec![16, 23])
        });
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(run(1), run(3));
}

/// Every identity the catalog derives directly at base n is rediscovered.
#[test]
fn rediscovers_every_direct_entry() {
    let corpus = Corpus::shipped();
    let bases: BTreeSet<i64> = corpus
        .entries
        .iter()
        .filter(|e| e.proof == ProofKind::Direct)
        .filter_map(|e| e.n)
        .collect();
    assert_eq!(
        bases.iter().copied().collect::<Vec<_>>(),
        vec![16, 20, 21, 23, 24, 25, 26, 27, 28, 30, 31, 32, 33, 34, 36, 40, 41]
    );
    for n in bases {
        let found: BTreeSet<_> = run_search(&SearchConfig::new(vec![n]))
            .hits
            .into_iter()
            .map(|h| h.identity)
            .collect();
        for e in corpus
            .entries
            .iter()
            .filter(|e| e.proof == ProofKind::Direct && e.n == Some(n))
        {
            assert!(
                found.contains(&e.identity().unwrap()),
                "{} not found at n = {n}",
                e.label
            );
        }
    }
}

#[test]
fn records_carry_provenance() {
    let r = run_search(&SearchConfig::new(vec![16]));
    let records = export_records(&r.hits);
    let rec = &records[0];
    assert_eq!(rec["label"], "Search-32-1");
    assert_eq!(rec["provenance"]["source"], "search");
    assert_eq!(rec["provenance"]["n"], 16);
    assert_eq!(rec["S"].as_array().unwrap().len(), 12);
}

#[test]
fn smaller_bound_scans_fewer_tuples() {
    let cfg = SearchConfig {
        exponent_bound: Some(8),
        ..SearchConfig::new(vec![16])
    };
    let r = run_search(&cfg);
    assert_eq!(r.stats.tuples as usize, enumerate_params(&cfg).count());
    assert!(enumerate_params(&cfg).all(|p| p.as_array().iter().all(|&e| e <= 8) && p.x <= p.y));
}
