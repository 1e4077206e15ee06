//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary lines are always shown.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use partition_theta::corpus::{check_step, Corpus, ProofKind, StepSource};
use partition_theta::equivalence::classify;
use partition_theta::jacobi::derive_identity;
use partition_theta::partitions::{rogers_ramanujan_check, verify_identity, verify_theorem_72_2};
use partition_theta::search::{run_search, SearchConfig};
use partition_theta::selftest::{self, DEFAULT_SEED};
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn corpus_at_1000(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = c
        .entries
        .par_iter()
        .filter_map(|e| {
            let r = verify_identity(&e.identity().ok()?, 1000).ok()?;
            (!r.pass).then(|| format!("{} at n = {:?}", e.label, r.first_failure))
        })
        .collect();
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && c.entries.len() == 238 && elapsed <= Duration::from_secs(60),
        format!(
            "{}/{} identities hold to n = 1000 in {elapsed:.2?} {failures:?}",
            c.entries.len() - failures.len(),
            c.entries.len()
        ),
    )
}

fn direct_rederivation(c: &Corpus) -> Outcome {
    let direct: Vec<_> = c
        .entries
        .iter()
        .filter(|e| matches!(e.proof, ProofKind::Direct))
        .collect();
    let mismatched: Vec<&str> = direct
        .iter()
        .filter(|e| {
            let derived = e.four_params().and_then(|p| derive_identity(&p).ok());
            derived.map(|d| d.identity) != e.identity().ok()
        })
        .map(|e| e.label.as_str())
        .collect();
    outcome(
        mismatched.is_empty() && !direct.is_empty(),
        format!(
            "{}/{} parameter sets re-derive their identity exactly {mismatched:?}",
            direct.len() - mismatched.len(),
            direct.len()
        ),
    )
}

fn auxiliary_steps(c: &Corpus) -> Outcome {
    let mut total = 0;
    let mut four_reproduced = 0;
    let mut failures = Vec::new();
    for e in c.entries.iter().filter(|e| e.proof == ProofKind::Iteration) {
        for (i, step) in e.aux_steps.iter().flatten().enumerate() {
            total += 1;
            let r = check_step(i, step, 400);
            if step.source == StepSource::Four && r.reproduced == Some(true) {
                four_reproduced += 1;
            }
            if !r.pass {
                failures.push(format!("{} step {i}", e.label));
            }
        }
    }
    outcome(
        failures.is_empty() && four_reproduced >= 30,
        format!(
            "{total} steps vanish to q^400, {four_reproduced} four-bracket instances match their printed form {failures:?}"
        ),
    )
}

fn class_counts(c: &Corpus) -> Outcome {
    let expected: BTreeMap<i64, usize> = [
        (32, 1),
        (40, 2),
        (42, 3),
        (46, 1),
        (48, 7),
        (50, 4),
        (52, 1),
        (54, 4),
        (56, 1),
        (60, 8),
        (62, 1),
        (64, 1),
        (66, 2),
        (68, 1),
        (70, 1),
        (72, 3),
        (80, 1),
        (82, 1),
    ]
    .into();
    let got: BTreeMap<i64, usize> = c
        .moduli()
        .into_iter()
        .map(|m| {
            let ids: Vec<_> = c
                .with_modulus(m)
                .iter()
                .map(|e| e.identity().unwrap())
                .collect();
            (m, classify(&ids, 300).map(|cl| cl.len()).unwrap_or(0))
        })
        .collect();
    outcome(got == expected, format!("{got:?}"))
}

fn search_rediscovery(c: &Corpus) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (n, modulus, expect) in [(16, 32, 1), (20, 40, 6), (23, 46, 11)] {
        let found: BTreeSet<_> = run_search(&SearchConfig::new(vec![n]))
            .hits
            .into_iter()
            .map(|h| h.identity)
            .collect();
        let wanted: BTreeSet<_> = c
            .with_modulus(modulus)
            .iter()
            .map(|e| e.identity().unwrap())
            .collect();
        let ok = wanted.len() == expect && wanted.is_subset(&found);
        pass &= ok;
        notes.push(format!(
            "n={n}: {}/{expect}",
            wanted.intersection(&found).count()
        ));
    }
    let start = Instant::now();
    let r = run_search(&SearchConfig::new(vec![42]));
    let elapsed = start.elapsed();
    pass &= r.hits.is_empty() && elapsed <= Duration::from_secs(600) && !r.stats.cancelled;
    notes.push(format!(
        "n=42: {} new identities ({} dilations of modulus-42 identities), {} tuples in {elapsed:.2?}",
        r.hits.len(),
        r.dilations.len(),
        r.stats.tuples
    ));
    outcome(pass, notes.join("; "))
}

fn special_identities() -> Outcome {
    let rr = rogers_ramanujan_check(1000);
    let t = verify_theorem_72_2(600);
    let names: Vec<&str> = t.items.iter().map(|i| i.name.as_str()).collect();
    outcome(
        rr.pass && rr.items.len() == 2 && t.pass && t.items.len() == 8,
        format!(
            "rr to 1000: {}; modulus-72 chain to 600: {} {names:?}",
            rr.pass, t.pass
        ),
    )
}

fn property_suites(c: &Corpus) -> Outcome {
    let seed = DEFAULT_SEED;
    let reports = [
        selftest::four_suite(seed, 200, 150),
        selftest::four2_suite(seed, 200, 150),
        selftest::jkb_suite(seed, 200, 150),
        selftest::normalization_suite(60),
        selftest::triple_product_suite(12, 300),
        selftest::partition_count_suite(c, 200),
    ];
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{} {}/{}",
                r.name,
                if r.pass { r.cases } else { 0 },
                r.cases
            )
        })
        .collect();
    outcome(
        reports.iter().all(|r| r.pass),
        format!("seed {seed}: {}", summary.join(", ")),
    )
}

fn mutation_sensitivity(c: &Corpus) -> Outcome {
    let (report, mutations) = selftest::mutation_suite(DEFAULT_SEED, c, 50, 100);
    let worst = mutations.iter().filter_map(|m| m.first_failure).max();
    outcome(
        report.pass && mutations.len() == 50,
        format!(
            "{}/50 mutants fail by n = 100 (latest first failure {worst:?}) {:?}",
            mutations
                .iter()
                .filter(|m| m.first_failure.is_some())
                .count(),
            report.failures
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = Corpus::shipped();
    let criteria: Vec<Criterion> = vec![
        (
            "1 corpus verification",
            Box::new(|| corpus_at_1000(&corpus)),
        ),
        (
            "2 direct re-derivation",
            Box::new(|| direct_rederivation(&corpus)),
        ),
        ("3 auxiliary steps", Box::new(|| auxiliary_steps(&corpus))),
        ("4 class counts", Box::new(|| class_counts(&corpus))),
        (
            "5 search rediscovery",
            Box::new(|| search_rediscovery(&corpus)),
        ),
        ("6 special identities", Box::new(special_identities)),
        ("7 property suites", Box::new(|| property_suites(&corpus))),
        (
            "8 mutation sensitivity",
            Box::new(|| mutation_sensitivity(&corpus)),
        ),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "{} criterion {name} ({:.1?}): {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
