//! Seeded property suites and mutation checks, shared by the `selftest`
//! subcommand and the test suite.
//!
//! Each suite compares a fast path against an independent evaluation:
//! theta instances against summed series, normalized atoms against their
//! factor-by-factor expansion, product forms against sums, and the
//! generating-function coefficients against a partition-counting DP.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Corpus;
use crate::equivalence::{act, unit_representatives, UnitAction};
use crate::jacobi::{
    four2_terms, four_instance, jkb_instance, verify_zero_combination, FourParams, JkbParams,
};
use crate::partitions::{count_with_parts, parts_of, verify_identity, PartitionIdentity};
use crate::series::{binomial_product, Binomial, Series};
use crate::theta::{normalize_atom, ramanujan_f_product, ramanujan_f_sum, FMono, ThetaAtom};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    /// At most a handful of failing cases, described.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, cases: usize, mut failures: Vec<String>) -> SuiteReport {
        let pass = failures.is_empty();
        failures.truncate(10);
        SuiteReport {
            name: name.to_string(),
            pass,
            cases,
            failures,
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random admissible parameter tuples with `n <= 14`; exponents up to `2n`
/// so that quasi-periodic normalization is exercised.
pub fn random_four_params(seed: u64, count: usize) -> Vec<FourParams> {
    let mut rng = rng_for(seed, 1);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(5..=14);
        let v: Vec<i64> = (0..5).map(|_| rng.gen_range(1..=2 * n)).collect();
        if let Ok(p) = FourParams::from_slice(&v, n) {
            if four2_terms(&p).is_ok() {
                out.push(p);
            }
        }
    }
    out
}

/// Random `(z, t, x, y)` at bases up to 14, exponents possibly negative.
pub fn random_jkb_params(seed: u64, count: usize) -> Vec<JkbParams> {
    let mut rng = rng_for(seed, 2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=14);
        let mut e = || rng.gen_range(-n..=2 * n);
        let p = JkbParams {
            z: e(),
            t: e(),
            x: e(),
            y: e(),
            n,
        };
        if jkb_instance(&p).is_ok() {
            out.push(p);
        }
    }
    out
}

/// The four-parameter identity `L1 + L2 = R`.
pub fn four_suite(seed: u64, count: usize, order: i64) -> SuiteReport {
    let failures = random_four_params(seed, count)
        .par_iter()
        .filter_map(|p| {
            let terms = four_instance(p).ok()?.zero_combination();
            match verify_zero_combination(&terms, order) {
                Ok(c) if c.pass => None,
                Ok(c) => Some(format!("{p}: nonzero at q^{:?}", c.first_failure)),
                Err(e) => Some(format!("{p}: {e}")),
            }
        })
        .collect();
    SuiteReport::new("four", count, failures)
}

/// The base-`2n` form `T1 + T2 = 1`, summed from the unreduced terms.
pub fn four2_suite(seed: u64, count: usize, order: i64) -> SuiteReport {
    let failures = random_four_params(seed, count)
        .par_iter()
        .filter_map(|p| {
            let check = || -> crate::Result<Option<i64>> {
                let (t1, t2) = four2_terms(p)?;
                let sum = &t1.series(order)? + &t2.series(order)?;
                Ok(sum.first_difference(&Series::one(order)))
            };
            match check() {
                Ok(None) => None,
                Ok(Some(k)) => Some(format!("{p}: T1 + T2 differs from 1 at q^{k}")),
                Err(e) => Some(format!("{p}: {e}")),
            }
        })
        .collect();
    SuiteReport::new("four2", count, failures)
}

/// `L1 - L2 = R` for the three-bracket form.
pub fn jkb_suite(seed: u64, count: usize, order: i64) -> SuiteReport {
    let failures = random_jkb_params(seed, count)
        .par_iter()
        .filter_map(|p| {
            let inst = jkb_instance(p).ok()?;
            let terms = [inst.l1.clone(), inst.l2.neg(), inst.r.neg()];
            match verify_zero_combination(&terms, order) {
                Ok(c) if c.pass => None,
                Ok(c) => Some(format!("{p:?}: nonzero at q^{:?}", c.first_failure)),
                Err(e) => Some(format!("{p:?}: {e}")),
            }
        })
        .collect();
    SuiteReport::new("jkb", count, failures)
}

/// `(∓q^e; q^m)_∞ (∓q^{m-e}; q^m)_∞` expanded factor by factor. Factors
/// `1 ∓ q^k` with `k < 0` are rewritten as `∓q^k (1 ∓ q^{-k})` (bracket) or
/// `q^k (1 + q^{-k})` (paren).
pub fn raw_atom_series(e: i64, m: i64, paren: bool, order: i64) -> Series {
    let sigma = if paren { -1 } else { 1 };
    let mut sign = 1;
    let mut shift = 0;
    let mut positive = Vec::new();
    let mut pending = Vec::new();
    for start in [e, m - e] {
        let mut k = start;
        while k < 0 {
            shift += k;
            if !paren {
                sign = -sign;
            }
            pending.push(-k);
            k += m;
        }
        positive.push(k);
    }
    let inner = order - shift;
    let mut factors: Vec<Binomial> = pending
        .into_iter()
        .map(|k| Binomial::new(k, sigma, 1))
        .collect();
    for start in positive {
        let mut k = start;
        while k <= inner {
            factors.push(Binomial::new(k, sigma, 1));
            k += m;
        }
    }
    binomial_product(&factors, inner).shift_scale(sign, shift)
}

/// Every `(e, m)` with `m <= max_m`, `|e| <= 3m`, `e ≢ 0`: the raw atom
/// equals `sign · q^shift ·` its canonical form through order `5m`, for
/// both brackets and parens.
pub fn normalization_suite(max_m: i64) -> SuiteReport {
    let grid: Vec<(i64, i64)> = (1..=max_m)
        .flat_map(|m| {
            (-3 * m..=3 * m)
                .filter(move |e| e % m != 0)
                .map(move |e| (e, m))
        })
        .collect();
    let failures = grid
        .par_iter()
        .flat_map_iter(|&(e, m)| {
            let order = 5 * m;
            let (sign, shift, r) = normalize_atom(e, m).unwrap();
            [false, true].into_iter().filter_map(move |paren| {
                let atom = if paren {
                    ThetaAtom::paren(r, m)
                } else {
                    ThetaAtom::bracket(r, m)
                };
                let s = if paren { 1 } else { sign };
                let canonical = atom.series(order - shift).ok()?.shift_scale(s, shift);
                let raw = raw_atom_series(e, m, paren, order);
                raw.first_difference(&canonical)
                    .is_some()
                    .then(|| format!("({e},{m}) paren={paren}"))
            })
        })
        .collect();
    SuiteReport::new("normalization", grid.len() * 2, failures)
}

/// `f(a, b)` by summation and by the triple product for
/// `1 <= e_a, e_b <= max_e` and all four sign choices.
pub fn triple_product_suite(max_e: i64, order: i64) -> SuiteReport {
    let mut cases = Vec::new();
    for ea in 1..=max_e {
        for eb in 1..=max_e {
            for sa in [1, -1] {
                for sb in [1, -1] {
                    cases.push((FMono::new(sa, ea), FMono::new(sb, eb)));
                }
            }
        }
    }
    let failures = cases
        .par_iter()
        .filter_map(|&(a, b)| {
            let sum = ramanujan_f_sum(a, b, order).ok()?;
            let prod = ramanujan_f_product(a, b, order).ok()?;
            sum.first_difference(&prod)
                .map(|k| format!("f({a:?}, {b:?}) differs at q^{k}"))
        })
        .collect();
    SuiteReport::new("triple-product", cases.len(), failures)
}

/// For every residue set in the corpus, the coefficients of `1/Π(1-q^k)`
/// agree with a partition-counting DP through `n`.
pub fn partition_count_suite(corpus: &Corpus, n: i64) -> SuiteReport {
    let mut sets: Vec<(i64, Vec<i64>)> = corpus
        .entries
        .iter()
        .flat_map(|e| [(e.modulus, e.s.clone()), (e.modulus, e.t.clone())])
        .collect();
    sets.sort();
    sets.dedup();
    let failures = sets
        .par_iter()
        .filter_map(|(m, s)| {
            let series = Series::residue_product(s, *m, n).ok()?;
            let dp = count_with_parts(&parts_of(s, *m, n).ok()?, n);
            let coeffs: Vec<BigInt> = series.coeff_range(0, n).ok()?;
            (coeffs != dp).then(|| format!("{s:?} mod {m}"))
        })
        .collect();
    SuiteReport::new("partition-counts", sets.len(), failures)
}

/// `act(αβ) = act(α) ∘ act(β)` on random corpus identities.
pub fn action_suite(seed: u64, corpus: &Corpus, count: usize, order: i64) -> SuiteReport {
    let mut rng = rng_for(seed, 3);
    let ids: Vec<PartitionIdentity> = corpus
        .entries
        .iter()
        .filter_map(|e| e.identity().ok())
        .collect();
    let cases: Vec<(PartitionIdentity, i64, i64)> = (0..count)
        .map(|_| {
            let id = ids.choose(&mut rng).unwrap().clone();
            let units = unit_representatives(id.modulus());
            let a = *units.choose(&mut rng).unwrap();
            let b = *units.choose(&mut rng).unwrap();
            (id, a, b)
        })
        .collect();
    let failures = cases
        .par_iter()
        .filter_map(|(id, a, b)| {
            let m = id.modulus();
            let ua = UnitAction::new(*a, m).unwrap();
            let ub = UnitAction::new(*b, m).unwrap();
            let direct = act(&ua.compose(&ub), id, order);
            let stepwise = act(&ub, id, order).and_then(|img| act(&ua, &img, order));
            match (direct, stepwise) {
                (Ok(x), Ok(y)) if x == y => None,
                (x, y) => Some(format!("{id}: α={a} β={b}: {x:?} vs {y:?}")),
            }
        })
        .collect();
    SuiteReport::new("action-composition", count, failures)
}

/// One perturbed residue of a corpus identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub label: String,
    pub identity: PartitionIdentity,
    pub first_failure: Option<i64>,
}

/// Replaces one residue of `S` or `T` by another residue absent from that
/// set, skipping perturbations that reproduce the original sets.
pub fn mutate_corpus(seed: u64, corpus: &Corpus, count: usize) -> Vec<(String, PartitionIdentity)> {
    let mut rng = rng_for(seed, 4);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let entry = corpus.entries.choose(&mut rng).unwrap();
        let half = entry.modulus / 2;
        let (mut s, mut t) = (entry.s.clone(), entry.t.clone());
        let target = if rng.gen_bool(0.5) { &mut s } else { &mut t };
        let i = rng.gen_range(0..target.len());
        let r = rng.gen_range(1..=half);
        if target.contains(&r) {
            continue;
        }
        target[i] = r;
        target.sort_unstable();
        if (&s, &t) == (&entry.s, &entry.t) {
            continue;
        }
        if let Ok(id) = PartitionIdentity::new(entry.modulus, s, t, entry.kind, entry.shift) {
            out.push((entry.label.clone(), id));
        }
    }
    out
}

pub fn mutation_suite(
    seed: u64,
    corpus: &Corpus,
    count: usize,
    max_n: i64,
) -> (SuiteReport, Vec<Mutation>) {
    let mutations: Vec<Mutation> = mutate_corpus(seed, corpus, count)
        .into_par_iter()
        .map(|(label, identity)| {
            let first_failure = verify_identity(&identity, max_n)
                .ok()
                .and_then(|r| r.first_failure);
            Mutation {
                label,
                identity,
                first_failure,
            }
        })
        .collect();
    let failures = mutations
        .iter()
        .filter(|m| m.first_failure.is_none())
        .map(|m| {
            format!(
                "{} mutated to {} still verifies to {max_n}",
                m.label, m.identity
            )
        })
        .collect();
    (SuiteReport::new("mutation", count, failures), mutations)
}

/// All suites at their standard sizes.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    let corpus = Corpus::shipped();
    vec![
        four_suite(seed, 200, 150),
        four2_suite(seed, 200, 150),
        jkb_suite(seed, 200, 150),
        normalization_suite(60),
        triple_product_suite(12, 300),
        partition_count_suite(&corpus, 200),
        action_suite(seed, &corpus, 50, 300),
        mutation_suite(seed, &corpus, 50, 100).0,
    ]
}
