//! Partition identities between residue-class restricted partition functions.
//!
//! `p(S, n)` counts partitions of `n` into parts `≡ ±s (mod M)`, `s ∈ S`. An
//! identity is either shifted, `P_S - q^a P_T = 1`, or shiftless,
//! `P_S - P_T = q^a`, where `P_S = Σ p(S, n) q^n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{self, binomial_product, Binomial, Series};
use crate::theta::{ramanujan_f_sum, FMono, ThetaMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Shifted,
    Shiftless,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Shifted => "shifted",
            Kind::Shiftless => "shiftless",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "shifted" => Ok(Kind::Shifted),
            "shiftless" => Ok(Kind::Shiftless),
            _ => Err(Error::parse("kind", format!("unknown kind '{s}'"))),
        }
    }
}

/// `p(S, n) = p(T, n - a)` for `n >= a` (shifted) or `p(S, n) = p(T, n)` for
/// `n != a` with `p(S, a) = p(T, a) + 1` (shiftless).
///
/// Field order gives the sort order `(M, S, T, kind, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionIdentity {
    modulus: i64,
    s: Vec<i64>,
    t: Vec<i64>,
    kind: Kind,
    shift: i64,
}

impl PartitionIdentity {
    /// Sorts and validates the residue sets.
    pub fn new(
        modulus: i64,
        mut s: Vec<i64>,
        mut t: Vec<i64>,
        kind: Kind,
        shift: i64,
    ) -> Result<PartitionIdentity> {
        if modulus < 2 {
            return Err(Error::InvalidIdentity(format!("modulus {modulus} < 2")));
        }
        for set in [&mut s, &mut t] {
            set.sort_unstable();
            if set.is_empty() {
                return Err(Error::EmptySet);
            }
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidIdentity("repeated residue".into()));
            }
            for &r in set.iter() {
                if r < 1 || 2 * r > modulus {
                    return Err(Error::ResidueOutOfRange {
                        residue: r,
                        modulus,
                    });
                }
            }
        }
        if s == t {
            return Err(Error::InvalidIdentity("S equals T".into()));
        }
        if shift < 1 {
            return Err(Error::InvalidIdentity(format!("shift {shift} < 1")));
        }
        Ok(PartitionIdentity {
            modulus,
            s,
            t,
            kind,
            shift,
        })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    pub fn t(&self) -> &[i64] {
        &self.t
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }
}

impl fmt::Display for PartitionIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[i64]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "S = ±{{{}}}, T = ±{{{}}} (mod {}): ",
            list(&self.s),
            list(&self.t),
            self.modulus
        )?;
        match self.kind {
            Kind::Shifted => write!(f, "p(S,n) = p(T,n-{a}) for n >= {a}", a = self.shift),
            Kind::Shiftless => write!(f, "p(S,n) = p(T,n) for n != {}", self.shift),
        }
    }
}

/// All parts `k <= limit` with `k ≡ ±s (mod M)` for some `s ∈ S`, ascending.
pub fn parts_of(s: &[i64], modulus: i64, limit: i64) -> Result<Vec<i64>> {
    series::parts_of(s, modulus, limit)
}

/// `p(parts, 0..=n)` by the classic coin-change recurrence.
pub fn count_with_parts(parts: &[i64], n: i64) -> Vec<BigInt> {
    let len = n.max(-1) as usize + 1;
    let mut table = vec![BigInt::zero(); len];
    if len == 0 {
        return table;
    }
    table[0] = BigInt::one();
    for &k in parts {
        let k = k as usize;
        for i in k..len {
            let (lo, hi) = table.split_at_mut(i);
            hi[0] += &lo[i - k];
        }
    }
    table
}

/// `p(S, 0..=n)`, computed independently of the series code.
pub fn partition_counts(s: &[i64], modulus: i64, n: i64) -> Result<Vec<BigInt>> {
    Ok(count_with_parts(&parts_of(s, modulus, n)?, n))
}

/// `p(S, n)`.
pub fn count_partitions(s: &[i64], modulus: i64, n: i64) -> Result<BigInt> {
    if n < 0 {
        return Ok(BigInt::zero());
    }
    Ok(partition_counts(s, modulus, n)?.pop().unwrap())
}

/// Outcome of checking one identity through a given order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub order: i64,
    /// Smallest `n` at which the identity fails.
    pub first_failure: Option<i64>,
    pub witness: Option<Witness>,
}

/// The two counts that disagree at `n`; `p_t` is `p(T, n - a)` for shifted
/// identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: i64,
    pub p_s: String,
    pub p_t: String,
}

/// Coefficient check of `P_S - q^a P_T = 1` or `P_S - P_T = q^a` through `order`.
pub fn verify_identity(id: &PartitionIdentity, order: i64) -> Result<VerifyReport> {
    let a = id.shift;
    if order < a + 2 {
        return Err(Error::OrderTooSmall {
            order,
            needed: a + 2,
        });
    }
    let ps = Series::residue_product(&id.s, id.modulus, order)?;
    let pt = Series::residue_product(&id.t, id.modulus, order)?;
    let (rhs, lag) = match id.kind {
        Kind::Shifted => (&pt.shift_scale(1, a) + &Series::one(order), a),
        Kind::Shiftless => (&pt + &Series::monomial(BigInt::one(), a, order), 0),
    };
    let first_failure = ps.first_difference(&rhs);
    let witness = first_failure.map(|n| Witness {
        n,
        p_s: ps.coeff(n).unwrap().to_string(),
        p_t: if n - lag >= 0 {
            pt.coeff(n - lag).unwrap().to_string()
        } else {
            "0".into()
        },
    });
    Ok(VerifyReport {
        pass: first_failure.is_none(),
        order,
        first_failure,
        witness,
    })
}

/// Finds the relation `P_S - q^a P_T = 1` or `P_S - P_T = q^a` that holds
/// through `order`, trying the shifted pattern first. Directional: the
/// swapped relation is not reported.
pub fn infer_relation(s: &[i64], t: &[i64], modulus: i64, order: i64) -> Option<(Kind, i64)> {
    if s == t {
        return None;
    }
    let ps = Series::residue_product(s, modulus, order).ok()?;
    let pt = Series::residue_product(t, modulus, order).ok()?;
    infer_from_series(&ps, &pt, order)
}

pub(crate) fn infer_from_series(ps: &Series, pt: &Series, order: i64) -> Option<(Kind, i64)> {
    let max_a = order / 2;
    let one = Series::one(order);
    // Shifted: P_S - 1 must start at q^a with the constant term of P_T, i.e. 1.
    let rest = ps - &one;
    if let Some(a) = rest.valuation() {
        if (1..=max_a).contains(&a) && (&rest - &pt.shift_scale(1, a)).is_zero() {
            return Some((Kind::Shifted, a));
        }
    }
    let diff = ps - pt;
    let a = diff.valuation()?;
    if (1..=max_a).contains(&a) && (&diff - &Series::monomial(BigInt::one(), a, order)).is_zero() {
        return Some((Kind::Shiftless, a));
    }
    None
}

/// Divides modulus, residues and shift by `g = gcd(S ∪ T ∪ {M})` (the
/// inverse of `q ↦ q^g`).
pub fn normalize_gcd(id: &PartitionIdentity) -> Result<PartitionIdentity> {
    let g = id.s.iter().chain(&id.t).fold(id.modulus, |g, &r| g.gcd(&r));
    if g == 1 {
        return Ok(id.clone());
    }
    if id.shift % g != 0 {
        return Err(Error::InconsistentScaling {
            shift: id.shift,
            factor: g,
        });
    }
    PartitionIdentity::new(
        id.modulus / g,
        id.s.iter().map(|r| r / g).collect(),
        id.t.iter().map(|r| r / g).collect(),
        id.kind,
        id.shift / g,
    )
}

/// One named series equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub first_failure: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialReport {
    pub order: i64,
    pub pass: bool,
    pub items: Vec<CheckItem>,
}

impl SpecialReport {
    fn from_items(order: i64, items: Vec<CheckItem>) -> SpecialReport {
        SpecialReport {
            order,
            pass: items.iter().all(|i| i.pass),
            items,
        }
    }
}

/// A named equality `lhs = rhs` between two series.
pub struct SeriesEquation {
    pub name: &'static str,
    pub lhs: Series,
    pub rhs: Series,
}

impl SeriesEquation {
    pub fn check(&self) -> CheckItem {
        let first_failure = self.lhs.first_difference(&self.rhs);
        CheckItem {
            name: self.name.to_string(),
            pass: first_failure.is_none(),
            first_failure,
        }
    }
}

fn lin(terms: &[(i64, &Series)]) -> Series {
    Series::linear_combine(terms.iter().map(|(c, s)| (BigInt::from(*c), *s)))
}

/// The two Rogers–Ramanujan-function identities as series equations:
/// `H(q)G(q^11) - q^2 G(q)H(q^11) = 1` and
/// `H(q^2)G(q^7) - q G(q^2)H(q^7) = Π (1 - q^{2n-1}) / (1 - q^{14n-7})`.
pub fn rogers_ramanujan_equations(order: i64) -> Vec<SeriesEquation> {
    // G(q^k) and H(q^k) are residue products mod 5k.
    let gh = |r: i64, k: i64| Series::residue_product(&[r * k], 5 * k, order).unwrap();
    let (g1, h1, g11, h11) = (gh(1, 1), gh(2, 1), gh(1, 11), gh(2, 11));
    let (g2, h2, g7, h7) = (gh(1, 2), gh(2, 2), gh(1, 7), gh(2, 7));
    let rr1 = lin(&[(1, &h1.mul(&g11)), (-1, &g1.mul(&h11).shift_scale(1, 2))]);
    let rr2 = lin(&[(1, &h2.mul(&g7)), (-1, &g2.mul(&h7).shift_scale(1, 1))]);
    let mut factors = Vec::new();
    for k in (1..=order).step_by(2) {
        factors.push(Binomial::new(k, 1, 1));
        if k % 14 == 7 {
            factors.push(Binomial::new(k, 1, -1));
        }
    }
    vec![
        SeriesEquation {
            name: "rr1",
            lhs: rr1,
            rhs: Series::one(order),
        },
        SeriesEquation {
            name: "rr2",
            lhs: rr2,
            rhs: binomial_product(&factors, order),
        },
    ]
}

pub fn rogers_ramanujan_check(order: i64) -> SpecialReport {
    let items = rogers_ramanujan_equations(order)
        .iter()
        .map(SeriesEquation::check)
        .collect();
    SpecialReport::from_items(order, items)
}

/// The 72-modulus shifted identity proved through theta-function dissections.
pub fn theorem_72_2_identity() -> PartitionIdentity {
    PartitionIdentity::new(
        72,
        vec![
            1, 3, 5, 7, 8, 9, 10, 11, 12, 13, 14, 16, 17, 18, 19, 23, 25, 27, 29, 31, 32, 33, 34,
            35,
        ],
        vec![
            1, 2, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 18, 19, 21, 22, 23, 25, 26, 27, 29, 31, 32,
            35,
        ],
        Kind::Shifted,
        1,
    )
    .unwrap()
}

fn f(sa: i32, ea: i64, sb: i32, eb: i64, order: i64) -> Series {
    ramanujan_f_sum(FMono::new(sa, ea), FMono::new(sb, eb), order).unwrap()
}

/// The auxiliary theta-function identities behind the modulus-72 theorem.
pub fn theorem_72_2_equations(order: i64) -> Vec<SeriesEquation> {
    let n = order;
    let mono = |s: &str| {
        crate::notation::parse_monomial(s)
            .unwrap()
            .series(n)
            .unwrap()
    };
    let quot_lhs = lin(&[
        (1, &mono("[2,15,21,22,26:72]")),
        (-1, &mono("q[3,10,14,33,34:72]")),
    ]);
    let all: Vec<i64> = (1..=35).collect();
    let quot_rhs = ThetaMonomial::brackets(1, 0, &all, 72)
        .unwrap()
        .div(&ThetaMonomial::brackets(1, 0, &[4, 6, 20, 24, 28, 30], 72).unwrap())
        .series(n)
        .unwrap();

    let f57 = f(-1, 5, -1, 7, n);
    let f111 = f(-1, 1, -1, 11, n);
    let dis_plus = lin(&[(1, &f57), (1, &f111.shift_scale(1, 1))]);
    let dis_minus = lin(&[(1, &f57), (-1, &f111.shift_scale(1, 1))]);

    let phi = |k: i64| f(1, k, 1, k, n);
    let f3_15 = f(1, 3, 1, 15, n);
    let phi3_rhs = lin(&[(1, &phi(9)), (2, &f3_15.shift_scale(1, 1))]);
    let prod_rhs = lin(&[
        (1, &phi(3).mul(&phi(6))),
        (
            2,
            &f(1, 1, 1, 5, n).mul(&f(1, 2, 1, 10, n)).shift_scale(1, 1),
        ),
    ]);
    let minus_q3 = Series::pochhammer(3, 6, -1, n).unwrap();
    let f13 = f(-1, 1, -1, 3, n);
    let odd_lhs = lin(&[(1, &phi(9)), (-1, &f3_15.shift_scale(1, 1))]);
    let cross_lhs = lin(&[(1, &phi(2).mul(&phi(9))), (-1, &phi(3).mul(&phi(6)))]);
    let cross_rhs = lin(&[(
        2,
        &f13.mul(&f(1, 6, 1, 30, n)).mul(&minus_q3).shift_scale(1, 2),
    )]);

    vec![
        SeriesEquation {
            name: "bracket-quotient",
            lhs: quot_lhs,
            rhs: quot_rhs,
        },
        SeriesEquation {
            name: "dissection-plus",
            lhs: f(1, 1, -1, 2, n),
            rhs: dis_plus,
        },
        SeriesEquation {
            name: "dissection-minus",
            lhs: f(-1, 1, 1, 2, n),
            rhs: dis_minus,
        },
        SeriesEquation {
            name: "phi-3-dissection",
            lhs: phi(1),
            rhs: phi3_rhs,
        },
        SeriesEquation {
            name: "phi-product",
            lhs: phi(1).mul(&phi(2)),
            rhs: prod_rhs,
        },
        SeriesEquation {
            name: "phi-odd-part",
            lhs: odd_lhs,
            rhs: f13.mul(&minus_q3),
        },
        SeriesEquation {
            name: "phi-cross-difference",
            lhs: cross_lhs,
            rhs: cross_rhs,
        },
    ]
}

/// Runs every auxiliary check plus the partition identity itself.
pub fn verify_theorem_72_2(order: i64) -> SpecialReport {
    let mut items: Vec<CheckItem> = theorem_72_2_equations(order)
        .iter()
        .map(SeriesEquation::check)
        .collect();
    let report = verify_identity(&theorem_72_2_identity(), order).unwrap();
    items.push(CheckItem {
        name: "identity".into(),
        pass: report.pass,
        first_failure: report.first_failure,
    });
    SpecialReport::from_items(order, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn thm_32_1() -> PartitionIdentity {
        PartitionIdentity::new(
            32,
            vec![1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15],
            vec![1, 2, 3, 5, 7, 8, 9, 11, 12, 13, 14, 15],
            Kind::Shifted,
            1,
        )
        .unwrap()
    }

    #[test]
    fn parts_examples() {
        assert_eq!(parts_of(&[1], 4, 10).unwrap(), vec![1, 3, 5, 7, 9]);
        assert_eq!(parts_of(&[2], 4, 10).unwrap(), vec![2, 6, 10]);
        let p = parts_of(thm_32_1().s(), 32, 33).unwrap();
        let excluded = [0, 2, 12, 14, 16, 18, 20, 30];
        let expected: Vec<i64> = (1..=33).filter(|k| !excluded.contains(&(k % 32))).collect();
        assert_eq!(p, expected);
    }

    #[test]
    fn count_examples() {
        let all: Vec<i64> = (1..=5).collect();
        assert_eq!(count_with_parts(&all, 5)[5], BigInt::from(7));
        assert_eq!(count_partitions(&[1], 4, 4).unwrap(), BigInt::from(2));
        assert_eq!(count_partitions(&[3, 5], 11, 0).unwrap(), BigInt::one());
    }

    #[test]
    fn dp_matches_series() {
        let id = thm_32_1();
        let counts = partition_counts(id.t(), 32, 200).unwrap();
        let series = Series::residue_product(id.t(), 32, 200).unwrap();
        assert_eq!(counts, series.coeff_range(0, 200).unwrap());
    }

    #[test]
    fn verify_and_mutate() {
        let id = thm_32_1();
        assert!(verify_identity(&id, 500).unwrap().pass);
        let mut t = id.t().to_vec();
        t[1] = 4;
        let bad = PartitionIdentity::new(32, id.s().to_vec(), t, Kind::Shifted, 1).unwrap();
        let r = verify_identity(&bad, 500).unwrap();
        assert!(!r.pass);
        assert!(r.first_failure.unwrap() <= 50);
        assert!(r.witness.is_some());
        assert!(matches!(
            verify_identity(&id, 2),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn infer_examples() {
        let id = thm_32_1();
        assert_eq!(
            infer_relation(id.s(), id.t(), 32, 300),
            Some((Kind::Shifted, 1))
        );
        assert_eq!(infer_relation(id.t(), id.s(), 32, 300), None);
        assert_eq!(infer_relation(id.s(), id.s(), 32, 300), None);
    }

    #[test]
    fn gcd_normalization() {
        let id = thm_32_1();
        assert_eq!(normalize_gcd(&id).unwrap(), id);
        let double = |a| {
            PartitionIdentity::new(
                64,
                id.s().iter().map(|r| 2 * r).collect(),
                id.t().iter().map(|r| 2 * r).collect(),
                Kind::Shifted,
                a,
            )
            .unwrap()
        };
        assert!(verify_identity(&double(2), 200).unwrap().pass);
        assert_eq!(normalize_gcd(&double(2)).unwrap(), id);
        assert_eq!(
            normalize_gcd(&double(3)),
            Err(Error::InconsistentScaling {
                shift: 3,
                factor: 2
            })
        );
    }

    #[test]
    fn rogers_ramanujan_smoke() {
        assert!(rogers_ramanujan_check(20).pass);
        let eqs = rogers_ramanujan_equations(200);
        assert!(eqs[1].lhs.first_difference(&Series::one(200)).is_some());
    }

    #[test]
    fn theorem_72_2_smoke() {
        let r = verify_theorem_72_2(50);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.items.len(), 8);
    }

    #[test]
    fn display() {
        let s = thm_32_1().to_string();
        assert!(s.ends_with("(mod 32): p(S,n) = p(T,n-1) for n >= 1"), "{s}");
        let c = count_partitions(&[1], 2, 30).unwrap().to_i64().unwrap();
        assert_eq!(c, 296);
    }
}
