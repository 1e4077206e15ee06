//! Instances of Jacobi's four-parameter theta identity and its relatives, and
//! the cancellation procedure that turns them into partition identities.
//!
//! With `a, b, c, x, y` replaced by `q^a, ..., q^y` and `q` by `q^n`:
//!
//! ```text
//! -bc²[b/c, a/x, a/y, xy/bc] + ac²[a/c, b/x, b/y, xy/ac] = ab²[a/b, c/x, c/y, xy/ab]
//! ```
//!
//! Dividing the paren variant by its right side and rewriting every product
//! with base `q^{2n}` gives two terms summing to 1. When all numerator atoms
//! cancel and the leftover denominators are sets, those terms are
//! `1/Π[S:2n]` and `q^a/Π[T:2n]`, which is a partition identity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Kind, PartitionIdentity};
use crate::series::Series;
use crate::theta::{FMono, ThetaAtom, ThetaMonomial};

/// Exponents `[a, b, c, x, y]` at base `q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FourParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: i64,
    pub y: i64,
    pub n: i64,
}

impl FourParams {
    /// Positive exponents with `gcd(a, b, c, x, y) = 1`.
    pub fn new(a: i64, b: i64, c: i64, x: i64, y: i64, n: i64) -> Result<FourParams> {
        let p = FourParams { a, b, c, x, y, n };
        if [a, b, c, x, y, n].iter().any(|&v| v < 1) {
            return Err(Error::InvalidParams(format!(
                "{p}: entries must be positive"
            )));
        }
        if p.gcd() != 1 {
            return Err(Error::InvalidParams(format!("{p}: gcd is not 1")));
        }
        Ok(p)
    }

    pub fn from_slice(v: &[i64], n: i64) -> Result<FourParams> {
        match *v {
            [a, b, c, x, y] => FourParams::new(a, b, c, x, y, n),
            _ => Err(Error::InvalidParams(format!(
                "expected 5 exponents, got {}",
                v.len()
            ))),
        }
    }

    pub fn gcd(&self) -> i64 {
        [self.b, self.c, self.x, self.y]
            .iter()
            .fold(self.a, |g, v| g.gcd(v))
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.a, self.b, self.c, self.x, self.y]
    }

    pub fn signed(&self) -> SignedFour {
        SignedFour {
            args: self.as_array().map(FMono::q),
            n: self.n,
        }
    }
}

impl fmt::Display for FourParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]@{}",
            self.a, self.b, self.c, self.x, self.y, self.n
        )
    }
}

/// `a, b, c, x, y` as signed q-monomials, e.g. `b = -q^20`. A bracket whose
/// argument carries a minus sign becomes a paren.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedFour {
    pub args: [FMono; 5],
    pub n: i64,
}

/// Three monomials with `l1 + l2 = r` (four) or `l1 - l2 = r` (jkb).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub l1: ThetaMonomial,
    pub l2: ThetaMonomial,
    pub r: ThetaMonomial,
}

impl Instance {
    /// `{l1, l2, -r}` for the four-parameter form.
    pub fn zero_combination(&self) -> Vec<ThetaMonomial> {
        vec![self.l1.clone(), self.l2.clone(), self.r.neg()]
    }
}

fn ratio(num: &[FMono], den: &[FMono]) -> FMono {
    let sign = num.iter().chain(den).map(|m| m.sign).product();
    let exp = num.iter().map(|m| m.exp).sum::<i64>() - den.iter().map(|m| m.exp).sum::<i64>();
    FMono::new(sign, exp)
}

fn atom_of(m: FMono, n: i64) -> ThetaAtom {
    if m.sign > 0 {
        ThetaAtom::bracket(m.exp, n)
    } else {
        ThetaAtom::paren(m.exp, n)
    }
}

fn term(sign: i32, qexp: i64, args: [FMono; 4], n: i64) -> Result<ThetaMonomial> {
    let atoms = args.map(|m| atom_of(m, n));
    ThetaMonomial::from_parts(sign, qexp, &atoms, &[])
}

/// The four-parameter identity with signed arguments.
pub fn four_signed(p: &SignedFour) -> Result<Instance> {
    let [a, b, c, x, y] = p.args;
    let n = p.n;
    let l1 = term(
        -b.sign,
        b.exp + 2 * c.exp,
        [
            ratio(&[b], &[c]),
            ratio(&[a], &[x]),
            ratio(&[a], &[y]),
            ratio(&[x, y], &[b, c]),
        ],
        n,
    )?;
    let l2 = term(
        a.sign,
        a.exp + 2 * c.exp,
        [
            ratio(&[a], &[c]),
            ratio(&[b], &[x]),
            ratio(&[b], &[y]),
            ratio(&[x, y], &[a, c]),
        ],
        n,
    )?;
    let r = term(
        a.sign,
        a.exp + 2 * b.exp,
        [
            ratio(&[a], &[b]),
            ratio(&[c], &[x]),
            ratio(&[c], &[y]),
            ratio(&[x, y], &[a, b]),
        ],
        n,
    )?;
    Ok(Instance { l1, l2, r })
}

/// `L1 + L2 = R` with all atoms normalized.
pub fn four_instance(p: &FourParams) -> Result<Instance> {
    four_signed(&p.signed())
}

/// Arguments of `[z,t,xty,zy/x] - [xt,zy,ty,z/x] = (z/x)[y,x,xt/z,zty]` as
/// exponents at base `q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JkbParams {
    pub z: i64,
    pub t: i64,
    pub x: i64,
    pub y: i64,
    pub n: i64,
}

/// `L1 - L2 = R`.
pub fn jkb_instance(p: &JkbParams) -> Result<Instance> {
    let JkbParams { z, t, x, y, n } = *p;
    Ok(Instance {
        l1: ThetaMonomial::brackets(1, 0, &[z, t, x + t + y, z + y - x], n)?,
        l2: ThetaMonomial::brackets(1, 0, &[x + t, z + y, t + y, z - x], n)?,
        r: ThetaMonomial::brackets(1, z - x, &[y, x, x + t - z, z + t + y], n)?,
    })
}

/// A term of the base-`2n` form before any normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub sign: i32,
    pub qexp: i64,
    pub numerator: Vec<ThetaAtom>,
    pub denominator: Vec<ThetaAtom>,
}

/// The two terms of the base-`2n` form; `T1 + T2 = 1`.
pub fn four2_terms(p: &FourParams) -> Result<(RawTerm, RawTerm)> {
    let FourParams { a, b, c, x, y, n } = *p;
    let m = 2 * n;
    let shared = [a - b, c - x, c - y, x + y - a - b];
    let build = |sign, qexp, own: [i64; 4]| -> Result<RawTerm> {
        for e in own.iter().chain(&shared) {
            if e.rem_euclid(n) == 0 {
                return Err(Error::DegenerateZero {
                    exponent: *e,
                    base: n,
                });
            }
        }
        let numerator = own.iter().map(|&e| ThetaAtom::bracket(2 * e, m)).collect();
        let denominator = own
            .iter()
            .chain(&shared)
            .flat_map(|&e| [ThetaAtom::bracket(e, m), ThetaAtom::bracket(e + n, m)])
            .collect();
        Ok(RawTerm {
            sign,
            qexp,
            numerator,
            denominator,
        })
    };
    let t1 = build(-1, 2 * c - a - b, [b - c, a - x, a - y, x + y - b - c])?;
    let t2 = build(1, 2 * c - 2 * b, [a - c, b - x, b - y, x + y - a - c])?;
    Ok((t1, t2))
}

/// Canonicalizes every atom and cancels numerator against denominator.
pub fn reduce_term(t: &RawTerm) -> Result<ThetaMonomial> {
    ThetaMonomial::from_parts(t.sign, t.qexp, &t.numerator, &t.denominator)
}

impl RawTerm {
    pub fn series(&self, order: i64) -> Result<Series> {
        reduce_term(self)?.series(order)
    }
}

/// Why a parameter tuple does not yield a partition identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeriveFailure {
    /// Some atom exponent is divisible by its base.
    Degenerate,
    IncompleteCancellation,
    RepeatedAtom,
    EqualSets,
    UnrecognizedSignPattern,
}

impl DeriveFailure {
    pub const ALL: [DeriveFailure; 5] = [
        DeriveFailure::Degenerate,
        DeriveFailure::IncompleteCancellation,
        DeriveFailure::RepeatedAtom,
        DeriveFailure::EqualSets,
        DeriveFailure::UnrecognizedSignPattern,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DeriveFailure::Degenerate => "degenerate",
            DeriveFailure::IncompleteCancellation => "incomplete-cancellation",
            DeriveFailure::RepeatedAtom => "repeated-atom",
            DeriveFailure::EqualSets => "equal-sets",
            DeriveFailure::UnrecognizedSignPattern => "unrecognized-sign-pattern",
        }
    }
}

impl fmt::Display for DeriveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A partition identity together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub identity: PartitionIdentity,
    pub params: FourParams,
    pub terms: (ThetaMonomial, ThetaMonomial),
}

fn residues(t: &ThetaMonomial, n: i64) -> std::result::Result<Vec<i64>, DeriveFailure> {
    if !t.numerator().is_empty() {
        return Err(DeriveFailure::IncompleteCancellation);
    }
    // [n : 2n] is a doubled progression and cannot appear in a folded set.
    if !t.denominator_is_set() || t.denominator().iter().any(|a| a.exp == n) {
        return Err(DeriveFailure::RepeatedAtom);
    }
    Ok(t.denominator().iter().map(|a| a.exp).collect())
}

/// Reduces both base-`2n` terms and reads off a partition identity.
///
/// `S` is always the denominator of the positive term, so the result satisfies
/// `P_S - q^a P_T = 1` (shifted) or `P_S - P_T = q^a` (shiftless).
pub fn derive_identity(p: &FourParams) -> std::result::Result<Derivation, DeriveFailure> {
    let (r1, r2) = four2_terms(p).map_err(|_| DeriveFailure::Degenerate)?;
    let t1 = reduce_term(&r1).map_err(|_| DeriveFailure::Degenerate)?;
    let t2 = reduce_term(&r2).map_err(|_| DeriveFailure::Degenerate)?;
    let d1 = residues(&t1, p.n)?;
    let d2 = residues(&t2, p.n)?;
    if d1 == d2 {
        return Err(DeriveFailure::EqualSets);
    }
    if t1.sign() == t2.sign() {
        return Err(DeriveFailure::UnrecognizedSignPattern);
    }
    let ((plus, s), (minus, t)) = if t1.sign() > 0 {
        ((&t1, d1), (&t2, d2))
    } else {
        ((&t2, d2), (&t1, d1))
    };
    let (kind, a) = if plus.qexp() == 0 && minus.qexp() >= 1 {
        (Kind::Shifted, minus.qexp())
    } else if plus.qexp() == minus.qexp() && plus.qexp() < 0 {
        (Kind::Shiftless, -plus.qexp())
    } else {
        return Err(DeriveFailure::UnrecognizedSignPattern);
    };
    let identity = PartitionIdentity::new(2 * p.n, s, t, kind, a)
        .map_err(|_| DeriveFailure::UnrecognizedSignPattern)?;
    Ok(Derivation {
        identity,
        params: *p,
        terms: (t1, t2),
    })
}

/// An equality `Σ lhs = Σ rhs` of theta monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaIdentity {
    pub lhs: Vec<ThetaMonomial>,
    pub rhs: Vec<ThetaMonomial>,
}

impl ThetaIdentity {
    pub fn zero_combination(&self) -> Vec<ThetaMonomial> {
        self.lhs
            .iter()
            .cloned()
            .chain(self.rhs.iter().map(ThetaMonomial::neg))
            .collect()
    }

    pub fn verify(&self, order: i64) -> Result<ZeroCheck> {
        verify_zero_combination(&self.zero_combination(), order)
    }
}

fn parens(sign: i32, qexp: i64, exps: &[i64], base: i64) -> Result<ThetaMonomial> {
    let atoms: Vec<ThetaAtom> = exps.iter().map(|&e| ThetaAtom::paren(e, base)).collect();
    ThetaMonomial::from_parts(sign, qexp, &atoms, &[])
}

/// `(x,y){(x²/y, xy²) - (x/y)(y²/x, x²y)} = [x², y², xy, x/y]` with
/// `x = q^ex`, `y = q^ey` and base `q^n`.
pub fn kalvade_instance(ex: i64, ey: i64, n: i64) -> Result<ThetaIdentity> {
    Ok(ThetaIdentity {
        lhs: vec![
            parens(1, 0, &[ex, ey, 2 * ex - ey, ex + 2 * ey], n)?,
            parens(-1, ex - ey, &[ex, ey, 2 * ey - ex, 2 * ex + ey], n)?,
        ],
        rhs: vec![ThetaMonomial::brackets(
            1,
            0,
            &[2 * ex, 2 * ey, ex + ey, ex - ey],
            n,
        )?],
    })
}

/// The quintuple product identity at `x = q^ex`, `q ↦ q^n`, in its paren form
/// (base `3n`) and its all-bracket form (base `6n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quintuple {
    pub paren_form: ThetaIdentity,
    pub bracket_form: ThetaIdentity,
}

pub fn quintuple_instance(ex: i64, n: i64) -> Result<Quintuple> {
    let m3 = 3 * n;
    let m6 = 6 * n;
    let common = [ex, ex + n, ex + 2 * n];
    let paren_form = ThetaIdentity {
        lhs: vec![
            parens(1, 0, &[common[0], common[1], common[2], 3 * ex + n], m3)?,
            parens(-1, ex, &[common[0], common[1], common[2], n - 3 * ex], m3)?,
        ],
        rhs: vec![ThetaMonomial::brackets(
            1,
            0,
            &[2 * ex, 2 * ex + n, 2 * ex + 2 * n, n],
            m3,
        )?],
    };
    let mut rhs: Vec<i64> = vec![n, 2 * n];
    rhs.extend((0..6).map(|j| ex + j * n));
    rhs.extend([1, 3, 5].map(|j| 2 * ex + j * n));
    rhs.extend([3 * ex + n, 3 * ex + 4 * n, n - 3 * ex, 4 * n - 3 * ex]);
    let bracket_form = ThetaIdentity {
        lhs: vec![
            ThetaMonomial::brackets(1, 0, &[n - 3 * ex, 4 * n - 3 * ex, 6 * ex + 2 * n], m6)?,
            ThetaMonomial::brackets(-1, ex, &[3 * ex + n, 3 * ex + 4 * n, 2 * n - 6 * ex], m6)?,
        ],
        rhs: vec![ThetaMonomial::brackets(1, 0, &rhs, m6)?],
    };
    Ok(Quintuple {
        paren_form,
        bracket_form,
    })
}

/// Result of summing a monomial combination through some order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroCheck {
    pub pass: bool,
    pub first_failure: Option<i64>,
}

/// Checks that `Σ terms` vanishes through `order`.
pub fn verify_zero_combination(terms: &[ThetaMonomial], order: i64) -> Result<ZeroCheck> {
    if terms.is_empty() {
        return Err(Error::InvalidIdentity("empty combination".into()));
    }
    let series = terms
        .iter()
        .map(|t| t.series(order))
        .collect::<Result<Vec<_>>>()?;
    let sum = Series::linear_combine(series.iter().map(|s| (BigInt::from(1), s)));
    let first_failure = if sum.is_zero_to(order) {
        None
    } else {
        sum.valuation()
    };
    Ok(ZeroCheck {
        pass: first_failure.is_none(),
        first_failure,
    })
}

/// Finds `(ε, k)` with `{ε q^k t : t ∈ printed} = reference` as multisets.
pub fn match_up_to_scaling(
    printed: &[ThetaMonomial],
    reference: &[ThetaMonomial],
) -> Option<(i32, i64)> {
    if printed.len() != reference.len() || printed.is_empty() {
        return None;
    }
    let mut want = reference.to_vec();
    want.sort();
    let first = &printed[0];
    for cand in reference.iter().filter(|r| r.same_atoms(first)) {
        let eps = cand.sign() * first.sign();
        let k = cand.qexp() - first.qexp();
        let mut got: Vec<ThetaMonomial> = printed.iter().map(|t| t.scaled(eps, k)).collect();
        got.sort();
        if got == want {
            return Some((eps, k));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_equation;

    fn p(v: [i64; 5], n: i64) -> FourParams {
        FourParams::from_slice(&v, n).unwrap()
    }

    #[test]
    fn four_instance_matches_printed() {
        for (params, n, printed) in [
            (
                [1, 3, 6, 9, 12],
                42,
                "[5,6,9,14:42] - [3,8,11,12:42] = q^3[2,3,6,17:42]",
            ),
            (
                [1, 5, 14, 19, 20],
                42,
                "[9,18,19,20:42] - [13,14,15,18:42] = -q^9[4,5,6,9:42]",
            ),
            (
                [1, 7, 9, 17, 19],
                48,
                "[2,16,18,20:48] - [8,10,12,22:48] = -q^2[6,8,10,20:48]",
            ),
        ] {
            let inst = four_instance(&p(params, n)).unwrap();
            let eq = parse_equation(printed).unwrap();
            assert!(
                match_up_to_scaling(&eq, &inst.zero_combination()).is_some(),
                "{printed}"
            );
            assert!(verify_zero_combination(&eq, 300).unwrap().pass);
        }
    }

    #[test]
    fn golden_reduction() {
        let (t1, t2) = four2_terms(&p([1, 2, 4, 12, 13], 16)).unwrap();
        let r1 = reduce_term(&t1).unwrap();
        let r2 = reduce_term(&t2).unwrap();
        assert_eq!(r1.to_string(), "-q / [1,2,3,5,7,8,9,11,12,13,14,15:32]");
        assert_eq!(r2.to_string(), "1 / [1,3,4,5,6,7,8,9,10,11,13,15:32]");
        let sum = &t1.series(300).unwrap() + &t2.series(300).unwrap();
        assert_eq!(sum, Series::one(300));
    }

    #[test]
    fn derive_examples() {
        let d = derive_identity(&p([1, 2, 4, 12, 13], 16)).unwrap();
        assert_eq!(d.identity.modulus(), 32);
        assert_eq!(d.identity.kind(), Kind::Shifted);
        assert_eq!(d.identity.shift(), 1);
        assert_eq!(d.identity.s(), &[1, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15]);
        assert_eq!(d.identity.t(), &[1, 2, 3, 5, 7, 8, 9, 11, 12, 13, 14, 15]);

        let d = derive_identity(&p([1, 2, 4, 8, 9], 20)).unwrap();
        assert_eq!(d.identity.kind(), Kind::Shiftless);
        assert_eq!(d.identity.shift(), 2);
        let mut pair = [d.identity.s().to_vec(), d.identity.t().to_vec()];
        pair.sort();
        assert_eq!(pair[0], vec![1, 2, 5, 6, 7, 8, 9, 11, 12, 13, 15, 19]);
        assert_eq!(pair[1], vec![1, 3, 4, 5, 6, 7, 8, 13, 14, 15, 17, 19]);

        assert_eq!(
            derive_identity(&p([1, 2, 3, 4, 5], 16)).unwrap_err(),
            DeriveFailure::IncompleteCancellation
        );
        assert_eq!(
            derive_identity(&p([1, 2, 4, 1, 13], 16)).unwrap_err(),
            DeriveFailure::Degenerate
        );
    }

    #[test]
    fn degenerate_instances_error() {
        assert!(matches!(
            four2_terms(&p([3, 2, 4, 3, 13], 16)),
            Err(Error::DegenerateZero { .. })
        ));
        assert!(matches!(
            jkb_instance(&JkbParams {
                z: 7,
                t: 1,
                x: 2,
                y: 3,
                n: 7
            }),
            Err(Error::DegenerateZero { .. })
        ));
        assert!(matches!(
            kalvade_instance(2, 2, 9),
            Err(Error::DegenerateZero { .. })
        ));
        assert!(matches!(
            quintuple_instance(3, 9),
            Err(Error::DegenerateZero { .. })
        ));
    }

    #[test]
    fn jkb_examples() {
        let inst = jkb_instance(&JkbParams {
            z: 5,
            t: 4,
            x: 2,
            y: 3,
            n: 17,
        })
        .unwrap();
        assert_eq!(inst.r.qexp(), 3);
        let combo = [inst.l1.clone(), inst.l2.neg(), inst.r.neg()];
        assert!(verify_zero_combination(&combo, 200).unwrap().pass);
        // z = x puts the degenerate [z/x] = [1] into the second term
        assert!(matches!(
            jkb_instance(&JkbParams {
                z: 2,
                t: 3,
                x: 2,
                y: 4,
                n: 13
            }),
            Err(Error::DegenerateZero { .. })
        ));
    }

    #[test]
    fn quintuple_printed_form() {
        let q = quintuple_instance(2, 9).unwrap();
        let printed = parse_equation(
            "[3,24,24:54] - q^2[15,12,6:54] = [2,3,5,7,9,11,12,13,15,16,18,20,23,24,25:54]",
        )
        .unwrap();
        assert_eq!(
            match_up_to_scaling(&printed, &q.bracket_form.zero_combination()),
            Some((1, 0))
        );
        let q = quintuple_instance(1, 5).unwrap();
        assert!(q.paren_form.verify(200).unwrap().pass);
        assert!(q.bracket_form.verify(200).unwrap().pass);
    }

    #[test]
    fn zero_combination_examples() {
        let ok = parse_equation("[1:4] - [1:4]").unwrap();
        assert!(verify_zero_combination(&ok, 100).unwrap().pass);
        let bad = parse_equation("[1:4] - [2:8]").unwrap();
        let r = verify_zero_combination(&bad, 100).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure, Some(1));
        assert!(verify_zero_combination(&[], 10).is_err());
    }
}
