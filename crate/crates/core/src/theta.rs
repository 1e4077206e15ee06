//! Theta brackets `[q^e : q^m]`, theta parens `(q^e : q^m)`, signed monomials
//! built from them, and Ramanujan's theta function `f(a, b)`.
//!
//! `[x : q] = (x; q)_∞ (q/x; q)_∞` and `(x : q) = (-x; q)_∞ (-q/x; q)_∞`.
//! Every atom is kept in canonical form `0 < e <= m/2`, using
//! `[x q : q] = -x^{-1} [x : q]`, `(x q : q) = x^{-1} (x : q)` and the
//! reflection `x ↦ q/x`. With that, cancelling a numerator atom against a
//! denominator atom is plain multiset arithmetic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::series::{binomial_product, Binomial, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Bracket,
    Paren,
}

/// One theta factor `[q^exp : q^base]` or `(q^exp : q^base)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaAtom {
    pub kind: AtomKind,
    pub exp: i64,
    pub base: i64,
}

impl Ord for ThetaAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.base, self.kind, self.exp).cmp(&(other.base, other.kind, other.exp))
    }
}

impl PartialOrd for ThetaAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduces a bracket exponent into `0 < r <= m/2`.
///
/// Returns `(sign, qshift, r)` with `[q^e : q^m] = sign · q^qshift · [q^r : q^m]`.
/// Writing `e = r0 + k·m` with `0 < r0 < m`, the sign is `(-1)^k`, the shift is
/// `-(k·r0 + m·k(k-1)/2)` and `r = min(r0, m - r0)`.
pub fn normalize_atom(e: i64, m: i64) -> Result<(i32, i64, i64)> {
    let r0 = e.rem_euclid(m);
    if r0 == 0 {
        return Err(Error::DegenerateZero {
            exponent: e,
            base: m,
        });
    }
    let k = (e - r0) / m;
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    let qshift = -(k * r0 + m * k * (k - 1) / 2);
    Ok((sign, qshift, r0.min(m - r0)))
}

impl ThetaAtom {
    pub fn bracket(exp: i64, base: i64) -> ThetaAtom {
        ThetaAtom {
            kind: AtomKind::Bracket,
            exp,
            base,
        }
    }

    pub fn paren(exp: i64, base: i64) -> ThetaAtom {
        ThetaAtom {
            kind: AtomKind::Paren,
            exp,
            base,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.base >= 1 && self.exp > 0 && 2 * self.exp <= self.base
    }

    /// Canonical form of this atom as `(sign, qshift, atom)`.
    ///
    /// Parens pick up no sign under quasi-periodicity.
    pub fn canonical(&self) -> Result<(i32, i64, ThetaAtom)> {
        if self.base < 1 {
            return Err(Error::InvalidExponent {
                exponent: self.exp,
                base: self.base,
            });
        }
        let (sign, qshift, r) = normalize_atom(self.exp, self.base)?;
        let sign = match self.kind {
            AtomKind::Bracket => sign,
            AtomKind::Paren => 1,
        };
        Ok((
            sign,
            qshift,
            ThetaAtom {
                kind: self.kind,
                exp: r,
                base: self.base,
            },
        ))
    }

    /// The two infinite products of a canonical atom as binomial factors.
    pub(crate) fn binomials(&self, power: i32, order: i64, out: &mut Vec<Binomial>) {
        debug_assert!(self.is_canonical());
        let sign = match self.kind {
            AtomKind::Bracket => 1,
            AtomKind::Paren => -1,
        };
        for start in [self.exp, self.base - self.exp] {
            let mut k = start;
            while k <= order {
                out.push(Binomial::new(k, sign, power));
                k += self.base;
            }
        }
    }

    /// Series of a single canonical atom.
    pub fn series(&self, order: i64) -> Result<Series> {
        ThetaMonomial::from_parts(1, 0, &[*self], &[])?.series(order)
    }
}

impl fmt::Display for ThetaAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AtomKind::Bracket => write!(f, "[{}:{}]", self.exp, self.base),
            AtomKind::Paren => write!(f, "({}:{})", self.exp, self.base),
        }
    }
}

/// `sign · q^qexp · Π numerator / Π denominator` over canonical atoms.
///
/// Numerator and denominator are sorted multisets. Constructors always
/// canonicalize and cancel, so two equal monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMonomial {
    numerator: Vec<ThetaAtom>,
    denominator: Vec<ThetaAtom>,
    qexp: i64,
    sign: i32,
}

impl ThetaMonomial {
    pub fn one() -> ThetaMonomial {
        ThetaMonomial {
            numerator: Vec::new(),
            denominator: Vec::new(),
            qexp: 0,
            sign: 1,
        }
    }

    /// `sign · q^qexp`.
    pub fn scalar(sign: i32, qexp: i64) -> ThetaMonomial {
        ThetaMonomial {
            sign: sign.signum(),
            qexp,
            ..ThetaMonomial::one()
        }
    }

    /// Builds a reduced monomial from arbitrary (possibly non-canonical) atoms.
    pub fn from_parts(
        sign: i32,
        qexp: i64,
        numerator: &[ThetaAtom],
        denominator: &[ThetaAtom],
    ) -> Result<ThetaMonomial> {
        let mut m = ThetaMonomial::scalar(sign, qexp);
        for atom in numerator {
            let (s, k, a) = atom.canonical()?;
            m.sign *= s;
            m.qexp += k;
            m.numerator.push(a);
        }
        for atom in denominator {
            let (s, k, a) = atom.canonical()?;
            m.sign *= s;
            m.qexp -= k;
            m.denominator.push(a);
        }
        m.cancel();
        Ok(m)
    }

    /// Bracket-only shorthand: `sign · q^qexp · [exps : base]`.
    pub fn brackets(sign: i32, qexp: i64, exps: &[i64], base: i64) -> Result<ThetaMonomial> {
        let atoms: Vec<ThetaAtom> = exps.iter().map(|&e| ThetaAtom::bracket(e, base)).collect();
        ThetaMonomial::from_parts(sign, qexp, &atoms, &[])
    }

    fn cancel(&mut self) {
        self.numerator.sort();
        self.denominator.sort();
        let (num, den) = multiset_cancel(&self.numerator, &self.denominator);
        self.numerator = num;
        self.denominator = den;
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn qexp(&self) -> i64 {
        self.qexp
    }

    pub fn numerator(&self) -> &[ThetaAtom] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[ThetaAtom] {
        &self.denominator
    }

    pub fn neg(&self) -> ThetaMonomial {
        ThetaMonomial {
            sign: -self.sign,
            ..self.clone()
        }
    }

    /// Multiplies by `sign · q^k`.
    pub fn scaled(&self, sign: i32, k: i64) -> ThetaMonomial {
        ThetaMonomial {
            sign: self.sign * sign.signum(),
            qexp: self.qexp + k,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &ThetaMonomial) -> ThetaMonomial {
        let mut m = ThetaMonomial {
            numerator: [self.numerator.as_slice(), other.numerator.as_slice()].concat(),
            denominator: [self.denominator.as_slice(), other.denominator.as_slice()].concat(),
            qexp: self.qexp + other.qexp,
            sign: self.sign * other.sign,
        };
        m.cancel();
        m
    }

    pub fn recip(&self) -> ThetaMonomial {
        ThetaMonomial {
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
            qexp: -self.qexp,
            sign: self.sign,
        }
    }

    pub fn div(&self, other: &ThetaMonomial) -> ThetaMonomial {
        self.mul(&other.recip())
    }

    /// Same atoms, ignoring sign and q-power.
    pub fn same_atoms(&self, other: &ThetaMonomial) -> bool {
        self.numerator == other.numerator && self.denominator == other.denominator
    }

    /// True when no denominator atom repeats.
    pub fn denominator_is_set(&self) -> bool {
        self.denominator.windows(2).all(|w| w[0] != w[1])
    }

    /// Expands `sign · q^qexp · Π num / Π den` to order `order`.
    pub fn series(&self, order: i64) -> Result<Series> {
        let inner = order - self.qexp;
        let mut factors = Vec::new();
        for a in &self.numerator {
            a.binomials(1, inner, &mut factors);
        }
        for a in &self.denominator {
            a.binomials(-1, inner, &mut factors);
        }
        Ok(binomial_product(&factors, inner).shift_scale(self.sign, self.qexp))
    }
}

/// Removes common elements of two sorted multisets.
pub(crate) fn multiset_cancel<T: Ord + Copy>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                ra.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                rb.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    ra.extend_from_slice(&a[i..]);
    rb.extend_from_slice(&b[j..]);
    (ra, rb)
}

/// `(e : m)` rewritten as `[2e : 2m] / ([e : 2m][e + m : 2m])`.
pub fn paren_to_bracket(e: i64, m: i64) -> Result<ThetaMonomial> {
    normalize_atom(e, m)?;
    ThetaMonomial::from_parts(
        1,
        0,
        &[ThetaAtom::bracket(2 * e, 2 * m)],
        &[
            ThetaAtom::bracket(e, 2 * m),
            ThetaAtom::bracket(e + m, 2 * m),
        ],
    )
}

/// The signed q-monomial `sign · q^exp`, an argument of `f(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FMono {
    pub sign: i32,
    pub exp: i64,
}

impl FMono {
    pub fn new(sign: i32, exp: i64) -> FMono {
        FMono {
            sign: sign.signum(),
            exp,
        }
    }

    pub fn q(exp: i64) -> FMono {
        FMono::new(1, exp)
    }

    pub fn neg_q(exp: i64) -> FMono {
        FMono::new(-1, exp)
    }
}

fn sign_pow(sign: i32, e: i64) -> i32 {
    if sign < 0 && e.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// `f(a, b) = Σ_{k ∈ Z} a^{k(k+1)/2} b^{k(k-1)/2}` summed directly.
pub fn ramanujan_f_sum(a: FMono, b: FMono, order: i64) -> Result<Series> {
    let total = a.exp + b.exp;
    if total < 1 {
        return Err(Error::Divergent(total));
    }
    let term = |k: i64| {
        let ta = k * (k + 1) / 2;
        let tb = k * (k - 1) / 2;
        (
            a.exp * ta + b.exp * tb,
            sign_pow(a.sign, ta) * sign_pow(b.sign, tb),
        )
    };
    // E(k) is a convex quadratic; walk out from its vertex in both directions.
    let vertex = (b.exp - a.exp) as f64 / (2 * total) as f64;
    let start = vertex.round() as i64;
    let mut terms = Vec::new();
    for dir in [1i64, -1] {
        let mut k = if dir > 0 { start } else { start - 1 };
        loop {
            let (e, s) = term(k);
            let past_vertex = (dir > 0 && k as f64 >= vertex) || (dir < 0 && (k as f64) <= vertex);
            if e > order && past_vertex {
                break;
            }
            if e <= order {
                terms.push((e, s));
            }
            k += dir;
        }
    }
    let lo = terms.iter().map(|t| t.0).min().unwrap_or(0).min(order);
    let mut coeffs = vec![num_bigint::BigInt::from(0); (order - lo + 1).max(0) as usize];
    for (e, s) in terms {
        coeffs[(e - lo) as usize] += s;
    }
    Ok(Series::new(lo, coeffs, order))
}

/// `f(a, b) = (-a; ab)_∞ (-b; ab)_∞ (ab; ab)_∞`.
pub fn ramanujan_f_product(a: FMono, b: FMono, order: i64) -> Result<Series> {
    let total = a.exp + b.exp;
    if total < 1 {
        return Err(Error::Divergent(total));
    }
    if a.exp < 1 || b.exp < 1 {
        return Err(Error::UnsupportedNegativeExponent(a.exp, b.exp));
    }
    // The j-th factor of (c; ab)_∞ is 1 - c(ab)^j, so a negative ab
    // alternates the sign along each progression.
    let ab_sign = a.sign * b.sign;
    let mut factors = Vec::new();
    for (start, sign) in [(a.exp, -a.sign), (b.exp, -b.sign), (total, ab_sign)] {
        let (mut k, mut sign) = (start, sign);
        while k <= order {
            factors.push(Binomial::new(k, sign, 1));
            k += total;
            sign *= ab_sign;
        }
    }
    Ok(binomial_product(&factors, order))
}
