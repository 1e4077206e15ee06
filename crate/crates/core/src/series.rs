//! Truncated Laurent series in `q` with arbitrary-precision integer coefficients.
//!
//! A [`Series`] knows every coefficient of `q^k` for `k <= order` and nothing
//! beyond. Binary operations combine orders conservatively and never claim
//! precision the inputs do not carry.
//!
//! Products of binomials `(1 - σq^k)^{±1}` dominate every workload in this
//! crate (theta brackets, Pochhammer symbols, partition generating functions),
//! so [`binomial_product`] has its own kernel: it runs in `i128` with checked
//! arithmetic and reruns in [`BigInt`] only if a coefficient overflows.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Truncated Laurent series `Σ c_k q^k`, `k <= order`.
///
/// Canonical form: `coeffs[0]` is nonzero, so `offset` is the valuation. The
/// series that is zero up to `order` is stored with empty `coeffs` and
/// `offset == order + 1`.
#[derive(Clone, Debug)]
pub struct Series {
    offset: i64,
    coeffs: Vec<BigInt>,
    order: i64,
}

impl Series {
    /// Builds a series from `coeffs[i] = [q^(offset+i)]`, truncating at `order`.
    pub fn new(offset: i64, mut coeffs: Vec<BigInt>, order: i64) -> Series {
        let keep = order - offset + 1;
        if keep <= 0 {
            return Series::zero(order);
        }
        coeffs.truncate(keep as usize);
        coeffs.resize(keep as usize, BigInt::zero());
        let mut s = Series {
            offset,
            coeffs,
            order,
        };
        s.canonicalize();
        s
    }

    pub fn from_i64(offset: i64, coeffs: &[i64], order: i64) -> Series {
        Series::new(
            offset,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            order,
        )
    }

    pub fn zero(order: i64) -> Series {
        Series {
            offset: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Series {
        Series::monomial(BigInt::one(), 0, order)
    }

    /// `c·q^k` truncated at `order`.
    pub fn monomial(c: BigInt, k: i64, order: i64) -> Series {
        Series::new(k, vec![c], order)
    }

    fn canonicalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => *self = Series::zero(self.order),
            Some(0) => {}
            Some(lead) => {
                self.coeffs.drain(..lead);
                self.offset += lead as i64;
            }
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset)
        }
    }

    /// Lowest tracked exponent as stored (equals the valuation when nonzero).
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^k`.
    pub fn coeff(&self, k: i64) -> Result<BigInt> {
        if k > self.order {
            return Err(Error::BeyondOrder {
                requested: k,
                order: self.order,
            });
        }
        Ok(self.coeff_unchecked(k))
    }

    fn coeff_unchecked(&self, k: i64) -> BigInt {
        if k < self.offset {
            return BigInt::zero();
        }
        self.coeffs
            .get((k - self.offset) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficients of `q^from ..= q^to` as a dense vector.
    pub fn coeff_range(&self, from: i64, to: i64) -> Result<Vec<BigInt>> {
        if to > self.order {
            return Err(Error::BeyondOrder {
                requested: to,
                order: self.order,
            });
        }
        Ok((from..=to).map(|k| self.coeff_unchecked(k)).collect())
    }

    /// Drops everything above `order` (no-op if already coarser).
    pub fn truncate(&self, order: i64) -> Series {
        if order >= self.order {
            return self.clone();
        }
        Series::new(self.offset, self.coeffs.clone(), order)
    }

    /// `sign·q^k·A`.
    pub fn shift_scale(&self, sign: i32, k: i64) -> Series {
        let order = self.order + k;
        if self.is_zero() {
            return Series::zero(order);
        }
        let coeffs = if sign < 0 {
            self.coeffs.iter().map(|c| -c).collect()
        } else {
            self.coeffs.clone()
        };
        Series {
            offset: self.offset + k,
            coeffs,
            order,
        }
    }

    /// Integer linear combination `Σ c_i·A_i`; the result order is the minimum
    /// of the input orders.
    ///
    /// # Panics
    /// If `terms` is empty.
    pub fn linear_combine<'a, I>(terms: I) -> Series
    where
        I: IntoIterator<Item = (BigInt, &'a Series)>,
    {
        let terms: Vec<(BigInt, &Series)> = terms.into_iter().collect();
        assert!(!terms.is_empty(), "linear_combine needs at least one term");
        let order = terms.iter().map(|(_, s)| s.order).min().unwrap();
        let lo = terms
            .iter()
            .filter(|(c, s)| !s.is_zero() && !c.is_zero())
            .map(|(_, s)| s.offset)
            .min();
        let Some(lo) = lo else {
            return Series::zero(order);
        };
        if lo > order {
            return Series::zero(order);
        }
        let mut acc = vec![BigInt::zero(); (order - lo + 1) as usize];
        for (c, s) in &terms {
            if c.is_zero() {
                continue;
            }
            for (i, a) in s.coeffs.iter().enumerate() {
                let k = s.offset + i as i64;
                if k > order {
                    break;
                }
                let slot = &mut acc[(k - lo) as usize];
                if c.is_one() {
                    *slot += a;
                } else {
                    *slot += c * a;
                }
            }
        }
        Series::new(lo, acc, order)
    }

    /// Truncated Cauchy product.
    ///
    /// The result order is `min(N_A, N_B, N_A + v_B, N_B + v_A)` where `v` is
    /// the valuation; for series with nonnegative valuation this is just
    /// `min(N_A, N_B)`.
    pub fn mul(&self, other: &Series) -> Series {
        let mut order = self.order.min(other.order);
        if let Some(vb) = other.valuation() {
            order = order.min(self.order + vb);
        }
        if let Some(va) = self.valuation() {
            order = order.min(other.order + va);
        }
        if self.is_zero() || other.is_zero() {
            return Series::zero(order);
        }
        let offset = self.offset + other.offset;
        if offset > order {
            return Series::zero(order);
        }
        let len = (order - offset + 1) as usize;
        let coeffs = convolve(&self.coeffs, &other.coeffs, len);
        Series::new(offset, coeffs, order)
    }

    /// Multiplicative inverse of a series whose leading coefficient is `±1`.
    ///
    /// For `A = q^v·u` known to order `N`, the inverse is known to order `N - 2v`.
    pub fn invert(&self) -> Result<Series> {
        if self.is_zero() {
            return Err(Error::NonUnitLeading("0".into()));
        }
        let lead = &self.coeffs[0];
        let lead_sign: i64 = if lead.is_one() {
            1
        } else if (-lead).is_one() {
            -1
        } else {
            return Err(Error::NonUnitLeading(lead.to_string()));
        };
        let v = self.offset;
        let order = self.order - 2 * v;
        let len = (self.order - v + 1) as usize;
        // b_0 = lead, b_n = -lead * Σ_{i=1..n} a_i b_{n-i}
        let a = &self.coeffs;
        let mut b: Vec<BigInt> = Vec::with_capacity(len);
        b.push(BigInt::from(lead_sign));
        for n in 1..len {
            let mut acc = BigInt::zero();
            for i in 1..=n.min(a.len() - 1) {
                if a[i].is_zero() || b[n - i].is_zero() {
                    continue;
                }
                acc += &a[i] * &b[n - i];
            }
            if lead_sign > 0 {
                acc = -acc;
            }
            b.push(acc);
        }
        Ok(Series::new(-v, b, order))
    }

    /// `(σq^e; q^m)_∞` truncated at `order`.
    pub fn pochhammer(e: i64, m: i64, sigma: i32, order: i64) -> Result<Series> {
        if e < 1 || m < 1 {
            return Err(Error::InvalidExponent {
                exponent: e,
                base: m,
            });
        }
        let mut factors = Vec::new();
        let mut k = e;
        while k <= order {
            factors.push(Binomial::new(k, sigma, 1));
            k += m;
        }
        Ok(binomial_product(&factors, order))
    }

    /// `Π (1 - q^k)^{-1}` over all `k <= order` with `k ≡ ±s (mod M)` for some
    /// `s` in the folded residue set.
    pub fn residue_product(residues: &[i64], modulus: i64, order: i64) -> Result<Series> {
        let parts = parts_of(residues, modulus, order)?;
        let factors: Vec<Binomial> = parts.into_iter().map(|k| Binomial::new(k, 1, -1)).collect();
        Ok(binomial_product(&factors, order))
    }

    /// True when every coefficient up to `order` is zero.
    pub fn is_zero_to(&self, order: i64) -> bool {
        self.is_zero() || self.offset > order
    }

    /// First exponent `<= min(order_A, order_B)` where the series disagree.
    pub fn first_difference(&self, other: &Series) -> Option<i64> {
        let order = self.order.min(other.order);
        let lo = self.offset.min(other.offset);
        (lo..=order).find(|&k| self.coeff_unchecked(k) != other.coeff_unchecked(k))
    }

    /// Largest absolute coefficient, as a decimal digit count (for reports).
    pub fn max_digits(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_string().len())
            .max()
            .unwrap_or(1)
    }
}

impl PartialEq for Series {
    /// Agreement of every coefficient up to the smaller of the two orders.
    fn eq(&self, other: &Series) -> bool {
        self.first_difference(other).is_none()
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.shift_scale(-1, 0)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::linear_combine([(BigInt::one(), self), (BigInt::one(), rhs)])
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::linear_combine([(BigInt::one(), self), (-BigInt::one(), rhs)])
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.offset + i as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// Ascending list of every `k <= limit` with `k ≡ ±s (mod M)`, `s` in `residues`.
pub(crate) fn parts_of(residues: &[i64], modulus: i64, limit: i64) -> Result<Vec<i64>> {
    if residues.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut allowed = vec![false; modulus.max(1) as usize];
    for &s in residues {
        if s < 1 || 2 * s > modulus {
            return Err(Error::ResidueOutOfRange {
                residue: s,
                modulus,
            });
        }
        allowed[s as usize] = true;
        allowed[(modulus - s) as usize] = true;
    }
    Ok((1..=limit)
        .filter(|k| allowed[(k % modulus) as usize])
        .collect())
}

/// The factor `(1 - σq^k)^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub exp: i64,
    pub sign: i32,
    pub power: i32,
}

impl Binomial {
    pub fn new(exp: i64, sign: i32, power: i32) -> Binomial {
        debug_assert!(exp >= 1);
        Binomial { exp, sign, power }
    }
}

/// `Π (1 - σ_i q^{k_i})^{p_i}` truncated at `order`.
pub fn binomial_product(factors: &[Binomial], order: i64) -> Series {
    if order < 0 {
        return Series::zero(order);
    }
    let len = order as usize + 1;
    let coeffs = match binomial_product_small(factors, len) {
        Some(small) => small.into_iter().map(BigInt::from).collect(),
        None => binomial_product_big(factors, len),
    };
    Series::new(0, coeffs, order)
}

fn binomial_product_small(factors: &[Binomial], len: usize) -> Option<Vec<i128>> {
    let mut c = vec![0i128; len];
    c[0] = 1;
    for f in factors {
        let k = f.exp as usize;
        if k >= len {
            continue;
        }
        for _ in 0..f.power.unsigned_abs() {
            if f.power > 0 {
                for i in (k..len).rev() {
                    let t = c[i - k];
                    c[i] = if f.sign > 0 {
                        c[i].checked_sub(t)?
                    } else {
                        c[i].checked_add(t)?
                    };
                }
            } else {
                for i in k..len {
                    let t = c[i - k];
                    c[i] = if f.sign > 0 {
                        c[i].checked_add(t)?
                    } else {
                        c[i].checked_sub(t)?
                    };
                }
            }
        }
    }
    Some(c)
}

fn binomial_product_big(factors: &[Binomial], len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for f in factors {
        let k = f.exp as usize;
        if k >= len {
            continue;
        }
        for _ in 0..f.power.unsigned_abs() {
            let subtract = (f.power > 0) == (f.sign > 0);
            let step = |c: &mut Vec<BigInt>, i: usize| {
                let (lo, hi) = c.split_at_mut(i);
                if subtract {
                    hi[0] -= &lo[i - k];
                } else {
                    hi[0] += &lo[i - k];
                }
            };
            if f.power > 0 {
                for i in (k..len).rev() {
                    step(&mut c, i);
                }
            } else {
                for i in k..len {
                    step(&mut c, i);
                }
            }
        }
    }
    c
}

/// First `len` coefficients of the product of two dense coefficient vectors.
fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    if let Some(out) = convolve_small(a, b, len) {
        return out.into_iter().map(BigInt::from).collect();
    }
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

fn convolve_small(a: &[BigInt], b: &[BigInt], len: usize) -> Option<Vec<i128>> {
    const LIMIT: i64 = 1 << 40;
    let to_small = |v: &[BigInt]| -> Option<Vec<i64>> {
        v.iter()
            .take(len)
            .map(|c| c.to_i64().filter(|x| x.abs() < LIMIT))
            .collect()
    };
    // |x·y| < 2^80, so sums of up to 2^47 products stay inside i128.
    let a = to_small(a)?;
    let b = to_small(b)?;
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x as i128 * y as i128;
        }
    }
    Some(out)
}
