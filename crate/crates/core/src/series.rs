//! Exact truncated formal power series over unbounded integers.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `q^0 ..= q^N`; everything above `q^N` has been discarded. Binary operations
//! require both operands to share the same order and never re-truncate
//! implicitly.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A power series in `q` known modulo `q^(order+1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1)
    }

    /// `coeff * q^exponent`, or zero when the exponent lies past the order.
    pub fn monomial(order: usize, exponent: usize, coeff: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = coeff.into();
        }
        s
    }

    /// Builds a series from leading coefficients, padding with zeros up to
    /// `order` and dropping anything beyond it.
    pub fn from_coeffs<I, T>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^i`. Panics if `i` exceeds the order.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    /// Cauchy product `c_n = sum_{i=0}^{n} a_i b_{n-i}`, truncated at the
    /// common order.
    ///
    /// Zero coefficients of the sparser operand are skipped, so multiplying by
    /// a polynomial with few terms costs `O(terms * N)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let (sparse, dense) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(n);
        for (i, a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (slot, b) in out.coeffs[i..].iter_mut().zip(&dense.coeffs) {
                if !b.is_zero() {
                    *slot += a * b;
                }
            }
        }
        Ok(out)
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplicative inverse for a series with constant term `+1` or `-1`,
    /// via `b_n = -(1/a_0) sum_{i=1}^{n} a_i b_{n-i}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !(a0.is_one() || (-a0).is_one()) {
            return Err(Error::NonUnitConstant(a0.clone()));
        }
        let negative = a0.is_negative();
        let n = self.order();
        let mut b = Self::zero(n);
        b.coeffs[0] = a0.clone();
        let support: Vec<usize> = (1..=n).filter(|&i| !self.coeffs[i].is_zero()).collect();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for &i in support.iter().take_while(|&&i| i <= m) {
                acc += &self.coeffs[i] * &b.coeffs[m - i];
            }
            // 1/a0 == a0 for a unit
            b.coeffs[m] = if negative { acc } else { -acc };
        }
        Ok(b)
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `q^exponent`, keeping the order.
    pub fn shift(&self, exponent: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        if exponent <= n {
            out.coeffs[exponent..].clone_from_slice(&self.coeffs[..=n - exponent]);
        }
        out
    }

    /// Reduces to a lower order. Errors when asked to raise the order, since
    /// the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: order,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// In-place multiplication by `1 + sign * q^exponent`.
    fn mul_binomial_factor(&mut self, sign: Sign, exponent: usize) {
        let n = self.order();
        if exponent == 0 || exponent > n {
            return;
        }
        for i in (exponent..=n).rev() {
            let (low, high) = self.coeffs.split_at_mut(i);
            let src = &low[i - exponent];
            if src.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => high[0] += src,
                Sign::Minus => high[0] -= src,
            }
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(O(q^{}))[", self.order() + 1)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Panics on order mismatch; use [`TruncatedSeries::try_add`] otherwise.
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.try_add(rhs).expect("series orders differ")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.try_sub(rhs).expect("series orders differ")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// One family of factors `(1 + sign*q^(offset + j*step))`, `j = 0, 1, ...`,
/// i.e. the Pochhammer symbol `(-sign*q^offset; q^step)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    sign: Sign,
    offset: usize,
    step: usize,
}

impl ProductSpec {
    pub fn new(sign: Sign, offset: usize, step: usize) -> Result<Self> {
        if offset == 0 || step == 0 {
            return Err(Error::InvalidProductSpec { offset, step });
        }
        Ok(Self { sign, offset, step })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn step(&self) -> usize {
        self.step
    }
}

/// How many factors of a [`ProductSpec`] to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factors {
    Finite(usize),
    Infinite,
}

/// Exact truncated product of the given factor families.
///
/// Infinite families stop at the first exponent past `order`, since every
/// later factor is `1` modulo `q^(order+1)`.
pub fn product(specs: &[(ProductSpec, Factors)], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for (spec, factors) in specs {
        let count = match factors {
            Factors::Finite(m) => *m,
            Factors::Infinite => usize::MAX,
        };
        let exponents = (0..count)
            .map(|j| spec.offset + j * spec.step)
            .take_while(|&e| e <= order);
        for e in exponents {
            acc.mul_binomial_factor(spec.sign, e);
        }
    }
    acc
}

/// `(q;q)_inf` truncated at `order`.
pub fn euler_product(order: usize) -> TruncatedSeries {
    let spec = ProductSpec::new(Sign::Minus, 1, 1).expect("valid spec");
    product(&[(spec, Factors::Infinite)], order)
}

/// `(q;q)_m`, a polynomial of degree `m(m+1)/2` (truncated at `order`).
pub fn q_pochhammer(m: usize, order: usize) -> TruncatedSeries {
    let spec = ProductSpec::new(Sign::Minus, 1, 1).expect("valid spec");
    product(&[(spec, Factors::Finite(m))], order)
}

/// Generalized pentagonal number `j(3j-1)/2` for any integer `j`.
pub fn pentagonal(j: i64) -> i64 {
    j * (3 * j - 1) / 2
}

/// Triangular number `j(j+1)/2`.
pub fn triangular(j: u64) -> u64 {
    j * (j + 1) / 2
}

/// `sum_{n=-(l-1)}^{l} (-1)^n q^{n(3n-1)/2}` for `bound = Some(l)`, or the
/// full bilateral sum (equal to `(q;q)_inf`) for `None`.
///
/// `Some(0)` gives the empty sum.
pub fn pentagonal_series(bound: Option<u32>, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let mut add_term = |j: i64| {
        let e = pentagonal(j) as usize;
        if e <= order {
            if j.rem_euclid(2) == 0 {
                s.coeffs[e] += 1;
            } else {
                s.coeffs[e] -= 1;
            }
        }
    };
    match bound {
        Some(l) => {
            let l = i64::from(l);
            for j in -(l - 1)..=l {
                add_term(j);
            }
        }
        None => {
            // both j and -j exponents grow monotonically in |j|
            for m in 0i64.. {
                if pentagonal(m) as usize > order && pentagonal(-m) as usize > order {
                    break;
                }
                add_term(m);
                if m > 0 {
                    add_term(-m);
                }
            }
        }
    }
    s
}

/// `sum_{m>=0} m q^{k m} = q^k/(1-q^k)^2`.
pub fn geometric_kernel(k: u32, order: usize) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::InvalidModulus(k));
    }
    let k = k as usize;
    let mut s = TruncatedSeries::zero(order);
    for (m, e) in (0..).zip((0..=order).step_by(k)) {
        s.coeffs[e] = BigInt::from(m);
    }
    Ok(s)
}

/// The Gaussian binomial `[n choose l]_q`, zero unless `0 <= l <= n`.
///
/// Built by the q-Pascal rule `[n,l] = [n-1,l-1] + q^l [n-1,l]` on full
/// polynomials, then truncated at `order`.
pub fn gaussian_binomial(n: i64, l: i64, order: usize) -> TruncatedSeries {
    if l < 0 || l > n {
        return TruncatedSeries::zero(order);
    }
    let poly = gaussian_binomial_poly(n as usize, l as usize);
    TruncatedSeries::from_coeffs(order, poly)
}

/// Full coefficient list of `[n choose l]_q`, degree `l(n-l)`.
pub fn gaussian_binomial_poly(n: usize, l: usize) -> Vec<BigInt> {
    assert!(l <= n);
    // row[j] holds [m choose j] for the current m
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let mut next = Vec::with_capacity((m + 1).min(l + 1));
        for j in 0..=m.min(l) {
            if j == 0 || j == m {
                next.push(vec![BigInt::one()]);
                continue;
            }
            let left = &row[j - 1];
            let right = &row[j];
            let degree = j * (m - j);
            let mut c = vec![BigInt::zero(); degree + 1];
            for (i, v) in left.iter().enumerate() {
                c[i] += v;
            }
            for (i, v) in right.iter().enumerate() {
                c[i + j] += v;
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(l)
}

/// `sum_{j=0}^{2l-1} (-q)^{j(j+1)/2}`.
pub fn theta_truncated(l: u32, order: usize) -> Result<TruncatedSeries> {
    if l == 0 {
        return Err(Error::InvalidEll(l));
    }
    let mut s = TruncatedSeries::zero(order);
    for j in 0..2 * u64::from(l) {
        let t = triangular(j);
        if t as usize > order {
            break;
        }
        if t.is_multiple_of(2) {
            s.coeffs[t as usize] += 1;
        } else {
            s.coeffs[t as usize] -= 1;
        }
    }
    Ok(s)
}
