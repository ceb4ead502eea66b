//! Exact scalar tower: arbitrary-precision rationals, Laurent polynomials in
//! the deformation parameter `q`, and reduced rational functions in `q`.
//!
//! Invariants maintained by construction:
//!
//! * [`LaurentPoly`] never stores a zero coefficient;
//! * [`RatFunc`] is always gcd-reduced, its denominator has lowest exponent 0
//!   and lowest coefficient 1, so equality is plain structural equality.
//!
//! Quantum integers use the convention
//! `[k] = 1 + q^-2 + ... + q^(-2(k-1))`, so `[0] = 0` and `[k]` evaluates to
//! `k` at `q = 1`.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`. Panics on `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational denominator must be nonzero");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// Division by the zero polynomial or zero rational function.
    DivisionByZero,
    /// Evaluation at `q = 1` hit a denominator vanishing there.
    PoleAtOne,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::PoleAtOne => write!(f, "pole at q = 1"),
        }
    }
}

impl core::error::Error for ScalarError {}

/// Laurent polynomial in `q` with rational coefficients, stored sparsely as
/// exponent -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, rat(1))
    }

    /// The monomial `c * q^e`; collapses to zero when `c == 0`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, rat(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, rat(1))
    }

    /// `q - q^-1`.
    pub fn q_minus_qinv() -> Self {
        Self::q_pow(1).sub(&Self::q_pow(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Lowest exponent present, `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent present, `None` for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = coeffs.entry(*e).or_insert_with(|| rat(0));
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let entry = coeffs.entry(e1 + e2).or_insert_with(|| rat(0));
                *entry += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate at `q = 1`; always defined for polynomials.
    pub fn eval_q1(&self) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Exact division: `Some(self / other)` when the remainder vanishes.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Shift both to ordinary polynomials, divide, shift back.
        let sa = self.min_exp().unwrap();
        let sb = other.min_exp().unwrap();
        let a = self.shift(-sa);
        let b = other.shift(-sb);
        let (quot, rem) = poly_divmod(&a, &b);
        if rem.is_zero() {
            Some(quot.shift(sa - sb))
        } else {
            None
        }
    }

    /// Monic gcd, normalized so its lowest exponent is 0 and lowest
    /// coefficient is 1. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_lowest(other);
        }
        if other.is_zero() {
            return normalize_lowest(self);
        }
        let mut a = self.shift(-self.min_exp().unwrap());
        let mut b = other.shift(-other.min_exp().unwrap());
        while !b.is_zero() {
            let (_, r) = poly_divmod(&a, &b);
            a = b;
            b = match r.min_exp() {
                Some(s) => r.shift(-s),
                None => r,
            };
        }
        normalize_lowest(&a)
    }
}

/// Rescale and shift so the lowest term is exactly `1 * q^0`.
fn normalize_lowest(p: &LaurentPoly) -> LaurentPoly {
    match p.min_exp() {
        None => LaurentPoly::zero(),
        Some(e) => {
            let low = p.coeff(e);
            let inv = rat(1) / low;
            p.shift(-e).scale(&inv)
        }
    }
}

/// Division with remainder for ordinary polynomials (min exponent >= 0).
fn poly_divmod(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    debug_assert!(!b.is_zero());
    let db = b.max_exp().unwrap();
    let lead_b = b.coeff(db);
    let mut rem = a.clone();
    let mut quot = LaurentPoly::zero();
    while !rem.is_zero() {
        let dr = rem.max_exp().unwrap();
        if dr < db {
            break;
        }
        let c = rem.coeff(dr) / lead_b.clone();
        let t = LaurentPoly::monomial(dr - db, c);
        quot = quot.add(&t);
        rem = rem.sub(&t.mul(b));
    }
    (quot, rem)
}

/// Quantum integer `[k] = 1 + q^-2 + ... + q^(-2(k-1))`; `[0] = 0`.
pub fn qint(k: u32) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for t in 0..k {
        p = p.add(&LaurentPoly::q_pow(-2 * t as i64));
    }
    p
}

/// Quantum factorial `[k]! = [k][k-1]...[1]`; `[0]! = 1`.
pub fn qfact(k: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for t in 1..=k {
        p = p.mul(&qint(t));
    }
    p
}

/// Reduced rational function in `q`.
///
/// Canonical form: numerator and denominator are coprime in `Q[q]` (after
/// clearing `q`-powers), the denominator has lowest exponent 0 and lowest
/// coefficient 1, and zero is `0/1`. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Build and canonicalize `num/den`. Errors when `den == 0`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() });
        }
        if den.is_one() {
            return Ok(RatFunc { num, den });
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        // Normalize: denominator lowest term becomes 1 * q^0.
        let s = d.min_exp().unwrap();
        let low = d.coeff(s);
        let inv = rat(1) / low;
        d = d.shift(-s).scale(&inv);
        n = n.shift(-s).scale(&inv);
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::from_rational(c))
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(e))
    }

    /// `(-q)^e = (-1)^e q^e`, for signed statistics exponents.
    pub fn neg_q_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::from_laurent(LaurentPoly::monomial(e, rat(sign)))
    }

    /// `(-q^-1)^e`.
    pub fn neg_qinv_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::from_laurent(LaurentPoly::monomial(-e, rat(sign)))
    }

    /// `q - q^-1`.
    pub fn q_minus_qinv() -> Self {
        Self::from_laurent(LaurentPoly::q_minus_qinv())
    }

    /// Quantum integer as a rational function.
    pub fn qint(k: u32) -> Self {
        Self::from_laurent(qint(k))
    }

    /// Quantum factorial as a rational function.
    pub fn qfact(k: u32) -> Self {
        Self::from_laurent(qfact(k))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is trivial (a Laurent polynomial value).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.add(&other.num), den: LaurentPoly::one() };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: LaurentPoly::one() };
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Integer power with negative exponents allowed (errors on `0^-n`).
    pub fn powi(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Evaluate at `q = 1`; errors when the reduced denominator vanishes there.
    pub fn eval_q1(&self) -> Result<Rational, ScalarError> {
        let d = self.den.eval_q1();
        if d.is_zero() {
            return Err(ScalarError::PoleAtOne);
        }
        Ok(self.num.eval_q1() / d)
    }
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

fn fmt_rational(c: &Rational) -> String {
    use alloc::format;
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// One Laurent term without a leading sign; magnitude of `c` must be positive.
fn fmt_term_abs(e: i64, c: &Rational) -> String {
    use alloc::format;
    debug_assert!(c.is_positive());
    if e == 0 {
        fmt_rational(c)
    } else if c.is_one() {
        if e == 1 {
            "q".to_owned()
        } else {
            format!("q^{}", e)
        }
    } else if e == 1 {
        format!("{}*q", fmt_rational(c))
    } else {
        format!("{}*q^{}", fmt_rational(c), e)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponent order, e.g. `3*q^4 + 1 - q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{}", fmt_term_abs(*e, &mag))?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, fmt_term_abs(*e, &mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Render a Laurent polynomial map as sorted `(exponent, coefficient)` pairs;
/// exposed for serialization layers.
pub fn laurent_entries(p: &LaurentPoly) -> Vec<(i64, Rational)> {
    p.iter().map(|(e, c)| (*e, c.clone())).collect()
}

/// Rebuild a Laurent polynomial from entries (zeros dropped, duplicates summed).
pub fn laurent_from_entries(entries: &[(i64, Rational)]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (e, c) in entries {
        p = p.add(&LaurentPoly::monomial(*e, c.clone()));
    }
    p
}

/// Rebuild a canonical rational function from numerator/denominator entries.
pub fn ratfunc_from_entries(
    num: &[(i64, Rational)],
    den: &[(i64, Rational)],
) -> Result<RatFunc, ScalarError> {
    RatFunc::new(laurent_from_entries(num), laurent_from_entries(den))
}
