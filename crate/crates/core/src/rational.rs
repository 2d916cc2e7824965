//! Exact rationals and the places of Q.
//!
//! [`BigRat`] is a thin newtype over `num_rational::BigRational` that fixes
//! the normal form (reduced, positive denominator, zero is `0/1`) and adds
//! the p-adic absolute values used by the height machinery.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor;

/// Exact arbitrary-precision rational number in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigRat(BigRational);

impl BigRat {
    /// Reduces `num/den` to its unique normal form.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        // BigRational::new reduces and moves the sign to the numerator.
        Ok(BigRat(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        BigRat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(BigRat(self.0.recip()))
    }

    pub fn pow(&self, e: i32) -> Self {
        BigRat(num_traits::Pow::pow(&self.0, e))
    }

    /// Nearest double; exact for small values, correctly scaled for huge ones.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        let sign = if self.numer().is_negative() { -1.0 } else { 1.0 };
        sign * (ln_abs(self.numer()) - ln_abs(self.denom())).exp()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for BigRat {
    fn from(r: BigRational) -> Self {
        BigRat(r)
    }
}

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_integer(n)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for BigRat {
    type Err = Error;

    /// Accepts `a`, `a/b` and plain decimals such as `-0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("not a rational number: {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            return BigRat::new(a, b);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_part = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                BigInt::from_str(int).map_err(|_| bad())?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
            let mag = int_part.abs() * &scale + frac_part;
            let num = if negative { -mag } else { mag };
            return BigRat::new(num, scale);
        }
        let n = BigInt::from_str(s).map_err(|_| bad())?;
        Ok(BigRat::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: BigRat) -> BigRat {
                BigRat($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a BigRat> for &'a BigRat {
            type Output = BigRat;
            fn $m(self, rhs: &'a BigRat) -> BigRat {
                BigRat($tr::$m(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for BigRat {
    type Output = BigRat;
    /// Panics on division by zero, like the underlying type.
    fn div(self, rhs: BigRat) -> BigRat {
        BigRat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn div(self, rhs: &'a BigRat) -> BigRat {
        BigRat(&self.0 / &rhs.0)
    }
}

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

/// A p-adic valuation, `None` standing for `+∞` (the valuation of zero).
pub type Valuation = Option<i64>;

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(x)`; `|x|_p = p^(-v_p(x))` and `v_p(0) = +∞`.
pub fn padic_valuation(x: &BigRat, p: u64) -> Result<Valuation> {
    if !factor::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Ok(None);
    }
    let vn = int_valuation(x.numer(), p).unwrap_or(0);
    let vd = int_valuation(x.denom(), p).unwrap_or(0);
    Ok(Some(vn - vd))
}

/// `|x|_p` as an exact rational.
pub fn padic_abs(x: &BigRat, p: u64) -> Result<BigRat> {
    match padic_valuation(x, p)? {
        None => Ok(BigRat::zero()),
        Some(v) => Ok(BigRat::from_integer(p).pow(-(v as i32))),
    }
}

/// Product of `|x|_v` over the Archimedean place and every prime dividing the
/// numerator or denominator, computed exactly. Equals one for every nonzero
/// rational; all other primes contribute a factor of exactly one.
pub fn place_product(x: &BigRat) -> Result<BigRat> {
    if x.is_zero() {
        return Err(Error::domain("product formula needs a nonzero rational"));
    }
    let mut primes = factor::factor_bigint(&x.numer().abs())?;
    primes.extend(factor::factor_bigint(x.denom())?);
    primes.sort();
    primes.dedup();
    let mut prod = x.abs();
    for p in primes {
        prod = &prod * &padic_abs(x, p)?;
    }
    Ok(prod)
}

/// Natural log of `|n|`, accurate for integers of any size.
pub fn ln_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}
