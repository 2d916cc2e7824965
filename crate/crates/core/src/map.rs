//! Rational maps of P¹ as homogeneous lifts, over Q (exact) and over C.
//!
//! A degree-`d` map is stored as two coefficient vectors of length `d + 1`;
//! entry `i` is the coefficient of `x^i y^(d-i)`. So `z ↦ z² + c` has
//! `P = [c, 0, 1]` and `Q = [1, 0, 0]`.
//!
//! Exact lifts are content-normalized: integer coefficients with gcd 1 and
//! otherwise untouched. Every local Green function and both height
//! algorithms use this lift, which makes the bad primes exactly the primes
//! dividing the resultant.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor;
use crate::poly::PolyQ;
use crate::rational::{ln_abs, BigRat};

/// Default exact-orbit budget: decimal digits per coordinate.
pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;

/// A point of P¹(Q) as a coprime integer pair, `y > 0` or `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPointQ {
    x: BigInt,
    y: BigInt,
}

impl ProjPointQ {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Result<Self> {
        let (mut x, mut y) = (x.into(), y.into());
        if x.is_zero() && y.is_zero() {
            return Err(Error::domain("[0:0] is not a point"));
        }
        let g = x.gcd(&y);
        x /= &g;
        y /= &g;
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        Ok(ProjPointQ { x, y })
    }

    pub fn infinity() -> Self {
        ProjPointQ {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn from_rat(r: &BigRat) -> Self {
        ProjPointQ {
            x: r.numer().clone(),
            y: r.denom().clone(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ProjPointQ::from_rat(&BigRat::from(n))
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate `x/y`, or `None` at infinity.
    pub fn to_rat(&self) -> Option<BigRat> {
        if self.is_infinity() {
            None
        } else {
            Some(BigRat::new(self.x.clone(), self.y.clone()).unwrap())
        }
    }

    /// Decimal digits of the larger coordinate (upper estimate).
    pub fn digits(&self) -> u64 {
        let bits = self.x.bits().max(self.y.bits());
        (bits as f64 * std::f64::consts::LOG10_2).ceil() as u64
    }

    /// Unit sup-norm complex representative together with `log‖(x, y)‖∞`.
    pub fn to_unit_complex(&self) -> (ProjPointC, f64) {
        let log_norm = ln_abs(&self.x).max(ln_abs(&self.y));
        let bits = self.x.bits().max(self.y.bits());
        let shift = bits.saturating_sub(60);
        let to = |n: &BigInt| -> f64 {
            let m: BigInt = if shift == 0 { n.clone() } else { n.abs() >> shift };
            let v = m.to_f64().unwrap();
            if n.is_negative() && shift > 0 {
                -v
            } else {
                v
            }
        };
        let pt = ProjPointC::new(Complex64::new(to(&self.x), 0.0), Complex64::new(to(&self.y), 0.0))
            .expect("nonzero pair");
        (pt, log_norm)
    }

    pub fn to_json(&self) -> [String; 2] {
        [self.x.to_string(), self.y.to_string()]
    }

    pub fn from_json(v: &[String; 2]) -> Result<Self> {
        let p = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::Config(format!("bad integer {s:?}")))
        };
        ProjPointQ::new(p(&v[0])?, p(&v[1])?)
    }
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.y.is_one() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{}/{}", self.x, self.y)
        }
    }
}

/// A point of P¹(C) with `max(|x|, |y|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPointC {
    pub x: Complex64,
    pub y: Complex64,
}

impl ProjPointC {
    pub fn new(x: Complex64, y: Complex64) -> Result<Self> {
        let n = x.norm().max(y.norm());
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("point must be a finite nonzero pair"));
        }
        Ok(ProjPointC { x: x / n, y: y / n })
    }

    pub fn from_complex(z: Complex64) -> Self {
        ProjPointC::new(z, Complex64::new(1.0, 0.0)).unwrap()
    }

    pub fn infinity() -> Self {
        ProjPointC {
            x: Complex64::new(1.0, 0.0),
            y: Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.norm() == 0.0
    }

    /// The affine coordinate `x/y`; infinite for `[1:0]`.
    pub fn to_complex(&self) -> Option<Complex64> {
        if self.is_infinity() {
            None
        } else {
            Some(self.x / self.y)
        }
    }

    /// Chordal distance on the Riemann sphere, in `[0, 1]`.
    pub fn chordal(&self, other: &ProjPointC) -> f64 {
        let cross = (self.x * other.y - self.y * other.x).norm();
        let n1 = (self.x.norm_sqr() + self.y.norm_sqr()).sqrt();
        let n2 = (other.x.norm_sqr() + other.y.norm_sqr()).sqrt();
        cross / (n1 * n2)
    }
}

fn content(coeffs: impl Iterator<Item = BigInt>) -> BigInt {
    coeffs.fold(BigInt::zero(), |g, c| g.gcd(&c))
}

/// `Σ c_i x^i y^(d-i)` for integers.
pub(crate) fn hom_eval_z(c: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let d = c.len() - 1;
    let mut ypow = Vec::with_capacity(d + 1);
    ypow.push(BigInt::one());
    for k in 1..=d {
        let next = &ypow[k - 1] * y;
        ypow.push(next);
    }
    let mut acc = c[d].clone();
    for i in (0..d).rev() {
        acc = acc * x + &c[i] * &ypow[d - i];
    }
    acc
}

/// `(F(x,y), ∂F/∂x, ∂F/∂y)` for a complex binary form.
pub(crate) fn hom_eval_c(c: &[Complex64], x: Complex64, y: Complex64) -> (Complex64, Complex64, Complex64) {
    let d = c.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    let (mut v, mut dx, mut dy) = (zero, zero, zero);
    // powers computed directly; degrees here are small
    let mut xp = vec![Complex64::new(1.0, 0.0); d + 1];
    let mut yp = vec![Complex64::new(1.0, 0.0); d + 1];
    for k in 1..=d {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
    }
    for (i, &ci) in c.iter().enumerate() {
        if ci == zero {
            continue;
        }
        let j = d - i;
        v += ci * xp[i] * yp[j];
        if i > 0 {
            dx += ci * (i as f64) * xp[i - 1] * yp[j];
        }
        if j > 0 {
            dy += ci * (j as f64) * xp[i] * yp[j - 1];
        }
    }
    (v, dx, dy)
}

/// Sylvester matrix of two binary forms of degree `d`, rows in descending
/// powers of `x`.
fn sylvester<T: Clone>(p: &[T], q: &[T], zero: T) -> Vec<Vec<T>> {
    let d = p.len() - 1;
    let n = 2 * d;
    let mut m = vec![vec![zero; n]; n];
    for r in 0..d {
        for k in 0..=d {
            m[r][r + k] = p[d - k].clone();
            m[r + d][r + k] = q[d - k].clone();
        }
    }
    m
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `M a = b` exactly over Q by Gaussian elimination.
fn solve_rational(mut m: Vec<Vec<BigRat>>, mut b: Vec<BigRat>) -> Option<Vec<BigRat>> {
    let n = m.len();
    for k in 0..n {
        let piv = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, piv);
        b.swap(k, piv);
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
            let t = &f * &b[k];
            b[i] = &b[i] - &t;
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// Complex Gaussian elimination with partial pivoting.
fn solve_complex(mut m: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = m.len();
    for k in 0..n {
        let piv = (k..n).max_by(|&r, &s| m[r][k].norm().total_cmp(&m[s][k].norm()))?;
        if m[piv][k].norm() == 0.0 {
            return None;
        }
        m.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let t = f * m[k][j];
                m[i][j] -= t;
            }
            let t = f * b[k];
            b[i] -= t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Some(x)
}

/// Linear system for `A P + B Q = e_target` where `A`, `B` have degree
/// `d - 1`; unknowns are the coefficients of A then B (ascending in x), and
/// equation `k` matches the coefficient of `x^k y^(2d-1-k)`.
fn cofactor_system<T: Clone + std::ops::Mul<Output = T> + std::ops::Add<Output = T>>(
    p: &[T],
    q: &[T],
    zero: T,
) -> Vec<Vec<T>> {
    let d = p.len() - 1;
    let n = 2 * d;
    let mut m = vec![vec![zero; n]; n];
    for a in 0..d {
        for i in 0..=d {
            m[a + i][a] = p[i].clone();
            m[a + i][d + a] = q[i].clone();
        }
    }
    m
}

/// Bezout cofactors of an exact lift.
#[derive(Clone, Debug)]
pub struct Cofactors {
    /// `A_y P + B_y Q = Res · y^(2d-1)`
    pub for_y: (Vec<BigInt>, Vec<BigInt>),
    /// `A_x P + B_x Q = Res · x^(2d-1)`
    pub for_x: (Vec<BigInt>, Vec<BigInt>),
}

/// A rational map over Q with its content-normalized integer lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapQ {
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    res: BigInt,
}

impl RationalMapQ {
    /// Builds a map from integer coefficient vectors (`x^i y^(d-i)` at index `i`).
    pub fn new(p: Vec<BigInt>, q: Vec<BigInt>) -> Result<Self> {
        if p.len() != q.len() || p.len() < 3 {
            return Err(Error::InvalidMap(
                "P and Q need the same length d + 1 with d >= 2".into(),
            ));
        }
        let g = content(p.iter().chain(q.iter()).cloned());
        if g.is_zero() {
            return Err(Error::InvalidMap("zero lift".into()));
        }
        let p: Vec<BigInt> = p.into_iter().map(|c| c / &g).collect();
        let q: Vec<BigInt> = q.into_iter().map(|c| c / &g).collect();
        RationalMapQ::new_unnormalized(p, q)
    }

    /// Keeps the given integer lift as is, without dividing out the
    /// content. Local Green functions depend on the lift; this exists for
    /// experiments on that dependence. Everything else should use [`new`].
    ///
    /// [`new`]: RationalMapQ::new
    pub fn new_unnormalized(p: Vec<BigInt>, q: Vec<BigInt>) -> Result<Self> {
        if p.len() != q.len() || p.len() < 3 {
            return Err(Error::InvalidMap(
                "P and Q need the same length d + 1 with d >= 2".into(),
            ));
        }
        let res = det_bareiss(sylvester(&p, &q, BigInt::zero()));
        if res.is_zero() {
            return Err(Error::InvalidMap("P and Q share a factor (resultant 0)".into()));
        }
        Ok(RationalMapQ { p, q, res })
    }

    pub fn from_i64(p: &[i64], q: &[i64]) -> Result<Self> {
        RationalMapQ::new(
            p.iter().map(|&c| BigInt::from(c)).collect(),
            q.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// Clears denominators, then content-normalizes.
    pub fn from_rationals(p: &[BigRat], q: &[BigRat]) -> Result<Self> {
        let l = p
            .iter()
            .chain(q.iter())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scale = |c: &BigRat| c.numer() * (&l / c.denom());
        RationalMapQ::new(p.iter().map(scale).collect(), q.iter().map(scale).collect())
    }

    /// `z ↦ z^d`.
    pub fn power(d: usize) -> Result<Self> {
        let mut p = vec![BigInt::zero(); d + 1];
        let mut q = vec![BigInt::zero(); d + 1];
        p[d] = BigInt::one();
        q[0] = BigInt::one();
        RationalMapQ::new(p, q)
    }

    /// `z ↦ z² + c`.
    pub fn quadratic(c: &BigRat) -> Result<Self> {
        let one = BigRat::one();
        let zero = BigRat::zero();
        RationalMapQ::from_rationals(
            &[c.clone(), zero.clone(), one.clone()],
            &[one, zero.clone(), zero],
        )
    }

    /// The polynomial map `z ↦ f(z)` with `deg f ≥ 2`.
    pub fn polynomial(f: &PolyQ) -> Result<Self> {
        let d = f.degree();
        let mut q = vec![BigRat::zero(); d + 1];
        q[0] = BigRat::one();
        RationalMapQ::from_rationals(f.coeffs(), &q)
    }

    /// The Lattès map `(z² + 1)² / (4z(z² − 1))`, whose Julia set is P¹.
    pub fn lattes() -> Self {
        RationalMapQ::from_i64(&[1, 0, 2, 0, 1], &[0, -4, 0, 4, 0]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self) -> &[BigInt] {
        &self.p
    }

    pub fn q(&self) -> &[BigInt] {
        &self.q
    }

    /// Homogeneous (Sylvester) resultant of the lift; never zero.
    pub fn resultant(&self) -> &BigInt {
        &self.res
    }

    /// Primes dividing the resultant, ascending.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        factor::factor_bigint(&self.res.abs())
    }

    /// True when the lift is a polynomial map: `Q = y^d` up to sign.
    pub fn is_polynomial(&self) -> bool {
        self.q[1..].iter().all(|c| c.is_zero()) && !self.p[self.degree()].is_zero()
    }

    /// Bezout cofactors with integer coefficients (the adjugate of the
    /// Sylvester system has determinant ±Res).
    pub fn cofactors(&self) -> Cofactors {
        let d = self.degree();
        let to_q = |v: &[BigInt]| v.iter().map(|c| BigRat::from_integer(c.clone())).collect::<Vec<_>>();
        let sys = cofactor_system(&to_q(&self.p), &to_q(&self.q), BigRat::zero());
        let solve = |k: usize| {
            let mut rhs = vec![BigRat::zero(); 2 * d];
            rhs[k] = BigRat::from_integer(self.res.clone());
            let sol = solve_rational(sys.clone(), rhs).expect("nonzero resultant");
            let ints: Vec<BigInt> = sol
                .iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.numer().clone()
                })
                .collect();
            (ints[..d].to_vec(), ints[d..].to_vec())
        };
        Cofactors {
            for_y: solve(0),
            for_x: solve(2 * d - 1),
        }
    }

    /// Exact image `f([x:y])`, reduced.
    pub fn apply(&self, pt: &ProjPointQ) -> ProjPointQ {
        let a = hom_eval_z(&self.p, &pt.x, &pt.y);
        let b = hom_eval_z(&self.q, &pt.x, &pt.y);
        self.reduce_image(a, b).0
    }

    /// Reduces an image pair. For coprime input the gcd of `(P(v), Q(v))`
    /// divides the resultant, so it is found modulo `Res` without a gcd of
    /// the (possibly huge) coordinates. Returns the point and the gcd.
    pub(crate) fn reduce_image(&self, a: BigInt, b: BigInt) -> (ProjPointQ, BigInt) {
        let r = self.res.abs();
        let g = r.gcd(&a.mod_floor(&r)).gcd(&b.mod_floor(&r));
        let (mut x, mut y) = if g.is_one() { (a, b) } else { (a / &g, b / &g) };
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        (ProjPointQ { x, y }, g)
    }

    /// `[x, f(x), …, fⁿ(x)]`, failing once a coordinate exceeds
    /// `digit_budget` decimal digits.
    pub fn iterate_orbit(&self, pt: &ProjPointQ, n: usize, digit_budget: u64) -> Result<Vec<ProjPointQ>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(pt.clone());
        let mut max_height: f64 = 0.0;
        for _ in 0..n {
            let next = self.apply(out.last().unwrap());
            max_height = max_height.max(crate::height::naive_height(&next));
            if next.digits() > digit_budget {
                return Err(Error::Resource(format!(
                    "orbit exceeded {digit_budget} digits (naive height reached {max_height:.6e})"
                )));
            }
            out.push(next);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            degree: self.degree(),
            p: self.p.iter().map(|c| c.to_string()).collect(),
            q: self.q.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(m: &MapJson) -> Result<Self> {
        let parse = |v: &[String]| -> Result<Vec<BigInt>> {
            v.iter()
                .map(|s| {
                    s.parse::<BigInt>()
                        .map_err(|_| Error::Config(format!("bad integer coefficient {s:?}")))
                })
                .collect()
        };
        if m.p.len() != m.degree + 1 || m.q.len() != m.degree + 1 {
            return Err(Error::Config(format!(
                "degree {} needs {} coefficients in P and Q",
                m.degree,
                m.degree + 1
            )));
        }
        RationalMapQ::new(parse(&m.p)?, parse(&m.q)?)
    }
}

/// Wire format for maps: `{"degree": d, "P": [...], "Q": [...]}` with
/// integer-string coefficients, `P[i]` multiplying `x^i y^(d-i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub degree: usize,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
}

/// A rational map with complex coefficients and the explicit constants
/// `c1 ≤ ‖F(v)‖ ≤ c2` on the unit sup-sphere.
#[derive(Clone, Debug)]
pub struct RationalMapC {
    p: Vec<Complex64>,
    q: Vec<Complex64>,
    c1: f64,
    c2: f64,
}

impl RationalMapC {
    /// Floating map from complex coefficients. `c1` comes from cofactors
    /// solved in double precision.
    pub fn new(p: Vec<Complex64>, q: Vec<Complex64>) -> Result<Self> {
        if p.len() != q.len() || p.len() < 3 {
            return Err(Error::InvalidMap(
                "P and Q need the same length d + 1 with d >= 2".into(),
            ));
        }
        let d = p.len() - 1;
        let zero = Complex64::new(0.0, 0.0);
        let sys = cofactor_system(&p, &q, zero);
        // Res up to sign via the Sylvester system; LU pivots give |det|.
        let scale = p.iter().chain(q.iter()).map(|c| c.norm()).fold(0.0, f64::max);
        let mut rhs = vec![zero; 2 * d];
        rhs[0] = Complex64::new(1.0, 0.0);
        let sol_y = solve_complex(sys.clone(), rhs.clone());
        rhs[0] = zero;
        rhs[2 * d - 1] = Complex64::new(1.0, 0.0);
        let sol_x = solve_complex(sys, rhs);
        let (Some(sy), Some(sx)) = (sol_y, sol_x) else {
            return Err(Error::InvalidMap("P and Q share a factor (singular Sylvester system)".into()));
        };
        // With Res normalized to 1: ‖F(v)‖ ≥ 1 / max cofactor sum.
        let sum = |v: &[Complex64]| v.iter().map(|c| c.norm()).sum::<f64>();
        let s = sum(&sy).max(sum(&sx));
        if !s.is_finite() || s * scale > 1e12 {
            return Err(Error::InvalidMap("lift is numerically degenerate".into()));
        }
        let c1 = 1.0 / s;
        let c2 = sum(&p).max(sum(&q));
        Ok(RationalMapC { p, q, c1, c2 })
    }

    pub fn from_q(f: &RationalMapQ) -> Self {
        let conv = |v: &[BigInt]| {
            v.iter()
                .map(|c| Complex64::new(BigRat::from_integer(c.clone()).to_f64(), 0.0))
                .collect::<Vec<_>>()
        };
        let p = conv(&f.p);
        let q = conv(&f.q);
        let cof = f.cofactors();
        let sum = |v: &[BigInt]| v.iter().map(|c| BigRat::from_integer(c.clone()).to_f64().abs()).sum::<f64>();
        let s = (sum(&cof.for_y.0) + sum(&cof.for_y.1)).max(sum(&cof.for_x.0) + sum(&cof.for_x.1));
        let res = BigRat::from_integer(f.res.abs()).to_f64();
        let c1 = res / s;
        let c2 = p.iter().map(|c| c.norm()).sum::<f64>().max(q.iter().map(|c| c.norm()).sum::<f64>());
        RationalMapC { p, q, c1, c2 }
    }

    /// `z ↦ f(z)` for a complex polynomial of degree ≥ 2.
    pub fn polynomial(coeffs: &[Complex64]) -> Result<Self> {
        let d = coeffs.len() - 1;
        let mut q = vec![Complex64::new(0.0, 0.0); d + 1];
        q[0] = Complex64::new(1.0, 0.0);
        RationalMapC::new(coeffs.to_vec(), q)
    }

    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self) -> &[Complex64] {
        &self.p
    }

    pub fn q(&self) -> &[Complex64] {
        &self.q
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// The lift `F(x, y)` without normalization.
    pub fn lift(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (hom_eval_c(&self.p, x, y).0, hom_eval_c(&self.q, x, y).0)
    }

    /// Lift value and its Jacobian `[[Px, Py], [Qx, Qy]]`.
    pub fn lift_with_jacobian(&self, x: Complex64, y: Complex64) -> ((Complex64, Complex64), [[Complex64; 2]; 2]) {
        let (pv, px, py) = hom_eval_c(&self.p, x, y);
        let (qv, qx, qy) = hom_eval_c(&self.q, x, y);
        ((pv, qv), [[px, py], [qx, qy]])
    }

    pub fn apply(&self, pt: &ProjPointC) -> ProjPointC {
        let (a, b) = self.lift(pt.x, pt.y);
        ProjPointC::new(a, b).expect("lift of a nonzero point is nonzero")
    }

    /// `f` and `f'` in the affine chart, for finite `z` with finite image.
    pub fn eval_affine(&self, z: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let (pv, px, _) = hom_eval_c(&self.p, z, one);
        let (qv, qx, _) = hom_eval_c(&self.q, z, one);
        (pv / qv, (px * qv - pv * qx) / (qv * qv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> ProjPointQ {
        ProjPointQ::new(x, y).unwrap()
    }

    #[test]
    fn point_normalization() {
        assert_eq!(pt(-6, -4), pt(3, 2));
        assert_eq!(pt(7, 7), pt(1, 1));
        assert_eq!(pt(-5, 0), ProjPointQ::infinity());
        assert!(ProjPointQ::new(0, 0).is_err());
        assert_eq!(pt(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn apply_examples() {
        let sq = RationalMapQ::power(2).unwrap();
        assert_eq!(sq.apply(&pt(3, 2)), pt(9, 4));
        let f = RationalMapQ::quadratic(&BigRat::from(-1)).unwrap();
        assert_eq!(f.apply(&pt(0, 1)), pt(-1, 1));
        // Lattès at z = 2: (4+1)^2 / (4*2*(4-1)) = 25/24
        assert_eq!(RationalMapQ::lattes().apply(&pt(2, 1)), pt(25, 24));
        assert_eq!(sq.apply(&ProjPointQ::infinity()), ProjPointQ::infinity());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(RationalMapQ::power(2).unwrap().resultant(), &BigInt::from(1));
        for c in -3..=3 {
            let f = RationalMapQ::quadratic(&BigRat::from(c)).unwrap();
            assert_eq!(f.resultant().abs(), BigInt::from(1));
        }
        // xy / (x² + p y²): Res(x, Q) Res(y, Q) = Q(0,1) Q(1,0) = ±p
        for p in [2i64, 3, 5, 7, 101] {
            let f = RationalMapQ::from_i64(&[0, 1, 0], &[p, 0, 1]).unwrap();
            assert_eq!(f.resultant().abs(), BigInt::from(p));
            assert_eq!(f.bad_primes().unwrap(), vec![p as u64]);
        }
        // the (x² - xy, p y²) form has Res = p²
        let f = RationalMapQ::from_i64(&[0, -1, 1], &[7, 0, 0]).unwrap();
        assert_eq!(f.resultant().abs(), BigInt::from(49));
        assert!(RationalMapQ::from_i64(&[0, 1, 1], &[0, 1, 0]).is_err());
    }

    #[test]
    fn bad_primes_examples() {
        let f = RationalMapQ::quadratic(&BigRat::from(-1)).unwrap();
        assert!(f.bad_primes().unwrap().is_empty());
        assert!(RationalMapQ::power(2).unwrap().bad_primes().unwrap().is_empty());
        let g = RationalMapQ::from_i64(&[0, 1, 0], &[12, 0, 1]).unwrap();
        assert_eq!(g.resultant().abs(), BigInt::from(12));
        assert_eq!(g.bad_primes().unwrap(), vec![2, 3]);
        // content normalization: (4x², 4y²) is z²
        let h = RationalMapQ::from_i64(&[0, 0, 4], &[4, 0, 0]).unwrap();
        assert_eq!(h, RationalMapQ::power(2).unwrap());
    }

    #[test]
    fn cofactor_identities_hold() {
        for f in [
            RationalMapQ::lattes(),
            RationalMapQ::quadratic(&BigRat::new(3, 7).unwrap()).unwrap(),
            RationalMapQ::from_i64(&[1, -2, 0, 3], &[0, 5, 1, -1]).unwrap(),
        ] {
            let d = f.degree();
            let cof = f.cofactors();
            let xs = [(2i64, 1i64), (-3, 5), (1, 0), (0, 1), (7, -4)];
            for (x, y) in xs {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                let pv = hom_eval_z(f.p(), &x, &y);
                let qv = hom_eval_z(f.q(), &x, &y);
                let lhs_y = hom_eval_z(&cof.for_y.0, &x, &y) * &pv + hom_eval_z(&cof.for_y.1, &x, &y) * &qv;
                assert_eq!(lhs_y, f.resultant() * y.pow(2 * d as u32 - 1));
                let lhs_x = hom_eval_z(&cof.for_x.0, &x, &y) * &pv + hom_eval_z(&cof.for_x.1, &x, &y) * &qv;
                assert_eq!(lhs_x, f.resultant() * x.pow(2 * d as u32 - 1));
            }
        }
    }

    #[test]
    fn lift_bounds_hold_on_the_unit_sphere() {
        let maps = [
            RationalMapC::from_q(&RationalMapQ::lattes()),
            RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::from(-2)).unwrap()),
            RationalMapC::new(
                vec![Complex64::new(0.3, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 2.0)],
                vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.5), Complex64::new(0.1, 0.0)],
            )
            .unwrap(),
        ];
        for f in &maps {
            assert!(f.c1() > 0.0 && f.c1() <= f.c2());
            for k in 0..2000 {
                let t = k as f64 * 0.0137;
                let r = (k % 17) as f64 / 16.0;
                let (x, y) = if k % 2 == 0 {
                    (Complex64::from_polar(1.0, t), Complex64::from_polar(r, 3.0 * t))
                } else {
                    (Complex64::from_polar(r, t), Complex64::from_polar(1.0, 2.0 * t))
                };
                let (a, b) = f.lift(x, y);
                let n = a.norm().max(b.norm());
                assert!(n >= f.c1() * (1.0 - 1e-12) && n <= f.c2() * (1.0 + 1e-12));
            }
        }
        let pw = RationalMapC::from_q(&RationalMapQ::power(3).unwrap());
        assert_eq!((pw.c1(), pw.c2()), (1.0, 1.0));
    }

    #[test]
    fn orbit_examples_and_budget() {
        let f = RationalMapQ::quadratic(&BigRat::from(1)).unwrap();
        let orb = f.iterate_orbit(&pt(0, 1), 5, DEFAULT_DIGIT_BUDGET).unwrap();
        let got: Vec<String> = orb.iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["0", "1", "2", "5", "26", "677"]);
        let g = RationalMapQ::quadratic(&BigRat::from(-2)).unwrap();
        let orb = g.iterate_orbit(&pt(0, 1), 4, DEFAULT_DIGIT_BUDGET).unwrap();
        let got: Vec<String> = orb.iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["0", "-2", "2", "2", "2"]);
        let h = RationalMapQ::quadratic(&BigRat::from(-1)).unwrap();
        let orb = h.iterate_orbit(&pt(0, 1), 4, DEFAULT_DIGIT_BUDGET).unwrap();
        let got: Vec<String> = orb.iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["0", "-1", "0", "-1", "0"]);
        assert!(matches!(f.iterate_orbit(&pt(0, 1), 40, 50), Err(Error::Resource(_))));
    }

    #[test]
    fn json_round_trip_and_rejects_unknown_fields() {
        let f = RationalMapQ::lattes();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(s, r#"{"degree":4,"P":["1","0","2","0","1"],"Q":["0","-4","0","4","0"]}"#);
        let back: MapJson = serde_json::from_str(&s).unwrap();
        assert_eq!(RationalMapQ::from_json(&back).unwrap(), f);
        assert!(serde_json::from_str::<MapJson>(r#"{"degree":2,"P":[],"Q":[],"x":1}"#).is_err());
        let p = pt(-3, 8);
        assert_eq!(ProjPointQ::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn unit_complex_of_huge_points() {
        let big = BigInt::from(10u32).pow(400);
        let p = ProjPointQ::new(big.clone() * 3, big * -2 + 1).unwrap();
        let (u, log_n) = p.to_unit_complex();
        assert!((log_n - (400.0 * 10f64.ln() + 3f64.ln())).abs() < 1e-9);
        assert!(u.x.norm().max(u.y.norm()) == 1.0);
        assert!(((u.x / u.y).re + 1.5).abs() < 1e-12);
    }
}
