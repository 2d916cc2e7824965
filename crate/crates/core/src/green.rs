//! Dynamical Green functions at the Archimedean place and at primes.
//!
//! Homogeneous Green functions `G_F(v) = lim d^-n log‖Fⁿ(v)‖` are computed by
//! telescoping, renormalizing the vector after every step so nothing
//! overflows. Polynomial Green functions `G_f(z) = lim d^-n log⁺|fⁿ(z)|` use
//! an escape radius, after which the remaining tail is bounded in closed
//! form.
//!
//! Certified errors account for truncation of the limit only, not for
//! floating-point rounding.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor;
use crate::map::{hom_eval_z, ProjPointC, ProjPointQ, RationalMapC, RationalMapQ};
use crate::poly::PolyC;
use crate::rational::{int_valuation, BigRat};

/// Iteration cap for the Archimedean telescoping sum.
pub const ARCH_MAX_DEPTH: usize = 2000;
/// Default iteration cap for polynomial Green functions.
pub const POLY_MAX_DEPTH: usize = 500;
/// Default depth for p-adic Green functions.
pub const PADIC_DEPTH: usize = 64;
/// Past this modulus the escape tail is negligible and further squaring
/// would overflow.
const HUGE: f64 = 1e75;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A Green-function value with a certified truncation error.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenValue {
    pub value: f64,
    pub error: f64,
    pub depth: usize,
    pub place: Place,
    /// At a prime `p` the value is exactly `log_coeff · log p`.
    pub log_coeff: Option<BigRat>,
}

impl GreenValue {
    pub(crate) fn arch(value: f64, error: f64, depth: usize) -> Self {
        GreenValue {
            value,
            error,
            depth,
            place: Place::Infinite,
            log_coeff: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "value": self.value,
            "error": self.error,
            "depth": self.depth,
            "place": self.place.to_string(),
        });
        if let Some(c) = &self.log_coeff {
            v["log_p_coefficient"] = json!(c.to_string());
        }
        v
    }
}

/// `G_F` at a unit point.
pub fn green_arch(f: &RationalMapC, pt: &ProjPointC, tol: f64) -> Result<GreenValue> {
    green_arch_vector(f, pt.x, pt.y, 0.0, tol)
}

/// `G_F` at the vector `e^log_scale · (x, y)`; `(x, y)` need not be
/// normalized. The extra scale lets huge integer points be passed as a unit
/// vector plus the log of their norm.
pub fn green_arch_vector(
    f: &RationalMapC,
    x: Complex64,
    y: Complex64,
    log_scale: f64,
    tol: f64,
) -> Result<GreenValue> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let n0 = x.norm().max(y.norm());
    if n0 == 0.0 || !n0.is_finite() {
        return Err(Error::domain("Green function needs a finite nonzero vector"));
    }
    let d = f.degree() as f64;
    let c = f.c1().ln().abs().max(f.c2().ln().abs());
    let (mut x, mut y) = (x / n0, y / n0);
    let mut g = log_scale + n0.ln();
    let mut weight = 1.0;
    let mut error = f64::INFINITY;
    for n in 1..=ARCH_MAX_DEPTH {
        let (a, b) = f.lift(x, y);
        let norm = a.norm().max(b.norm());
        weight /= d;
        g += weight * norm.ln();
        x = a / norm;
        y = b / norm;
        error = c * weight / (d - 1.0);
        if error <= tol {
            return Ok(GreenValue::arch(g, error, n));
        }
    }
    Err(Error::numeric("Archimedean Green function hit the depth cap", g, error))
}

/// Escape radius: the sharp `√|c| + 3` for `z² + c`, otherwise `1 + Σ|a_k|`.
pub(crate) fn escape_radius(f: &PolyC) -> f64 {
    let a = f.coeffs();
    if f.degree() == 2 && a[1].norm() == 0.0 {
        a[0].norm().sqrt() + 3.0
    } else {
        1.0 + a[..f.degree()].iter().map(|c| c.norm()).sum::<f64>()
    }
}

/// `ε(w) = Σ_{k<d} |a_k| |w|^(k-d)`, so `|f(w)| = |w|^d (1 + δ)` with `|δ| ≤ ε`.
fn tail_ratio(f: &PolyC, r: f64) -> f64 {
    let d = f.degree();
    f.coeffs()[..d]
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * r.powi(k as i32 - d as i32))
        .sum()
}

/// Result of a polynomial Green evaluation with the escape-time data needed
/// by distance estimators.
#[derive(Clone, Debug)]
pub struct PolyGreen {
    pub green: GreenValue,
    /// `|∇G|` with respect to the tracked variable, when the orbit escaped.
    pub gradient: Option<f64>,
    /// Number of steps before the orbit left the escape disk.
    pub escape_time: Option<usize>,
}

impl PolyGreen {
    /// Distance estimate `G / |∇G|`, when available.
    pub fn distance_estimate(&self) -> Option<f64> {
        match self.gradient {
            Some(g) if g > 0.0 && self.green.value > 0.0 => Some(self.green.value / g),
            _ => None,
        }
    }
}

/// Shared escape loop. `dz` tracks the derivative of the orbit with respect
/// to the starting point, or to the parameter `c` when `param_derivative`
/// is set (the orbit then satisfies `z' ↦ f'(z) z' + 1`).
pub(crate) fn poly_green_core(
    f: &PolyC,
    z0: Complex64,
    param_derivative: bool,
    tol: f64,
    max_depth: usize,
) -> Result<PolyGreen> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let d = f.degree();
    if d < 2 || !f.is_monic() {
        return Err(Error::domain("green_poly needs a monic polynomial of degree >= 2"));
    }
    let df = d as f64;
    let radius = escape_radius(f);
    let one = Complex64::new(1.0, 0.0);
    let mut z = z0;
    let mut dz = one;
    let mut weight = 1.0;
    let mut escape_time = None;
    let mut n = 0;
    loop {
        let r = z.norm();
        if escape_time.is_none() && r > radius {
            escape_time = Some(n);
        }
        if escape_time.is_some() {
            let eps = tail_ratio(f, r);
            let value = weight * r.ln();
            let error = weight * (-(1.0 - eps).ln()) / (df - 1.0);
            let gradient = weight * dz.norm() / r;
            let done = error <= tol;
            if done || r > HUGE || n >= max_depth {
                let green = GreenValue::arch(value, error, n);
                if done {
                    return Ok(PolyGreen {
                        green,
                        gradient: gradient.is_finite().then_some(gradient),
                        escape_time,
                    });
                }
                if r > HUGE {
                    return Err(Error::numeric("escape tail too large for tolerance", value, error));
                }
                return Err(Error::Undecided {
                    lo: (value - error).max(0.0),
                    hi: value + error,
                    depth: n,
                });
            }
        } else if n >= max_depth {
            // Bounded through the cap: 0 ≤ G(z) = d^-n G(fⁿ z) ≤ d^-n sup_{|w|≤R} G.
            let sup = radius.ln() + (-(1.0 - tail_ratio(f, radius)).ln()) / (df - 1.0);
            let error = weight * sup;
            if error <= tol {
                return Ok(PolyGreen {
                    green: GreenValue::arch(0.0, error, n),
                    gradient: None,
                    escape_time: None,
                });
            }
            return Err(Error::Undecided {
                lo: 0.0,
                hi: error,
                depth: n,
            });
        }
        let (fz, dfz) = f.eval_with_derivative(z);
        dz = dfz * dz + if param_derivative { one } else { Complex64::new(0.0, 0.0) };
        z = fz;
        weight /= df;
        n += 1;
    }
}

/// `G_f(z)` for a monic polynomial, depth cap [`POLY_MAX_DEPTH`].
pub fn green_poly(f: &PolyC, z: Complex64, tol: f64) -> Result<GreenValue> {
    green_poly_depth(f, z, tol, POLY_MAX_DEPTH)
}

pub fn green_poly_depth(f: &PolyC, z: Complex64, tol: f64, max_depth: usize) -> Result<GreenValue> {
    poly_green_core(f, z, false, tol, max_depth).map(|r| r.green)
}

/// `G_f` for any polynomial of degree ≥ 2. With `β^(d-1) = a_d` the
/// polynomial `g(w) = β f(w/β)` is monic and `G_f(z) = G_g(βz)`.
pub fn green_poly_general(f: &PolyC, z: Complex64, tol: f64, max_depth: usize) -> Result<GreenValue> {
    let (g, beta) = monic_conjugate(f)?;
    green_poly_depth(&g, beta * z, tol, max_depth)
}

/// The monic conjugate `β f(w/β)` and the scale `β`.
pub fn monic_conjugate(f: &PolyC) -> Result<(PolyC, Complex64)> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::domain("polynomial Green function needs degree >= 2"));
    }
    let lead = f.leading();
    let beta = lead.powf(1.0 / (d as f64 - 1.0));
    // coefficient of w^k in β f(w/β) is a_k β^(1-k)
    let coeffs: Vec<Complex64> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &a)| a * beta.powi(1 - k as i32))
        .collect();
    let mut g = coeffs;
    g[d] = Complex64::new(1.0, 0.0);
    Ok((PolyC::new(g), beta))
}

fn reduce_mod(v: &BigInt, m: &BigInt) -> BigInt {
    v.mod_floor(m)
}

/// `G_{F,p}` at a coprime integer point, as an exact multiple of `log p`.
///
/// The orbit is followed in `Z/p^M` with `M` large enough that each step's
/// valuation is determined: the valuation of `F(v)` at a p-adic unit vector
/// is at most `v_p(Res)`, so at most that much precision is lost per step.
/// With `e_k` the valuation extracted at step `k`,
/// `G = -Σ_{k<n} e_k d^-(k+1) log p`, and the tail is at most
/// `v_p(Res) log p d^-n / (d-1)`. Good primes give exactly 0 at depth 1.
pub fn green_padic(f: &RationalMapQ, p: u64, x: &ProjPointQ, depth: usize) -> Result<GreenValue> {
    if !factor::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let depth = depth.max(1);
    let vres = int_valuation(f.resultant(), p).unwrap_or(0) as usize;
    let d = f.degree();
    let pb = BigInt::from(p);
    let prec = ((depth + 1) * vres + 2) as u32;
    let modulus = pb.pow(prec);
    let (mut a, mut b) = (reduce_mod(x.x(), &modulus), reduce_mod(x.y(), &modulus));
    let mut coeff = BigRat::zero();
    let mut dpow = BigInt::one();
    let mut cur_prec = prec as usize;
    let mut steps = 0;
    let escape = if f.is_polynomial() && vres > 0 { PadicEscape::new(f, p) } else { None };
    let mut exact = vres == 0;
    for _ in 0..depth {
        if let Some(esc) = &escape {
            if esc.holds(&a, &b, p, cur_prec) {
                // every later step extracts exactly v_p(p_d)
                let tail = BigRat::new(BigInt::from(esc.lead_val), &dpow * (d - 1)).unwrap();
                coeff = coeff - tail;
                exact = true;
                break;
            }
        }
        let pa = reduce_mod(&hom_eval_z(f.p(), &a, &b), &modulus);
        let qb = reduce_mod(&hom_eval_z(f.q(), &a, &b), &modulus);
        let val = |n: &BigInt| -> usize {
            if n.is_zero() {
                cur_prec
            } else {
                (int_valuation(n, p).unwrap() as usize).min(cur_prec)
            }
        };
        let e = val(&pa).min(val(&qb));
        debug_assert!(e <= vres, "valuation exceeds v_p(Res)");
        dpow *= d;
        steps += 1;
        if e > 0 {
            coeff = coeff - BigRat::new(BigInt::from(e), dpow.clone()).unwrap();
        }
        let shift = pb.pow(e as u32);
        a = reduce_mod(&(pa / &shift), &modulus);
        b = reduce_mod(&(qb / &shift), &modulus);
        cur_prec -= e;
        if vres == 0 {
            break;
        }
    }
    let logp = (p as f64).ln();
    let error = if exact {
        0.0
    } else {
        vres as f64 * logp / ((d as f64 - 1.0) * BigRat::from_integer(dpow.clone()).to_f64())
    };
    Ok(GreenValue {
        value: coeff.to_f64() * logp,
        error,
        depth: steps,
        place: Place::Prime(p),
        log_coeff: Some(coeff),
    })
}

/// Valuation data deciding when a p-adic orbit of a polynomial map has
/// escaped for good.
///
/// At a unit vector `(a, b)` with `a` a unit, `z = a/b` satisfies
/// `|f(z)| = |a_d||z|^d > |z|` as soon as the leading term strictly dominates
/// and `|z| > |a_d|^(-1/(d-1))`; the same then holds along the whole forward
/// orbit, and each step extracts exactly `v_p(p_d)`.
struct PadicEscape {
    d: i64,
    lead_val: i64,
    /// `(d − k, v(p_d) − v(p_k))` for nonzero lower coefficients.
    dominance: Vec<(i64, i64)>,
    /// `v(p_d) − v(q_0)`, compared against `(d − 1) v(b)`.
    growth: i64,
}

impl PadicEscape {
    fn new(f: &RationalMapQ, p: u64) -> Option<Self> {
        let d = f.degree();
        let lead_val = int_valuation(&f.p()[d], p)?;
        let dominance = (0..d)
            .filter_map(|k| int_valuation(&f.p()[k], p).map(|v| ((d - k) as i64, lead_val - v)))
            .collect();
        let growth = lead_val - int_valuation(&f.q()[0], p)?;
        Some(PadicEscape {
            d: d as i64,
            lead_val,
            dominance,
            growth,
        })
    }

    /// `b` is known modulo `p^prec`; a zero residue means `v(b) ≥ prec`,
    /// which only strengthens the inequalities.
    fn holds(&self, a: &BigInt, b: &BigInt, p: u64, prec: usize) -> bool {
        if prec == 0 || int_valuation(a, p).is_none_or(|v| v != 0) {
            return false;
        }
        let vb = int_valuation(b, p).map_or(prec as i64, |v| v.min(prec as i64));
        if vb == 0 {
            return false;
        }
        self.dominance.iter().all(|&(m, gap)| vb * m > gap) && vb * (self.d - 1) > self.growth
    }
}

/// `lim d^-n log⁺|fⁿ(z)|_p` for a polynomial map `f` and rational `z`.
///
/// With the normalized lift `F = (P, q₀ y^d)` and `z = a/b` in lowest terms,
/// `G_f(z) = G_{F,p}(a, b) + v_p(b) log p + v_p(q₀) log p / (d - 1)`, which
/// keeps the value an exact multiple of `log p`.
pub fn green_padic_affine(f: &RationalMapQ, p: u64, z: &BigRat, depth: usize) -> Result<GreenValue> {
    if !f.is_polynomial() {
        return Err(Error::domain("affine p-adic Green function needs a polynomial map"));
    }
    let pt = ProjPointQ::from_rat(z);
    let mut g = green_padic(f, p, &pt, depth)?;
    let q0 = f.q()[0].abs();
    let vb = int_valuation(z.denom(), p).unwrap_or(0);
    let vq = int_valuation(&q0, p).unwrap_or(0);
    let d = f.degree() as i64;
    let shift = BigRat::from(vb) + BigRat::new(vq, d - 1).unwrap();
    let coeff = g.log_coeff.take().unwrap() + shift;
    let logp = (p as f64).ln();
    g.value = coeff.to_f64() * logp;
    g.log_coeff = Some(coeff);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyQ;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cheb() -> PolyC {
        PolyC::from_real(&[-2.0, 0.0, 1.0])
    }

    #[test]
    fn power_map_is_exact_at_depth_one() {
        for d in [2, 3, 5] {
            let f = RationalMapC::from_q(&RationalMapQ::power(d).unwrap());
            let g = green_arch(&f, &ProjPointC::new(c(0.3, -0.7), c(1.0, 0.0)).unwrap(), 1e-12).unwrap();
            assert_eq!((g.value, g.error, g.depth), (0.0, 0.0, 1));
        }
    }

    #[test]
    fn chebyshev_closed_form() {
        // z = w + 1/w with |w| > 1 gives G(z) = log|w|
        let z = 3.0f64;
        let w = (z + (z * z - 4.0).sqrt()) / 2.0;
        let expected = w.ln();
        assert!((expected - 0.962_423_650_119_206_9).abs() < 1e-15);
        let g = green_poly(&cheb(), c(3.0, 0.0), 1e-12).unwrap();
        assert!((g.value - expected).abs() < 1e-10, "{}", g.value);
        let f = RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::from(-2)).unwrap());
        let h = green_arch_vector(&f, c(3.0, 0.0), c(1.0, 0.0), 0.0, 1e-12).unwrap();
        // G_F(z, 1) = G_f(z) for a monic lift with Q = y^d
        assert!((h.value - expected).abs() < 1e-10 + h.error);
        // the unit representative (1, 1/3) sits log 3 lower
        let u = green_arch(&f, &ProjPointC::from_complex(c(3.0, 0.0)), 1e-12).unwrap();
        assert!((u.value + 3f64.ln() - expected).abs() < 1e-10 + u.error);
        // off the real axis, compare to the conjugacy oracle too
        let z = c(0.4, 1.3);
        let s = (z * z - 4.0).sqrt();
        let w = [(z + s) / 2.0, (z - s) / 2.0].into_iter().map(|w| w.norm()).fold(0.0, f64::max);
        let g = green_poly(&cheb(), z, 1e-12).unwrap();
        assert!((g.value - w.ln()).abs() < 1e-10);
    }

    #[test]
    fn poly_examples() {
        let sq = PolyC::from_real(&[0.0, 0.0, 1.0]);
        let g = green_poly(&sq, c(5.0, 0.0), 1e-12).unwrap();
        assert!((g.value - 5f64.ln()).abs() < 1e-14 && g.error == 0.0);
        let g = green_poly(&cheb(), c(1.0, 0.0), 1e-9).unwrap();
        assert_eq!(g.value, 0.0);
        let f = PolyC::from_real(&[0.7, -1.0, 0.5, 1.0]);
        let z = c(1e6, 0.0);
        let g = green_poly(&f, z, 1e-9).unwrap();
        assert!((g.value - 1e6f64.ln()).abs() < 1e-5);
        assert!(green_poly(&PolyC::from_real(&[1.0, 0.0, 2.0]), z, 1e-9).is_err());
    }

    #[test]
    fn undecided_near_the_boundary() {
        // z² + 2 from 0: 0, 2, 6, ... leaves the disk of radius √2 + 3 at
        // step 2, where the tail bound is still about 0.014
        let f = PolyC::from_real(&[2.0, 0.0, 1.0]);
        match green_poly_depth(&f, c(0.0, 0.0), 1e-6, 2) {
            Err(Error::Undecided { lo, hi, depth }) => {
                assert_eq!(depth, 2);
                let exact = green_poly(&f, c(0.0, 0.0), 1e-12).unwrap().value;
                assert!(lo <= exact && exact <= hi, "{lo} {exact} {hi}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn general_polynomial_via_monic_conjugate() {
        // f(z) = 2z²: G_f(z) = log|z| + log 2
        let f = PolyC::from_real(&[0.0, 0.0, 2.0]);
        let g = green_poly_general(&f, c(3.0, 0.0), 1e-12, 500).unwrap();
        assert!((g.value - (3f64.ln() + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn homogeneity() {
        let f = RationalMapC::from_q(&RationalMapQ::lattes());
        let (x, y) = (c(0.4, 0.2), c(1.0, -0.3));
        let lam = c(-2.5, 1.5);
        let g1 = green_arch_vector(&f, x, y, 0.0, 1e-12).unwrap();
        let g2 = green_arch_vector(&f, lam * x, lam * y, 0.0, 1e-12).unwrap();
        assert!((g2.value - g1.value - lam.norm().ln()).abs() < 1e-11);
    }

    #[test]
    fn padic_good_reduction_is_zero() {
        let f = RationalMapQ::quadratic(&BigRat::from(-1)).unwrap();
        for p in [2, 3, 5, 7, 97] {
            for (a, b) in [(0, 1), (3, 7), (-5, 2), (1, 0)] {
                let g = green_padic(&f, p, &ProjPointQ::new(a, b).unwrap(), 64).unwrap();
                assert_eq!(g.log_coeff, Some(BigRat::zero()));
                assert_eq!((g.value, g.error, g.depth), (0.0, 0.0, 1));
            }
        }
        assert!(green_padic(&f, 4, &ProjPointQ::infinity(), 4).is_err());
    }

    /// Brute-force oracle: exact integer orbit of the unreduced lift, reading
    /// off `v_p` of each coordinate pair.
    fn padic_oracle(f: &RationalMapQ, p: u64, x: &ProjPointQ, n: usize) -> BigRat {
        let (mut a, mut b) = (x.x().clone(), x.y().clone());
        let mut total = 0i64;
        for _ in 0..n {
            let (na, nb) = (hom_eval_z(f.p(), &a, &b), hom_eval_z(f.q(), &a, &b));
            a = na;
            b = nb;
        }
        let va = int_valuation(&a, p).unwrap_or(i64::MAX);
        let vb = int_valuation(&b, p).unwrap_or(i64::MAX);
        total += va.min(vb);
        BigRat::new(-total, BigInt::from(f.degree()).pow(n as u32)).unwrap()
    }

    #[test]
    fn padic_matches_exact_orbit() {
        let f = RationalMapQ::from_i64(&[0, 1, 0], &[12, 0, 1]).unwrap();
        let g = RationalMapQ::quadratic(&BigRat::new(1, 4).unwrap()).unwrap();
        for (a, b) in [(1, 1), (2, 3), (5, 4), (0, 1), (1, 0), (7, 6)] {
            let x = ProjPointQ::new(a, b).unwrap();
            for p in [2, 3] {
                for n in 1..6 {
                    let got = green_padic(&f, p, &x, n).unwrap();
                    assert_eq!(got.log_coeff.unwrap(), padic_oracle(&f, p, &x, n), "{a}/{b} n={n}");
                }
            }
            // polynomial maps stop at escape with the exact limit; the
            // truncated oracle must sit within the tail bound of it
            let got = green_padic(&g, 2, &x, 64).unwrap();
            let limit = got.log_coeff.unwrap();
            let n = 12;
            let tail = BigRat::new(
                int_valuation(g.resultant(), 2).unwrap(),
                BigInt::from(2).pow(n as u32),
            )
            .unwrap();
            let gap = (&limit - &padic_oracle(&g, 2, &x, n)).abs();
            assert!(gap <= tail, "{a}/{b}: {limit} vs oracle");
        }
    }

    #[test]
    fn padic_invariance_is_exact() {
        let f = RationalMapQ::from_i64(&[0, 1, 0], &[12, 0, 1]).unwrap();
        let x = ProjPointQ::new(5, 3).unwrap();
        // value at the unnormalized image F(v) equals d·G(v); at the reduced
        // image, subtract the content's contribution
        let depth = 30;
        let g = green_padic(&f, 2, &x, depth).unwrap().log_coeff.unwrap();
        let fx_raw = (hom_eval_z(f.p(), x.x(), x.y()), hom_eval_z(f.q(), x.x(), x.y()));
        let e0 = int_valuation(&fx_raw.0, 2).unwrap().min(int_valuation(&fx_raw.1, 2).unwrap());
        let fx = f.apply(&x);
        let gfx = green_padic(&f, 2, &fx, depth - 1).unwrap().log_coeff.unwrap();
        assert_eq!(&gfx - &BigRat::from(e0), BigRat::from(2) * g);
    }

    #[test]
    fn padic_affine_escaping_parameter() {
        // c with v_p(c) < 0: G_{f_c}(c) = log⁺|c|_p
        for (num, den, p) in [(1, 2, 2u64), (3, 4, 2), (5, 9, 3), (-7, 25, 5), (2, 3, 3)] {
            let cc = BigRat::new(num, den).unwrap();
            let f = RationalMapQ::quadratic(&cc).unwrap();
            let g = green_padic_affine(&f, p, &cc, 40).unwrap();
            let expected = -crate::rational::padic_valuation(&cc, p).unwrap().unwrap();
            assert_eq!(g.log_coeff.unwrap(), BigRat::from(expected.max(0)));
        }
        let f = RationalMapQ::polynomial(&PolyQ::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(green_padic_affine(&f, 2, &BigRat::zero(), 8).unwrap().value, 0.0);
    }
}
