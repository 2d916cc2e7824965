//! Parameter spaces: the quadratic family `z² + c`, the cubic family
//! `P_{c,a}` and the curve `Per₁(κ)` of cubics with a fixed point of
//! multiplier `κ`.

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::green::{self, GreenValue, PolyGreen, POLY_MAX_DEPTH};
use crate::height::{HeightMethod, HeightValue};
use crate::map::RationalMapQ;
use crate::periodic::ROOT_CAPACITY;
use crate::poly::PolyC;
use crate::rational::{ln_abs, padic_valuation, BigRat};
use crate::roots::{find_roots, lex_cmp, AberthConfig, RootEvaluator};

/// Residual bound for Percrit roots, measured against the exact coefficients.
pub const PERCRIT_RESIDUAL: f64 = 1e-6;
/// Numeric roots closer than this are merged when multiplicities can occur.
pub const CLUSTER_RADIUS: f64 = 1e-6;

pub(crate) fn quadratic(c: C) -> PolyC {
    PolyC::new(vec![c, C::new(0.0, 0.0), C::new(1.0, 0.0)])
}

/// `G_M(c) = G_{f_c}(c)` together with the parameter-space gradient.
pub fn mandelbrot_green_full(c: C, tol: f64, max_depth: usize) -> Result<PolyGreen> {
    green::poly_green_core(&quadratic(c), c, true, tol, max_depth)
}

/// Green function of the Mandelbrot set.
pub fn mandelbrot_green(c: C, tol: f64) -> Result<GreenValue> {
    mandelbrot_green_full(c, tol, POLY_MAX_DEPTH).map(|r| r.green)
}

/// Exact coefficients of `f_cⁿ(0)` as a polynomial in `c`, lowest first.
pub fn critical_orbit_poly(n: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = vec![BigInt::zero()];
    for _ in 0..n {
        let len = 2 * p.len() - 1;
        let mut sq = vec![BigInt::zero(); len.max(2)];
        for (i, a) in p.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in p.iter().enumerate().skip(i) {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                sq[i + j] += if i == j { t } else { t * 2 };
            }
        }
        sq[1] += 1;
        while sq.len() > 1 && sq.last().is_some_and(|x| x.is_zero()) {
            sq.pop();
        }
        p = sq;
    }
    p
}

/// Exact coefficients of `f_cⁿ(0) − f_cᵏ(0)`.
pub fn percrit_poly(n: usize, k: usize) -> Vec<BigInt> {
    let mut p = critical_orbit_poly(n);
    for (i, b) in critical_orbit_poly(k).into_iter().enumerate() {
        p[i] -= b;
    }
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

/// `|p(c)| / Σ|a_i||c|^i` for huge integer coefficients, evaluated term by
/// term in log scale so nothing overflows.
struct ExactResidual {
    terms: Vec<(usize, f64, f64)>,
}

impl ExactResidual {
    fn new(coeffs: &[BigInt]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, ln_abs(a), if a.is_negative() { -1.0 } else { 1.0 }))
            .collect();
        ExactResidual { terms }
    }

    fn eval(&self, c: C) -> f64 {
        let r = c.norm();
        let lr = r.ln();
        let theta = c.arg();
        let log_mag = |i: usize, la: f64| if i == 0 { la } else { la + i as f64 * lr };
        let top = self
            .terms
            .iter()
            .map(|&(i, la, _)| log_mag(i, la))
            .fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return 0.0;
        }
        let mut sum = C::new(0.0, 0.0);
        let mut scale = 0.0;
        for &(i, la, sign) in &self.terms {
            let m = (log_mag(i, la) - top).exp();
            sum += C::from_polar(sign * m, i as f64 * theta);
            scale += m;
        }
        sum.norm() / scale
    }
}

/// `(f_cⁿ(0) − f_cᵏ(0)) / c^m` evaluated by the recursion `z ↦ z² + c`,
/// with the root at `c = 0` (multiplicity `m`) divided out.
struct PercritEvaluator {
    n: usize,
    k: usize,
    zeros: usize,
    degree: usize,
    exact: ExactResidual,
}

impl PercritEvaluator {
    /// `(f_cⁿ(0), d/dc)` up to a common factor. Once the orbit is far out,
    /// `zⁿ ≈ z_j^(2^(n-j))` and the ratio `z/z'` is carried instead, since
    /// the values themselves overflow.
    fn orbit(c: C, n: usize) -> ((C, C), bool) {
        let mut z = C::new(0.0, 0.0);
        let mut dz = C::new(0.0, 0.0);
        for j in 0..n {
            dz = 2.0 * z * dz + 1.0;
            z = z * z + c;
            if z.norm() > 1e50 {
                return ((z, dz * 2f64.powi((n - j - 1) as i32)), true);
            }
        }
        ((z, dz), false)
    }
}

impl RootEvaluator for PercritEvaluator {
    fn degree(&self) -> usize {
        self.degree
    }

    /// The quotient by `c^m` only changes the derivative:
    /// `(p/c^m)' / (p/c^m) = p'/p − m/c`, and the common factor is dropped.
    fn eval(&self, c: C) -> (C, C) {
        let ((zn, dn), escaped) = Self::orbit(c, self.n);
        let (p, dp) = if escaped {
            (zn, dn)
        } else {
            let ((zk, dk), _) = Self::orbit(c, self.k);
            (zn - zk, dn - dk)
        };
        if self.zeros == 0 {
            (p, dp)
        } else {
            (p, dp - p * self.zeros as f64 / c)
        }
    }

    fn residual(&self, c: C) -> f64 {
        self.exact.eval(c)
    }

    fn initial_radius(&self) -> f64 {
        3.0
    }
}

/// A Percrit root with its multiplicity; integer roots are recognized and
/// verified exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct PercritRoot {
    pub value: C,
    pub multiplicity: usize,
    pub exact: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub struct PercritRoots {
    pub n: usize,
    pub k: usize,
    pub degree: usize,
    pub roots: Vec<PercritRoot>,
    /// Largest residual relative to the exact coefficients.
    pub residual: f64,
}

impl PercritRoots {
    /// Total count with multiplicity.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<C> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        crate::io::csv(
            &["re", "im", "multiplicity"],
            self.roots.iter().map(|r| {
                vec![
                    format!("{}", r.value.re + 0.0),
                    format!("{}", r.value.im + 0.0),
                    r.multiplicity.to_string(),
                ]
            }),
        )
    }
}

/// Multiplicity of the integer `m` as a root of `p`, by repeated synthetic
/// division.
fn integer_root_multiplicity(p: &[BigInt], m: &BigInt) -> usize {
    let mut q = p.to_vec();
    let mut mult = 0;
    while q.len() > 1 {
        // Horner from the top: quotient coefficients and remainder
        let mut quotient = vec![BigInt::zero(); q.len() - 1];
        let mut acc = BigInt::zero();
        for i in (0..q.len()).rev() {
            acc = acc * m + &q[i];
            if i > 0 {
                quotient[i - 1] = acc.clone();
            }
        }
        if !acc.is_zero() {
            break;
        }
        mult += 1;
        q = quotient;
    }
    mult
}

/// All roots of `f_cⁿ(0) = f_cᵏ(0)` with multiplicity.
///
/// The polynomial is built exactly, solved through the recursion (its
/// coefficients overflow double precision from `n = 12` on), and every root
/// is certified against the exact coefficients. Rational roots of this monic
/// integer polynomial are integers; those are recognized and their
/// multiplicity computed exactly. The remaining roots are simple when
/// `k = 0`; otherwise numerically coincident roots are merged.
pub fn percrit_roots(n: usize, k: usize) -> Result<PercritRoots> {
    if k >= n {
        return Err(Error::domain("percrit needs 0 <= k < n"));
    }
    let degree = 1usize << (n - 1);
    if degree > ROOT_CAPACITY {
        return Err(Error::Resource(format!(
            "percrit degree 2^{} exceeds root capacity {ROOT_CAPACITY}",
            n - 1
        )));
    }
    let exact = percrit_poly(n, k);
    debug_assert_eq!(exact.len() - 1, degree);
    let zeros = exact.iter().take_while(|a| a.is_zero()).count();
    let mut roots = vec![PercritRoot {
        value: C::new(0.0, 0.0),
        multiplicity: zeros,
        exact: Some(BigInt::zero()),
    }];
    let (mut pending, residual) = if zeros < degree {
        let eval = PercritEvaluator {
            n,
            k,
            zeros,
            degree: degree - zeros,
            exact: ExactResidual::new(&exact[zeros..]),
        };
        let rs = find_roots(&eval, PERCRIT_RESIDUAL, &AberthConfig::default())?;
        (rs.roots, rs.residual)
    } else {
        (Vec::new(), 0.0)
    };

    let mut candidates: Vec<i64> = pending
        .iter()
        .filter(|z| z.im.abs() < 1e-3 && (z.re - z.re.round()).abs() < 1e-3)
        .filter_map(|z| z.re.round().to_i64())
        .collect();
    candidates.sort();
    candidates.dedup();
    for m in candidates.into_iter().filter(|&m| m != 0) {
        let mb = BigInt::from(m);
        let mult = integer_root_multiplicity(&exact, &mb);
        if mult == 0 {
            continue;
        }
        let target = C::new(m as f64, 0.0);
        pending.sort_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()));
        pending.drain(..mult.min(pending.len()));
        roots.push(PercritRoot {
            value: target,
            multiplicity: mult,
            exact: Some(mb),
        });
    }
    pending.sort_by(lex_cmp);
    for z in pending {
        if k > 0 {
            if let Some(r) = roots
                .iter_mut()
                .find(|r| r.exact.is_none() && (r.value - z).norm() < CLUSTER_RADIUS)
            {
                r.multiplicity += 1;
                continue;
            }
        }
        roots.push(PercritRoot {
            value: z,
            multiplicity: 1,
            exact: None,
        });
    }
    roots.sort_by(|a, b| lex_cmp(&a.value, &b.value));
    Ok(PercritRoots {
        n,
        k,
        degree,
        roots,
        residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeDeviation {
    pub probe: C,
    pub mean_log: f64,
    pub green: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct EquidistributionReport {
    pub n: usize,
    pub k: usize,
    pub probes: Vec<ProbeDeviation>,
    pub max_deviation: f64,
}

impl EquidistributionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "max_deviation": self.max_deviation,
            "probes": self.probes.iter().map(|p| json!({
                "re": p.probe.re,
                "im": p.probe.im,
                "mean_log": p.mean_log,
                "green": p.green,
                "deviation": p.deviation,
            })).collect::<Vec<_>>(),
        })
    }
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
    }
    sum + comp
}

/// Compares the logarithmic potential of the Percrit roots with `G_M` at
/// probes outside the Mandelbrot set. Harmonic measure of `M` has potential
/// exactly `G_M` there (capacity 1).
pub fn percrit_equidistribution_test(n: usize, k: usize, probes: &[C]) -> Result<EquidistributionReport> {
    let mut checked = Vec::with_capacity(probes.len());
    for &c0 in probes {
        let g = mandelbrot_green(c0, 1e-15)?;
        if g.value <= 0.1 {
            return Err(Error::domain(format!("probe {c0} is too close to the Mandelbrot set")));
        }
        checked.push((c0, g.value));
    }
    let roots = percrit_roots(n, k)?;
    let total = roots.count() as f64;
    let probes: Vec<ProbeDeviation> = checked
        .into_iter()
        .map(|(c0, g)| {
            // the gap is summed term by term, compensated, so it can be
            // resolved far below the rounding unit of the mean itself
            let gap = neumaier_sum(
                roots
                    .roots
                    .iter()
                    .map(|r| r.multiplicity as f64 * ((r.value - c0).norm().ln() - g)),
            ) / total;
            ProbeDeviation {
                probe: c0,
                mean_log: g + gap,
                green: g,
                deviation: gap.abs(),
            }
        })
        .collect();
    let max_deviation = probes.iter().map(|p| p.deviation).fold(0.0, f64::max);
    Ok(EquidistributionReport {
        n,
        k,
        probes,
        max_deviation,
    })
}

/// `h_M(c)` split by place.
#[derive(Clone, Debug)]
pub struct ParamHeight {
    pub height: HeightValue,
    pub archimedean: GreenValue,
    /// One entry per prime dividing the denominator, each an exact multiple
    /// of `log p`.
    pub finite: Vec<GreenValue>,
}

impl ParamHeight {
    pub fn to_json(&self) -> Value {
        let mut v = self.height.to_json();
        v["archimedean"] = self.archimedean.to_json();
        v["finite"] = Value::Array(self.finite.iter().map(GreenValue::to_json).collect());
        v
    }
}

/// Parameter height of a rational `c`: `G_M(c)` plus the p-adic Green
/// functions of the Mandelbrot set, which are `log⁺|c|_p`. Only primes in
/// the denominator contribute. Each p-adic term is computed dynamically and
/// checked against the valuation.
pub fn mandelbrot_param_height(c: &BigRat, tol: f64) -> Result<ParamHeight> {
    let archimedean = mandelbrot_green(C::new(c.to_f64(), 0.0), tol)?;
    let f = RationalMapQ::quadratic(c)?;
    let mut primes = crate::factor::factor_bigint(c.denom())?;
    primes.dedup();
    let mut finite = Vec::new();
    for p in primes {
        let g = green::green_padic_affine(&f, p, c, green::PADIC_DEPTH)?;
        let v = padic_valuation(c, p)?.expect("c has a denominator divisible by p");
        let expected = BigRat::from(-v.min(0));
        if g.log_coeff.as_ref() != Some(&expected) {
            return Err(Error::numeric(
                format!("p-adic Mandelbrot Green function at {p} disagrees with log+|c|_p"),
                g.value,
                g.error,
            ));
        }
        finite.push(g);
    }
    let value = archimedean.value + finite.iter().map(|g| g.value).sum::<f64>();
    let error = archimedean.error + finite.iter().map(|g| g.error).sum::<f64>();
    Ok(ParamHeight {
        height: HeightValue {
            value,
            error,
            method: HeightMethod::AdelicSum,
            depth: archimedean.depth,
        },
        archimedean,
        finite,
    })
}

/// A cubic `P_{c,a}(z) = z³/3 − c z²/2 + a³`, with critical points 0 and `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicParam {
    pub c: C,
    pub a: C,
}

impl CubicParam {
    pub fn new(c: C, a: C) -> Self {
        CubicParam { c, a }
    }

    pub fn polynomial(&self) -> PolyC {
        PolyC::new(vec![
            self.a * self.a * self.a,
            C::new(0.0, 0.0),
            -self.c / 2.0,
            C::new(1.0 / 3.0, 0.0),
        ])
    }
}

#[derive(Clone, Debug)]
pub struct CubicGreen {
    pub at_zero: GreenValue,
    pub at_c: GreenValue,
    /// `G(c,a) = max` of the two.
    pub value: f64,
    pub error: f64,
}

impl CubicGreen {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "error": self.error,
            "at_zero": self.at_zero.to_json(),
            "at_c": self.at_c.to_json(),
        })
    }
}

pub fn cubic_green(param: &CubicParam, tol: f64) -> Result<CubicGreen> {
    cubic_green_depth(param, tol, POLY_MAX_DEPTH)
}

pub fn cubic_green_depth(param: &CubicParam, tol: f64, max_depth: usize) -> Result<CubicGreen> {
    let f = param.polynomial();
    let at_zero = green::green_poly_general(&f, C::new(0.0, 0.0), tol, max_depth)?;
    let at_c = green::green_poly_general(&f, param.c, tol, max_depth)?;
    let (value, error) = if at_zero.value >= at_c.value {
        (at_zero.value, at_zero.error.max(at_c.error))
    } else {
        (at_c.value, at_zero.error.max(at_c.error))
    };
    Ok(CubicGreen {
        at_zero,
        at_c,
        value,
        error,
    })
}

/// A point of `Per₁(κ)`: `f_s(z) = κ(z − ½(s + 1/s)z² + z³/3)`, critical
/// at `s` and `1/s`. Both `s` and `1/s` are stored so that swapping them is
/// exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Per1Param {
    pub s: C,
    pub s_inv: C,
    pub kappa: C,
}

impl Per1Param {
    pub fn new(s: C, kappa: C) -> Result<Self> {
        if s.norm() == 0.0 || kappa.norm() == 0.0 || !s.is_finite() || !kappa.is_finite() {
            return Err(Error::domain("Per1 needs finite nonzero s and kappa"));
        }
        Ok(Per1Param {
            s,
            s_inv: s.inv(),
            kappa,
        })
    }

    /// The same map with the roles of the critical points exchanged.
    pub fn inverted(&self) -> Self {
        Per1Param {
            s: self.s_inv,
            s_inv: self.s,
            kappa: self.kappa,
        }
    }

    pub fn polynomial(&self) -> PolyC {
        let k = self.kappa;
        PolyC::new(vec![
            C::new(0.0, 0.0),
            k,
            -k * (self.s + self.s_inv) / 2.0,
            k / 3.0,
        ])
    }
}

pub(crate) fn per1_plus(param: &Per1Param, tol: f64, max_depth: usize) -> Result<GreenValue> {
    green::green_poly_general(&param.polynomial(), param.s, tol, max_depth)
}

/// `(G⁺(s), G⁻(s)) = (G_{f_s}(s), G_{f_s}(1/s))`; `G⁻` is computed as `G⁺`
/// of the inverted parameter.
pub fn per1_greens(param: &Per1Param, tol: f64) -> Result<(GreenValue, GreenValue)> {
    per1_greens_depth(param, tol, POLY_MAX_DEPTH)
}

pub fn per1_greens_depth(param: &Per1Param, tol: f64, max_depth: usize) -> Result<(GreenValue, GreenValue)> {
    Ok((
        per1_plus(param, tol, max_depth)?,
        per1_plus(&param.inverted(), tol, max_depth)?,
    ))
}

/// Asymptotic constant of `G⁺(s) − log|s|` as `s → ∞`.
pub fn per1_asymptotic_constant(kappa: C) -> f64 {
    (kappa / 6.0).norm().ln() / 3.0 + (kappa / 3.0).norm().ln() / 6.0
}

/// Seeded Branner–Hubbard sweep: the largest `|G(c,a) − log max(|a|,|c|)|`
/// over `samples` parameters with `max(|a|,|c|)` log-uniform in `[r_min, r_max]`.
pub fn branner_hubbard_sweep(samples: usize, r_min: f64, r_max: f64, seed: u64, tol: f64) -> Result<f64> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<CubicParam> = (0..samples)
        .map(|_| {
            let r = (rng.gen_range(r_min.ln()..=r_max.ln())).exp();
            let t: f64 = rng.gen_range(0.0..1.0);
            let th_c = rng.gen_range(0.0..std::f64::consts::TAU);
            let th_a = rng.gen_range(0.0..std::f64::consts::TAU);
            let (rc, ra) = if rng.gen_bool(0.5) { (r, r * t) } else { (r * t, r) };
            CubicParam::new(C::from_polar(rc, th_c), C::from_polar(ra, th_a))
        })
        .collect();
    let gaps: Vec<f64> = params
        .par_iter()
        .map(|p| {
            let g = cubic_green(p, tol)?;
            Ok((g.value - p.c.norm().max(p.a.norm()).ln()).abs())
        })
        .collect::<Result<_>>()?;
    Ok(gaps.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn mandelbrot_green_examples() {
        assert_eq!(mandelbrot_green(c(0.0, 0.0), 1e-9).unwrap().value, 0.0);
        assert_eq!(mandelbrot_green(c(-1.0, 0.0), 1e-9).unwrap().value, 0.0);
        let g5 = mandelbrot_green(c(5.0, 0.0), 1e-12).unwrap().value;
        assert!((g5 - 5f64.ln()).abs() < 0.35, "{g5}");
    }

    #[test]
    fn mandelbrot_green_is_twice_critical_green() {
        for z in [c(0.5, 0.0), c(-0.75, 0.3), c(2.0, 2.0), c(0.3, 0.6)] {
            let gm = mandelbrot_green(z, 1e-12).unwrap();
            let g0 = green::green_poly(&quadratic(z), c(0.0, 0.0), 1e-12).unwrap();
            assert!((gm.value - 2.0 * g0.value).abs() <= gm.error + 2.0 * g0.error + 1e-12);
        }
    }

    #[test]
    fn critical_orbit_polys() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(critical_orbit_poly(0), ints(&[0]));
        assert_eq!(critical_orbit_poly(1), ints(&[0, 1]));
        assert_eq!(critical_orbit_poly(2), ints(&[0, 1, 1]));
        assert_eq!(critical_orbit_poly(3), ints(&[0, 1, 1, 2, 1]));
        assert_eq!(percrit_poly(2, 1), ints(&[0, 0, 1]));
    }

    #[test]
    fn percrit_small_cases() {
        let r = percrit_roots(1, 0).unwrap();
        assert_eq!(r.expanded(), vec![c(0.0, 0.0)]);
        let r = percrit_roots(2, 0).unwrap();
        assert_eq!(r.expanded(), vec![c(-1.0, 0.0), c(0.0, 0.0)]);
        assert!(r.roots.iter().all(|x| x.exact.is_some()));
        let r = percrit_roots(2, 1).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 2);
        let r = percrit_roots(3, 0).unwrap();
        assert_eq!(r.count(), 4);
        let airplane = r.roots.iter().find(|x| x.value.re < -1.5).unwrap();
        assert!((airplane.value.re + 1.754_877_666_246_693).abs() < 1e-12);
        for x in r.expanded() {
            assert!(x.norm() <= 4.0);
            assert_eq!(mandelbrot_green(x, 1e-9).unwrap().value, 0.0);
        }
    }

    #[test]
    fn percrit_multiplicities() {
        // f_c^3(0) - f_c(0) = c²(c + 1)² and f_c^3(0) - f_c^2(0) = c³(c + 2)
        let mult = |n, k, m: i64| {
            let r = percrit_roots(n, k).unwrap();
            assert_eq!(r.count(), 4);
            r.roots.iter().find(|x| x.exact == Some(BigInt::from(m))).unwrap().multiplicity
        };
        assert_eq!((mult(3, 1, 0), mult(3, 1, -1)), (2, 2));
        assert_eq!((mult(3, 2, 0), mult(3, 2, -2)), (3, 1));
    }

    #[test]
    fn far_probe_sees_log_distance() {
        // the roots of f_c^n(0) sum to -2^(n-2), so their mean is -1/2
        let rep = percrit_equidistribution_test(5, 0, &[c(100.0, 0.0)]).unwrap();
        let p = &rep.probes[0];
        assert!((p.mean_log - 100.5f64.ln()).abs() < 1e-3, "{}", p.mean_log);
        assert!(p.deviation < 1e-3);
        assert!(percrit_equidistribution_test(5, 0, &[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn param_heights() {
        for v in [0, -1, -2] {
            let h = mandelbrot_param_height(&BigRat::from(v), 1e-10).unwrap();
            assert!(h.height.value.abs() <= 1e-8, "{v}: {}", h.height.value);
        }
        let half = BigRat::new(1, 2).unwrap();
        let h = mandelbrot_param_height(&half, 1e-10).unwrap();
        assert_eq!(h.finite.len(), 1);
        assert_eq!(h.finite[0].log_coeff, Some(BigRat::from(1)));
        assert!(h.archimedean.value > 0.0);
        assert!((h.height.value - 2f64.ln() - h.archimedean.value).abs() < 1e-15);
        let h = mandelbrot_param_height(&BigRat::new(7, 12).unwrap(), 1e-10).unwrap();
        let coeffs: Vec<_> = h.finite.iter().map(|g| g.log_coeff.clone().unwrap()).collect();
        assert_eq!(coeffs, vec![BigRat::from(2), BigRat::from(1)]);
    }

    #[test]
    fn cubic_examples() {
        let g = cubic_green(&CubicParam::new(c(0.0, 0.0), c(0.0, 0.0)), 1e-9).unwrap();
        assert_eq!(g.value, 0.0);
        let far = CubicParam::new(c(2000.0, 0.0), c(0.0, 1500.0));
        let g = cubic_green(&far, 1e-9).unwrap();
        assert!(g.value > 0.0);
        assert!((g.value - 2000f64.ln()).abs() < 5.0);
    }

    #[test]
    fn per1_symmetry_is_structural() {
        let p = Per1Param::new(c(0.7, -1.9), c(4.0, 0.0)).unwrap();
        let (gp, gm) = per1_greens(&p, 1e-10).unwrap();
        let (gp_inv, gm_inv) = per1_greens(&p.inverted(), 1e-10).unwrap();
        assert_eq!(gp.value.to_bits(), gm_inv.value.to_bits());
        assert_eq!(gm.value.to_bits(), gp_inv.value.to_bits());
        assert_eq!(p.polynomial(), p.inverted().polynomial());
        assert!(Per1Param::new(c(0.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn per1_critical_points() {
        let p = Per1Param::new(c(1.5, 0.5), c(0.3, 2.0)).unwrap();
        let d = p.polynomial().derivative();
        assert!(d.eval(p.s).norm() < 1e-12);
        assert!(d.eval(p.s_inv).norm() < 1e-12);
        // fixed point 0 with multiplier kappa
        assert_eq!(p.polynomial().eval(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(d.eval(c(0.0, 0.0)), p.kappa);
    }
}
