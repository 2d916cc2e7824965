//! Critical points, periodic points and multipliers of complex rational maps.
//!
//! Roots of binary forms are found in the affine chart after splitting off
//! the root at infinity. Periodic points of period dividing `n` are the
//! roots of `x·Y − y·X` with `(X, Y) = Fⁿ(x, y)`, a form of degree `dⁿ + 1`.
//! Its coefficients are never formed. Instead the form is pulled back by a
//! seeded unitary change of coordinates (so no root sits at infinity) and
//! evaluated by iterating the lift.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::map::{ProjPointC, RationalMapC};
use crate::poly::PolyC;
use crate::roots::{find_roots, lex_cmp, poly_roots, AberthConfig, RootEvaluator};

/// Largest form degree the periodic-point solver accepts.
pub const ROOT_CAPACITY: usize = 4097;
/// `||λ| − 1|` below this is classified neutral.
pub const NEUTRAL_THRESHOLD: f64 = 1e-8;
/// Seed of the unitary chart used for periodic points.
const CHART_SEED: u64 = 0xc0ffee;

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Attracting,
    Repelling,
    Neutral,
}

pub fn classify(multiplier: C) -> Stability {
    let m = multiplier.norm();
    if (m - 1.0).abs() < NEUTRAL_THRESHOLD {
        Stability::Neutral
    } else if m < 1.0 {
        Stability::Attracting
    } else {
        Stability::Repelling
    }
}

#[derive(Clone, Debug)]
pub struct PeriodicPoint {
    pub location: ProjPointC,
    /// The `n` the point was computed for: `fⁿ(location) = location`.
    pub period: usize,
    /// Smallest `k | n` with `f^k(location) ≈ location`.
    pub minimal_period: usize,
    /// `(fⁿ)'` at the point, chart independent.
    pub multiplier: C,
    pub stability: Stability,
}

/// Deterministic order on P¹: finite points by (re, im), then infinity.
pub fn point_cmp(a: &ProjPointC, b: &ProjPointC) -> Ordering {
    match (a.to_complex(), b.to_complex()) {
        (Some(x), Some(y)) => lex_cmp(&x, &y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

/// Roots of a binary form `Σ c_i x^i y^(d-i)` with multiplicity. Exact zero
/// top coefficients count as roots at infinity; large affine roots are
/// polished in the chart at infinity.
pub fn binary_form_roots(c: &[C], tol: f64) -> Result<Vec<ProjPointC>> {
    let d = c.len() - 1;
    let at_inf = c.iter().rev().take_while(|a| a.norm() == 0.0).count();
    if at_inf > d {
        return Err(Error::domain("the zero form has no isolated roots"));
    }
    let mut out = Vec::with_capacity(d);
    if at_inf < d {
        let affine = PolyC::new(c[..=d - at_inf].to_vec());
        let reversed = PolyC::new(c.iter().rev().cloned().collect());
        for z in poly_roots(&affine, tol)?.roots {
            if z.norm() > 1.0 {
                let mut w = z.inv();
                for _ in 0..3 {
                    let (g, dg) = reversed.eval_with_derivative(w);
                    if dg.norm() == 0.0 || g.norm() == 0.0 {
                        break;
                    }
                    let next = w - g / dg;
                    if !next.is_finite() {
                        break;
                    }
                    w = next;
                }
                out.push(ProjPointC::new(C::new(1.0, 0.0), w)?);
            } else {
                out.push(ProjPointC::from_complex(z));
            }
        }
    }
    out.extend(std::iter::repeat(ProjPointC::infinity()).take(at_inf));
    out.sort_by(point_cmp);
    Ok(out)
}

fn form_mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![czero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `∂/∂x` and `∂/∂y` of a binary form, as forms of one degree less.
fn form_partials(c: &[C]) -> (Vec<C>, Vec<C>) {
    let d = c.len() - 1;
    let dx = (1..=d).map(|i| c[i] * i as f64).collect();
    let dy = (0..d).map(|i| c[i] * (d - i) as f64).collect();
    (dx, dy)
}

/// The `2d − 2` critical points with multiplicity: roots of the Wronskian
/// `P_x Q_y − P_y Q_x`.
pub fn critical_points(f: &RationalMapC, tol: f64) -> Result<Vec<ProjPointC>> {
    let (px, py) = form_partials(f.p());
    let (qx, qy) = form_partials(f.q());
    let a = form_mul(&px, &qy);
    let b = form_mul(&py, &qx);
    let w: Vec<C> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    binary_form_roots(&w, tol)
}

/// All preimages of `target` with multiplicity.
pub fn preimages(f: &RationalMapC, target: &ProjPointC, tol: f64) -> Result<Vec<ProjPointC>> {
    let form: Vec<C> = f
        .p()
        .iter()
        .zip(f.q())
        .map(|(&p, &q)| target.y * p - target.x * q)
        .collect();
    binary_form_roots(&form, tol)
}

/// `x·Y − y·X` along the line `t ↦ t·u + w`, with `(X, Y) = Fⁿ`.
struct PeriodicForm<'a> {
    f: &'a RationalMapC,
    n: usize,
    u: (C, C),
    w: (C, C),
}

impl PeriodicForm<'_> {
    fn start(&self, t: C) -> (C, C) {
        (t * self.u.0 + self.w.0, t * self.u.1 + self.w.1)
    }

    /// `Fⁿ(v)` and its derivative along `u`, both divided by the same
    /// running scale.
    fn iterate(&self, t: C) -> ((C, C), (C, C), (C, C)) {
        let v0 = self.start(t);
        let mut v = v0;
        let mut dv = self.u;
        for _ in 0..self.n {
            let ((a, b), j) = self.f.lift_with_jacobian(v.0, v.1);
            let da = j[0][0] * dv.0 + j[0][1] * dv.1;
            let db = j[1][0] * dv.0 + j[1][1] * dv.1;
            let s = a.norm().max(b.norm());
            v = (a / s, b / s);
            dv = (da / s, db / s);
        }
        (v0, v, dv)
    }
}

impl RootEvaluator for PeriodicForm<'_> {
    fn degree(&self) -> usize {
        self.f.degree().pow(self.n as u32) + 1
    }

    fn eval(&self, t: C) -> (C, C) {
        let ((x, y), (bx, by), (dbx, dby)) = self.iterate(t);
        let h = x * by - y * bx;
        let dh = self.u.0 * by + x * dby - self.u.1 * bx - y * dbx;
        (h, dh)
    }

    /// Sine of the angle between `v` and `Fⁿ(v)` in C², i.e. the chordal
    /// distance between the point and its image.
    fn residual(&self, t: C) -> f64 {
        let ((x, y), (bx, by), _) = self.iterate(t);
        let n0 = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let n1 = (bx.norm_sqr() + by.norm_sqr()).sqrt();
        (x * by - y * bx).norm() / (n0 * n1)
    }

    fn initial_radius(&self) -> f64 {
        1.0
    }
}

/// Composite Jacobian of `Fⁿ` at `v` (up to a positive scalar) and the
/// normalized image.
fn composite_jacobian(f: &RationalMapC, v: (C, C), n: usize) -> ([[C; 2]; 2], (C, C)) {
    let mut m = [[C::new(1.0, 0.0), czero()], [czero(), C::new(1.0, 0.0)]];
    let mut v = v;
    for _ in 0..n {
        let ((a, b), j) = f.lift_with_jacobian(v.0, v.1);
        let s = a.norm().max(b.norm());
        let mut next = [[czero(); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                next[r][c] = (j[r][0] * m[0][c] + j[r][1] * m[1][c]) / s;
            }
        }
        m = next;
        v = (a / s, b / s);
    }
    (m, v)
}

/// Multiplier of a fixed point `v` of `Fⁿ`.
///
/// If `G = Fⁿ` (degree `D`) has `G(v) = λv`, Euler's identity gives
/// `J v = Dλ v`; the other eigenvalue of `J` is `λ` times the multiplier, so
/// the multiplier is `det J / (D λ²)`. Rescaling `G` leaves this unchanged.
pub fn multiplier(f: &RationalMapC, pt: &ProjPointC, n: usize) -> C {
    let (j, g) = composite_jacobian(f, (pt.x, pt.y), n);
    let norm2 = pt.x.norm_sqr() + pt.y.norm_sqr();
    let lambda = (g.0 * pt.x.conj() + g.1 * pt.y.conj()) / norm2;
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let big_d = (f.degree() as f64).powi(n as i32);
    det / (lambda * lambda * big_d)
}

fn iterate_c(f: &RationalMapC, pt: &ProjPointC, k: usize) -> ProjPointC {
    (0..k).fold(*pt, |p, _| f.apply(&p))
}

/// All fixed points of `fⁿ` with multiplicity (`dⁿ + 1` of them), with
/// multipliers and classification. `tol` bounds the chordal distance
/// between each point and its image.
pub fn periodic_points(f: &RationalMapC, n: usize, tol: f64) -> Result<Vec<PeriodicPoint>> {
    if n == 0 {
        return Err(Error::domain("period must be at least 1"));
    }
    let d = f.degree();
    let degree = (d as f64).powi(n as i32) + 1.0;
    if degree > ROOT_CAPACITY as f64 {
        return Err(Error::Resource(format!(
            "d^n + 1 = {degree} exceeds the root capacity {ROOT_CAPACITY}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CHART_SEED);
    let mut unit = || {
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        C::from_polar(1.0, th)
    };
    // a rotation well away from the coordinate axes
    let (ca, cb) = (0.8f64, 0.6f64);
    let (e1, e2) = (unit(), unit());
    let u = (e1 * ca, e2 * cb);
    let w = (-(e2 * cb).conj(), (e1 * ca).conj());
    let form = PeriodicForm { f, n, u, w };
    let roots = find_roots(&form, tol, &AberthConfig::default())?;
    let divisors: Vec<usize> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    let mut out: Vec<PeriodicPoint> = roots
        .roots
        .iter()
        .map(|&t| {
            let v = form.start(t);
            let location = ProjPointC::new(v.0, v.1).expect("unitary image of (t, 1) is nonzero");
            let m = multiplier(f, &location, n);
            let minimal_period = divisors
                .iter()
                .copied()
                .find(|&k| location.chordal(&iterate_c(f, &location, k)) <= tol.max(1e-9) * 1e3)
                .unwrap_or(n);
            PeriodicPoint {
                location,
                period: n,
                minimal_period,
                multiplier: m,
                stability: classify(m),
            }
        })
        .collect();
    out.sort_by(|a, b| point_cmp(&a.location, &b.location));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::RationalMapQ;
    use crate::rational::BigRat;

    fn fc(c: i64) -> RationalMapC {
        RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::from(c)).unwrap())
    }

    fn close(a: &ProjPointC, z: Option<C>, tol: f64) -> bool {
        match z {
            Some(z) => a.chordal(&ProjPointC::from_complex(z)) < tol,
            None => a.chordal(&ProjPointC::infinity()) < tol,
        }
    }

    #[test]
    fn critical_examples() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let cp = critical_points(&sq, 1e-12).unwrap();
        assert_eq!(cp.len(), 2);
        assert!(close(&cp[0], Some(C::new(0.0, 0.0)), 1e-12) && cp[1].is_infinity());

        let cube = RationalMapC::from_q(&RationalMapQ::power(3).unwrap());
        let cp = critical_points(&cube, 1e-12).unwrap();
        assert_eq!(cp.len(), 4);
        assert!(cp[..2].iter().all(|p| close(p, Some(C::new(0.0, 0.0)), 1e-12)));
        assert!(cp[2..].iter().all(|p| p.is_infinity()));

        // z³/3 − c z²/2 + a³ has critical points 0, c and ∞ twice
        let (c, a) = (C::new(1.5, -0.5), C::new(0.3, 0.2));
        let g = RationalMapC::polynomial(&[a * a * a, C::new(0.0, 0.0), -c / 2.0, C::new(1.0 / 3.0, 0.0)]).unwrap();
        let cp = critical_points(&g, 1e-12).unwrap();
        assert_eq!(cp.len(), 4);
        assert!(close(&cp[0], Some(C::new(0.0, 0.0)), 1e-10));
        assert!(close(&cp[1], Some(c), 1e-10));
        assert!(cp[2].is_infinity() && cp[3].is_infinity());
    }

    #[test]
    fn critical_count_for_rational_maps() {
        let f = RationalMapC::from_q(&RationalMapQ::lattes());
        let cp = critical_points(&f, 1e-10).unwrap();
        assert_eq!(cp.len(), 6);
        // Lattès critical points are the preimages of the four critical values,
        // each a simple critical point; check f' vanishes at the finite ones
        for p in &cp {
            if let Some(z) = p.to_complex() {
                let (_, df) = f.eval_affine(z);
                assert!(df.norm() < 1e-6, "{z} {df}");
            }
        }
    }

    #[test]
    fn square_map_fixed_points() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let pts = periodic_points(&sq, 1, 1e-12).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(close(&pts[0].location, Some(C::new(0.0, 0.0)), 1e-10));
        assert!(close(&pts[1].location, Some(C::new(1.0, 0.0)), 1e-10));
        assert!(pts[2].location.chordal(&ProjPointC::infinity()) < 1e-10);
        let m: Vec<f64> = pts.iter().map(|p| p.multiplier.norm()).collect();
        assert!(m[0] < 1e-9 && (m[1] - 2.0).abs() < 1e-9 && m[2] < 1e-9);
        assert_eq!(pts[1].stability, Stability::Repelling);
        assert_eq!(pts[0].stability, Stability::Attracting);
    }

    #[test]
    fn square_map_period_four() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let pts = periodic_points(&sq, 4, 1e-10).unwrap();
        assert_eq!(pts.len(), 17);
        let mut roots = 0;
        for p in &pts {
            let zero = ProjPointC::from_complex(C::new(0.0, 0.0));
            if p.location.chordal(&zero) < 1e-8 || p.location.chordal(&ProjPointC::infinity()) < 1e-8 {
                assert!(p.multiplier.norm() < 1e-8);
                continue;
            }
            match p.location.to_complex() {
                Some(z) => {
                    let z15 = z.powu(15);
                    assert!((z15 - 1.0).norm() < 1e-9);
                    roots += 1;
                    assert!((p.multiplier.norm() - 16.0).abs() < 1e-7);
                }
                None => {}
            }
        }
        assert_eq!(roots, 15);
    }

    #[test]
    fn chebyshev_period_three() {
        let f = fc(-2);
        let pts = periodic_points(&f, 3, 1e-10).unwrap();
        assert_eq!(pts.len(), 9);
        // oracle: z = 2cos θ with 8θ ≡ ±θ, i.e. θ = 2πk/7 or 2πk/9
        let mut oracle: Vec<f64> = Vec::new();
        for (m, ks) in [(7.0, 0..4), (9.0, 0..5)] {
            for k in ks {
                oracle.push(2.0 * (std::f64::consts::TAU * k as f64 / m).cos());
            }
        }
        oracle.sort_by(f64::total_cmp);
        oracle.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        assert_eq!(oracle.len(), 8);
        let finite: Vec<&PeriodicPoint> = pts.iter().filter(|p| !p.location.is_infinity()).collect();
        assert_eq!(finite.len(), 8);
        for (p, x) in finite.iter().zip(&oracle) {
            let z = p.location.to_complex().unwrap();
            assert!((z - C::new(*x, 0.0)).norm() < 1e-8, "{z} vs {x}");
            // (fⁿ)'(2cos θ) = 2ⁿ sin(2ⁿθ)/sin θ: modulus 8, except the
            // fixed point 2 (θ = 0) where it is 4³
            let expected = if (*x - 2.0).abs() < 1e-9 { 64.0 } else { 8.0 };
            assert!((p.multiplier.norm() - expected).abs() < 1e-6 * expected);
            assert_eq!(p.stability, Stability::Repelling);
        }
    }

    #[test]
    fn multiplier_matches_affine_chain_rule() {
        let f = RationalMapC::from_q(&RationalMapQ::lattes());
        let pts = periodic_points(&f, 2, 1e-10).unwrap();
        assert_eq!(pts.len(), 17);
        for p in &pts {
            if let Some(z) = p.location.to_complex() {
                let (z1, d1) = f.eval_affine(z);
                if z1.norm() > 1e6 || z.norm() > 1e6 {
                    continue;
                }
                let (_, d2) = f.eval_affine(z1);
                let chain = d1 * d2;
                assert!((chain - p.multiplier).norm() < 1e-6 * chain.norm().max(1.0), "{chain} {}", p.multiplier);
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let f = fc(-1);
        assert!(matches!(periodic_points(&f, 13, 1e-8), Err(Error::Resource(_))));
    }

    #[test]
    fn preimages_of_square_map() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let pre = preimages(&sq, &ProjPointC::from_complex(C::new(-4.0, 0.0)), 1e-12).unwrap();
        assert_eq!(pre.len(), 2);
        assert!(close(&pre[0], Some(C::new(0.0, -2.0)), 1e-12));
        assert!(close(&pre[1], Some(C::new(0.0, 2.0)), 1e-12));
        let pre = preimages(&sq, &ProjPointC::infinity(), 1e-12).unwrap();
        assert!(pre.iter().all(|p| p.is_infinity()));
    }
}
