//! Simultaneous root finding by the Aberth–Ehrlich iteration.
//!
//! The iteration only needs `p(z)/p'(z)` at each estimate, so anything that
//! can evaluate a polynomial and its derivative can be solved: dense
//! coefficient vectors ([`PolyC`]) and polynomials that are only available
//! through a recursion (Percrit polynomials, iterated lifts), whose
//! coefficient form is far too ill-conditioned to use in double precision.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::PolyC;

/// A polynomial of known degree that can be evaluated with its derivative.
pub trait RootEvaluator: Sync {
    fn degree(&self) -> usize;

    /// `(p(z), p'(z))`. Both may carry any common nonzero factor.
    fn eval(&self, z: Complex64) -> (Complex64, Complex64);

    /// Relative residual of `z` as a root: `|p(z)|` divided by the natural
    /// scale of rounding error at `z`.
    fn residual(&self, z: Complex64) -> f64;

    /// Radius of the circle the initial guesses are placed on.
    fn initial_radius(&self) -> f64;

    fn center(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
}

impl RootEvaluator for PolyC {
    fn degree(&self) -> usize {
        PolyC::degree(self)
    }

    fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        self.eval_with_derivative(z)
    }

    fn residual(&self, z: Complex64) -> f64 {
        let scale = self.abs_eval(z.norm());
        if scale == 0.0 {
            0.0
        } else {
            self.eval(z).norm() / scale
        }
    }

    fn initial_radius(&self) -> f64 {
        self.root_bound().max(f64::MIN_POSITIVE)
    }
}

/// Tuning knobs for the iteration.
#[derive(Clone, Debug)]
pub struct AberthConfig {
    pub max_rounds: usize,
    /// Stop moving a root once its correction is below `step_tol · max(1, |z|)`.
    pub step_tol: f64,
    /// Seed for the angular perturbation of the initial circle.
    pub seed: u64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig {
            max_rounds: 2000,
            step_tol: 4.0 * f64::EPSILON,
            seed: 0x5eed,
        }
    }
}

/// All roots of a polynomial, sorted lexicographically by (re, im).
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Largest relative residual over the roots.
    pub residual: f64,
    pub rounds: usize,
}

/// Lexicographic (re, im) order. Coordinates are first quantized to 1e-10
/// so rounding noise (e.g. `±1e-17` real parts) does not decide the order.
pub(crate) fn lex_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    let q = |x: f64| (x * 1e10).round() + 0.0;
    q(a.re)
        .total_cmp(&q(b.re))
        .then(q(a.im).total_cmp(&q(b.im)))
        .then(a.re.total_cmp(&b.re))
        .then(a.im.total_cmp(&b.im))
}

fn initial_guesses(n: usize, center: Complex64, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..n)
        .map(|k| {
            let jitter: f64 = rng.gen_range(-0.1..0.1);
            let theta = tau * (k as f64 + 0.25 + jitter) / n as f64;
            center + Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Runs the Aberth–Ehrlich iteration on any evaluator.
pub fn find_roots<E: RootEvaluator>(poly: &E, tol: f64, cfg: &AberthConfig) -> Result<RootSet> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::domain("root finding needs degree >= 1"));
    }
    let mut z = initial_guesses(n, poly.center(), poly.initial_radius(), cfg.seed);
    let mut done = vec![false; n];
    let mut rounds = 0;
    while rounds < cfg.max_rounds && done.iter().any(|d| !d) {
        rounds += 1;
        let snapshot = &z;
        let updates: Vec<(Complex64, bool)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let zi = snapshot[i];
                if done[i] {
                    return (zi, true);
                }
                let (p, dp) = poly.eval(zi);
                if p.norm() == 0.0 {
                    return (zi, true);
                }
                let ratio = p / dp;
                let mut s = Complex64::new(0.0, 0.0);
                for (j, &zj) in snapshot.iter().enumerate() {
                    if j != i {
                        s += (zi - zj).inv();
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - ratio * s;
                let mut w = if denom.norm() > 0.0 && denom.is_finite() {
                    ratio / denom
                } else {
                    ratio
                };
                if !w.is_finite() {
                    // Derivative vanished: nudge off the critical point.
                    w = Complex64::new(1e-3, 1e-3) * zi.norm().max(1.0);
                }
                let step_ok = w.norm() <= cfg.step_tol * zi.norm().max(1.0);
                (zi - w, step_ok)
            })
            .collect();
        for (i, (zi, ok)) in updates.into_iter().enumerate() {
            z[i] = zi;
            done[i] = ok;
        }
    }
    let residual = z
        .par_iter()
        .map(|&zi| poly.residual(zi))
        .reduce(|| 0.0, f64::max);
    if !(residual <= tol) {
        return Err(Error::numeric(
            format!("root finder did not reach tolerance after {rounds} rounds"),
            residual,
            residual,
        ));
    }
    z.sort_by(lex_cmp);
    Ok(RootSet {
        roots: z,
        residual,
        rounds,
    })
}

/// All complex roots of `p` with multiplicity.
pub fn poly_roots(p: &PolyC, tol: f64) -> Result<RootSet> {
    if p.degree() == 0 {
        return Err(Error::domain("root finding needs degree >= 1"));
    }
    // Exact zero roots are split off so the iteration never has to resolve
    // a root at the origin to relative accuracy.
    let zeros = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let mut residual = 0.0;
    let mut rounds = 0;
    if zeros < p.degree() {
        let reduced = PolyC::new(p.coeffs()[zeros..].to_vec());
        let rs = find_roots(&reduced, tol, &AberthConfig::default())?;
        roots.extend(rs.roots);
        residual = rs.residual;
        rounds = rs.rounds;
    }
    roots.sort_by(lex_cmp);
    Ok(RootSet {
        roots,
        residual,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn quadratic_examples() {
        let r = poly_roots(&PolyC::from_real(&[-1.0, 0.0, 1.0]), 1e-12).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(close(r.roots[0], Complex64::new(-1.0, 0.0), 1e-12));
        assert!(close(r.roots[1], Complex64::new(1.0, 0.0), 1e-12));

        let r = poly_roots(&PolyC::from_real(&[1.0, 0.0, 1.0]), 1e-12).unwrap();
        // sorted by (re, im): -i first
        assert!(close(r.roots[0], Complex64::new(0.0, -1.0), 1e-12));
        assert!(close(r.roots[1], Complex64::new(0.0, 1.0), 1e-12));
    }

    #[test]
    fn zero_roots_and_degree_zero() {
        let r = poly_roots(&PolyC::from_real(&[0.0, 0.0, 0.0, 1.0]), 1e-12).unwrap();
        assert!(r.roots.iter().all(|z| z.norm() == 0.0));
        assert!(poly_roots(&PolyC::from_real(&[3.0]), 1e-12).is_err());
    }

    #[test]
    fn multiple_roots_converge() {
        // (z-1)^3 (z+2)
        let one = Complex64::new(1.0, 0.0);
        let p = PolyC::from_roots(&[one, one, one, Complex64::new(-2.0, 0.0)]);
        let r = poly_roots(&p, 1e-12).unwrap();
        assert!(close(r.roots[0], Complex64::new(-2.0, 0.0), 1e-10));
        for z in &r.roots[1..] {
            assert!(close(*z, one, 1e-4));
        }
    }

    #[test]
    fn reproducible() {
        let p = PolyC::from_real(&[1.0, -2.0, 0.5, 3.0, 1.0, -1.0, 2.0]);
        let a = poly_roots(&p, 1e-10).unwrap();
        let b = poly_roots(&p, 1e-10).unwrap();
        assert_eq!(a.roots, b.roots);
    }

    /// Up to 64 roots, one per cell of a jittered 8x8 lattice on [-1, 1]^2,
    /// so every pair is separated by at least a tenth of the cell size.
    fn arb_roots() -> impl Strategy<Value = Vec<Complex64>> {
        (
            prop::sample::subsequence((0..64usize).collect::<Vec<_>>(), 1..=64),
            prop::collection::vec((0.05..0.95f64, 0.05..0.95f64), 64),
        )
            .prop_map(|(cells, jitter)| {
                cells
                    .into_iter()
                    .map(|c| {
                        let (jx, jy) = jitter[c];
                        let x = -1.0 + 0.25 * ((c % 8) as f64 + jx);
                        let y = -1.0 + 0.25 * ((c / 8) as f64 + jy);
                        Complex64::new(x, y)
                    })
                    .collect()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn roots_of_from_roots_recover_the_set(roots in arb_roots()) {
            let p = PolyC::from_roots(&roots);
            let found = poly_roots(&p, 1e-8).unwrap();
            prop_assert_eq!(found.roots.len(), roots.len());
            // Expanding the product rounds each coefficient of p relative to
            // the coefficients of ∏(z + |r_j|), so the first-order forward
            // error of root r is about n ε ∏(|r| + |r_j|) / ∏_{j≠i} |r − r_j|.
            let n = roots.len() as f64;
            for (i, r) in roots.iter().enumerate() {
                let mut cond = r.norm() + roots[i].norm();
                for (j, rj) in roots.iter().enumerate() {
                    if j != i {
                        cond *= (r.norm() + rj.norm()) / (r - rj).norm();
                    }
                }
                let allowed = (100.0 * n * f64::EPSILON * cond).max(1e-10);
                let best = found.roots.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < allowed, "root {} missed by {} (allowed {})", r, best, allowed);
            }
        }
    }
}
