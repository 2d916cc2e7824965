//! Finite approximations of the equilibrium measure and their statistics.
//!
//! Clouds come from backward orbits (the full preimage tree or randomly
//! sampled branches) or from repelling periodic points. They are compared
//! through logarithmic potentials, distribution distances and Lyapunov
//! exponents.
//!
//! Random branch sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64(seed)`, one stream per branch (`set_stream(branch)`),
//! so every branch is reproducible on its own regardless of thread count.

use std::path::Path;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::map::{ProjPointC, RationalMapC};
use crate::periodic::{critical_points, periodic_points, preimages, Stability};

type C = Complex64;

/// Root tolerance for each preimage solve.
const PREIMAGE_TOL: f64 = 1e-10;
/// Largest full preimage tree built.
pub const MAX_TREE: usize = 1 << 22;
/// Atoms this close (chordally) to a probe make the potential undefined.
pub const PROBE_EXCLUSION: f64 = 1e-6;
/// Orbits passing this close to a critical point are discarded.
pub const CRITICAL_EXCLUSION: f64 = 1e-12;
/// At most this many orbits are used for a Lyapunov estimate.
pub const LYAPUNOV_MAX_ORBITS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Backward,
    Periodic,
    Parameter,
}

/// A finitely supported probability measure on P¹.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<ProjPointC>,
    pub weights: Vec<f64>,
    pub provenance: Provenance,
}

impl PointCloud {
    /// Uniform weights.
    pub fn uniform(points: Vec<ProjPointC>, provenance: Provenance) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("a cloud needs at least one point"));
        }
        let w = 1.0 / points.len() as f64;
        Ok(PointCloud {
            weights: vec![w; points.len()],
            points,
            provenance,
        })
    }

    /// Uniform cloud of finite points given in the affine chart.
    pub fn from_complex(points: &[C], provenance: Provenance) -> Result<Self> {
        PointCloud::uniform(points.iter().map(|&z| ProjPointC::from_complex(z)).collect(), provenance)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine coordinates, `None` for points at infinity.
    pub fn affine(&self) -> Vec<Option<C>> {
        self.points.iter().map(|p| p.to_complex()).collect()
    }

    /// CSV with header `re,im,weight` in shortest round-trip decimal form;
    /// infinity is written as `inf,inf`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,weight\n");
        for (p, w) in self.points.iter().zip(&self.weights) {
            match p.to_complex() {
                Some(z) => s.push_str(&format!("{},{},{}\n", z.re, z.im, w)),
                None => s.push_str(&format!("inf,inf,{w}\n")),
            }
        }
        s
    }

    /// Little-endian f64 triples `(re, im, weight)`; infinity as `(+inf, +inf)`.
    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len() * 24);
        for (p, w) in self.points.iter().zip(&self.weights) {
            let z = p.to_complex().unwrap_or(C::new(f64::INFINITY, f64::INFINITY));
            for v in [z.re, z.im, *w] {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }

    pub fn write_binary(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_binary())
    }
}

fn all_equal_to(pre: &[ProjPointC], z: &ProjPointC) -> bool {
    pre.iter().all(|w| w.chordal(z) < 1e-9)
}

/// How many branches of the backward tree to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branching {
    /// Every preimage at every level: `d^depth` atoms.
    Full,
    /// `width` independent branches, each choosing uniformly among the `d`
    /// preimages at every step.
    Random { width: usize },
}

/// Backward orbit of `z0` approximating `μ_f`. `z0` must not be exceptional;
/// an exceptional start is detected by stagnation and reported.
pub fn backward_cloud(
    f: &RationalMapC,
    z0: &ProjPointC,
    depth: usize,
    branching: Branching,
    seed: u64,
) -> Result<PointCloud> {
    let d = f.degree();
    let first = preimages(f, z0, PREIMAGE_TOL)?;
    if all_equal_to(&first, z0) {
        return Err(Error::domain("starting point is totally invariant (exceptional)"));
    }
    match branching {
        Branching::Full => {
            let size = (d as f64).powi(depth as i32);
            if size > MAX_TREE as f64 {
                return Err(Error::Resource(format!("full tree of {size} points exceeds {MAX_TREE}")));
            }
            let mut level = vec![*z0];
            for _ in 0..depth {
                let next: Result<Vec<Vec<ProjPointC>>> =
                    level.par_iter().map(|z| preimages(f, z, PREIMAGE_TOL)).collect();
                level = next?.into_iter().flatten().collect();
            }
            PointCloud::uniform(level, Provenance::Backward)
        }
        Branching::Random { width } => {
            if width == 0 {
                return Err(Error::domain("width must be positive"));
            }
            let points: Result<Vec<ProjPointC>> = (0..width)
                .into_par_iter()
                .map(|branch| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(branch as u64);
                    let mut z = *z0;
                    for _ in 0..depth {
                        let pre = preimages(f, &z, PREIMAGE_TOL)?;
                        if all_equal_to(&pre, &z) {
                            return Err(Error::domain("backward orbit stagnated at an exceptional point"));
                        }
                        z = pre[rng.gen_range(0..pre.len())];
                    }
                    Ok(z)
                })
                .collect();
            PointCloud::uniform(points?, Provenance::Backward)
        }
    }
}

/// Repelling periodic points of period dividing `n`, uniformly weighted.
pub fn periodic_cloud(f: &RationalMapC, n: usize) -> Result<PointCloud> {
    let pts = periodic_points(f, n, 1e-9)?;
    let repelling: Vec<ProjPointC> = pts
        .into_iter()
        .filter(|p| p.stability == Stability::Repelling)
        .map(|p| p.location)
        .collect();
    if repelling.is_empty() {
        return Err(Error::domain("no repelling periodic points of this period"));
    }
    PointCloud::uniform(repelling, Provenance::Periodic)
}

/// Logarithmic potential `Σ w_i log|w − z_i|` in the affine chart.
pub fn potential(cloud: &PointCloud, w: C) -> Result<f64> {
    let probe = ProjPointC::from_complex(w);
    let inf = ProjPointC::infinity();
    let mut acc = 0.0;
    for (p, &wt) in cloud.points.iter().zip(&cloud.weights) {
        if p.chordal(&inf) < 1e-9 {
            return Err(Error::domain("cloud has an atom at infinity; potential undefined in this chart"));
        }
        if p.chordal(&probe) <= PROBE_EXCLUSION {
            return Err(Error::domain(format!("probe {w} is within {PROBE_EXCLUSION} of an atom")));
        }
        acc += wt * (w - p.to_complex().unwrap()).norm().ln();
    }
    Ok(acc)
}

/// `count` probes on the circle `|w| = radius`, offset by half a step.
pub fn probe_ring(radius: f64, count: usize) -> Vec<C> {
    (0..count)
        .map(|k| C::from_polar(radius, std::f64::consts::TAU * (k as f64 + 0.5) / count as f64))
        .collect()
}

/// Largest potential gap between two clouds over the probes.
pub fn compare_clouds(a: &PointCloud, b: &PointCloud, probes: &[C]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &w in probes {
        worst = worst.max((potential(a, w)? - potential(b, w)?).abs());
    }
    Ok(worst)
}

/// Star discrepancy of angles `arg(z)/2π ∈ [0, 1)` against the uniform law.
pub fn angle_star_discrepancy(cloud: &PointCloud) -> Result<f64> {
    let mut u: Vec<f64> = Vec::with_capacity(cloud.len());
    for z in cloud.affine() {
        let z = z.ok_or_else(|| Error::domain("atom at infinity has no angle"))?;
        u.push(z.arg().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU);
    }
    Ok(star_discrepancy_sorted(&mut u, |x| x))
}

fn star_discrepancy_sorted(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// CDF of the arcsine law on `[−2, 2]`, the equilibrium measure of `z² − 2`.
pub fn arcsine_cdf(x: f64) -> f64 {
    0.5 + (x.clamp(-2.0, 2.0) / 2.0).asin() / std::f64::consts::PI
}

/// Kolmogorov distance between the real parts of a cloud and the arcsine
/// law. Atoms must be real up to `1e-6`.
pub fn arcsine_ks_distance(cloud: &PointCloud) -> Result<f64> {
    let mut xs = Vec::with_capacity(cloud.len());
    for z in cloud.affine() {
        match z {
            Some(z) if z.im.abs() <= 1e-6 => xs.push(z.re),
            _ => return Err(Error::domain("arcsine comparison needs real atoms")),
        }
    }
    Ok(star_discrepancy_sorted(&mut xs, arcsine_cdf))
}

/// Covering radius of the cloud: the largest chordal distance from a point
/// of a quasi-uniform (Fibonacci) grid on the sphere to its nearest atom.
pub fn covering_radius(cloud: &PointCloud, grid: usize) -> f64 {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..grid)
        .into_par_iter()
        .map(|i| {
            // point on S² → P¹ by stereographic projection from the north pole
            let zc = 1.0 - 2.0 * (i as f64 + 0.5) / grid as f64;
            let r = (1.0 - zc * zc).sqrt();
            let th = golden * i as f64;
            let (x, y) = (r * th.cos(), r * th.sin());
            let probe = if zc > 1.0 - 1e-15 {
                ProjPointC::infinity()
            } else {
                ProjPointC::from_complex(C::new(x, y) / (1.0 - zc))
            };
            cloud
                .points
                .iter()
                .map(|p| p.chordal(&probe))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LyapunovEstimate {
    pub value: f64,
    pub stderr: f64,
    pub orbits: usize,
    /// Orbits dropped for passing within [`CRITICAL_EXCLUSION`] of a
    /// critical point.
    pub discarded: usize,
}

impl LyapunovEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "stderr": self.stderr,
            "orbits": self.orbits,
            "discarded": self.discarded,
        })
    }
}

/// Spherical derivative `‖df‖` at `v`: `|det DF(v)| ‖v‖² / (d ‖F(v)‖²)` in
/// Euclidean norms, which is `|f'(z)|(1 + |z|²)/(1 + |f(z)|²)` in any chart.
fn spherical_derivative(f: &RationalMapC, v: (C, C)) -> (f64, (C, C)) {
    let ((a, b), j) = f.lift_with_jacobian(v.0, v.1);
    let det = (j[0][0] * j[1][1] - j[0][1] * j[1][0]).norm();
    let nv = v.0.norm_sqr() + v.1.norm_sqr();
    let nf = a.norm_sqr() + b.norm_sqr();
    let s = a.norm().max(b.norm());
    (det * nv / (f.degree() as f64 * nf), (a / s, b / s))
}

/// Birkhoff averages of `log‖df‖` along forward orbits from the cloud's
/// atoms. Floating orbits drift off the Julia set at a rate set by the
/// exponent itself, so `n_burn + n_avg` should stay around 30 for degree 2.
pub fn lyapunov(
    f: &RationalMapC,
    cloud: &PointCloud,
    n_burn: usize,
    n_avg: usize,
    seed: u64,
) -> Result<LyapunovEstimate> {
    if n_avg == 0 {
        return Err(Error::domain("n_avg must be positive"));
    }
    let crit = critical_points(f, 1e-12)?;
    let idx: Vec<usize> = if cloud.len() > LYAPUNOV_MAX_ORBITS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = sample(&mut rng, cloud.len(), LYAPUNOV_MAX_ORBITS).into_vec();
        v.sort_unstable();
        v
    } else {
        (0..cloud.len()).collect()
    };
    let per_orbit: Vec<Option<f64>> = idx
        .par_iter()
        .map(|&i| {
            let p = cloud.points[i];
            let mut v = (p.x, p.y);
            let mut sum = 0.0;
            for step in 0..n_burn + n_avg {
                let here = ProjPointC::new(v.0, v.1).ok()?;
                if crit.iter().any(|c| c.chordal(&here) < CRITICAL_EXCLUSION) {
                    return None;
                }
                let (g, next) = spherical_derivative(f, v);
                if step >= n_burn {
                    sum += g.ln();
                }
                v = next;
            }
            Some(sum / n_avg as f64)
        })
        .collect();
    let kept: Vec<f64> = per_orbit.iter().flatten().copied().collect();
    let discarded = per_orbit.len() - kept.len();
    if kept.is_empty() {
        return Err(Error::numeric("every orbit hit a critical point", f64::NAN, f64::NAN));
    }
    let n = kept.len() as f64;
    let mean = kept.iter().sum::<f64>() / n;
    let var = if kept.len() > 1 {
        kept.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(LyapunovEstimate {
        value: mean,
        stderr: (var / n).sqrt(),
        orbits: kept.len(),
        discarded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::RationalMapQ;
    use crate::rational::BigRat;

    fn fc(c: i64) -> RationalMapC {
        RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::from(c)).unwrap())
    }

    fn unit_roots(n: usize) -> PointCloud {
        let pts: Vec<C> = (0..n)
            .map(|k| C::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
            .collect();
        PointCloud::from_complex(&pts, Provenance::Backward).unwrap()
    }

    #[test]
    fn potential_of_roots_of_unity() {
        let c = unit_roots(4096);
        assert!((potential(&c, C::new(2.0, 0.0)).unwrap() - 2f64.ln()).abs() < 1e-6);
        assert!(potential(&c, C::new(0.5, 0.0)).unwrap().abs() < 1e-3);
        assert!(potential(&c, C::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn backward_tree_of_square_map() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let cloud = backward_cloud(&sq, &ProjPointC::from_complex(C::new(1.0, 0.0)), 8, Branching::Full, 0).unwrap();
        assert_eq!(cloud.len(), 256);
        for z in cloud.affine() {
            let z = z.unwrap();
            assert!((z.powu(256) - 1.0).norm() < 1e-9);
        }
        assert!(angle_star_discrepancy(&cloud).unwrap() <= 1.0 / 256.0 + 1e-9);
    }

    #[test]
    fn exceptional_points_are_rejected() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        for z in [ProjPointC::infinity(), ProjPointC::from_complex(C::new(0.0, 0.0))] {
            assert!(matches!(backward_cloud(&sq, &z, 3, Branching::Full, 0), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn pullback_invariance() {
        let f = fc(-1);
        let z0 = ProjPointC::from_complex(C::new(0.3, 0.1));
        let a = backward_cloud(&f, &z0, 6, Branching::Full, 0).unwrap();
        let b = backward_cloud(&f, &z0, 5, Branching::Full, 0).unwrap();
        let mut pulled: Vec<ProjPointC> = b
            .points
            .iter()
            .flat_map(|z| preimages(&f, z, PREIMAGE_TOL).unwrap())
            .collect();
        pulled.sort_by(crate::periodic::point_cmp);
        let mut direct = a.points.clone();
        direct.sort_by(crate::periodic::point_cmp);
        assert_eq!(pulled.len(), direct.len());
        for (p, q) in pulled.iter().zip(&direct) {
            assert!(p.chordal(q) < 1e-10);
        }
    }

    #[test]
    fn random_branches_are_deterministic() {
        let f = RationalMapC::from_q(&RationalMapQ::lattes());
        let z0 = ProjPointC::from_complex(C::new(2.0, 0.0));
        let a = backward_cloud(&f, &z0, 5, Branching::Random { width: 64 }, 7).unwrap();
        let b = backward_cloud(&f, &z0, 5, Branching::Random { width: 64 }, 7).unwrap();
        assert_eq!(a.to_binary(), b.to_binary());
        let c = backward_cloud(&f, &z0, 5, Branching::Random { width: 64 }, 8).unwrap();
        assert_ne!(a.to_binary(), c.to_binary());
    }

    #[test]
    fn square_map_atoms_approach_the_circle() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let z0 = ProjPointC::from_complex(C::new(5.0, 0.0));
        let mut last = f64::INFINITY;
        for depth in [2, 4, 6, 8] {
            let c = backward_cloud(&sq, &z0, depth, Branching::Full, 0).unwrap();
            let dev = c.affine().iter().map(|z| (z.unwrap().norm() - 1.0).abs()).fold(0.0, f64::max);
            // |z|^(2^depth) = 5 exactly, so ||z| − 1| ≈ log 5 · 2^-depth
            let k = dev / (5f64.ln() * 0.5f64.powi(depth as i32));
            assert!(k < 1.5 && dev < last);
            last = dev;
        }
    }

    #[test]
    fn potential_is_harmonic_off_support() {
        let c = backward_cloud(&fc(-1), &ProjPointC::from_complex(C::new(0.0, 0.0)), 8, Branching::Full, 0).unwrap();
        for center in [C::new(3.0, 0.5), C::new(-0.2, 2.5)] {
            let r = 0.05;
            let m = 64;
            let mean = (0..m)
                .map(|k| potential(&c, center + C::from_polar(r, std::f64::consts::TAU * k as f64 / m as f64)).unwrap())
                .sum::<f64>()
                / m as f64;
            assert!((mean - potential(&c, center).unwrap()).abs() < 1e-3);
        }
    }

    #[test]
    fn csv_and_binary_layout() {
        let c = PointCloud::uniform(
            vec![ProjPointC::from_complex(C::new(0.5, -0.25)), ProjPointC::infinity()],
            Provenance::Periodic,
        )
        .unwrap();
        let csv = c.to_csv();
        assert_eq!(csv, "re,im,weight\n0.5,-0.25,0.5\ninf,inf,0.5\n");
        let bin = c.to_binary();
        assert_eq!(bin.len(), 48);
        assert_eq!(f64::from_le_bytes(bin[8..16].try_into().unwrap()), -0.25);
        assert!(potential(&c, C::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn arcsine_cdf_endpoints() {
        assert_eq!(arcsine_cdf(-2.0), 0.0);
        assert_eq!(arcsine_cdf(2.0), 1.0);
        assert!((arcsine_cdf(0.0) - 0.5).abs() < 1e-15);
        // 2cos(πk/n) sampled at midpoints is arcsine distributed exactly
        let n = 1000;
        let pts: Vec<C> = (0..n)
            .map(|k| C::new(2.0 * (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos(), 0.0))
            .collect();
        let c = PointCloud::from_complex(&pts, Provenance::Backward).unwrap();
        assert!(arcsine_ks_distance(&c).unwrap() <= 0.5 / n as f64 + 1e-12);
    }

    #[test]
    fn lyapunov_of_square_map() {
        let sq = RationalMapC::from_q(&RationalMapQ::power(2).unwrap());
        let c = backward_cloud(&sq, &ProjPointC::from_complex(C::new(1.0, 0.0)), 10, Branching::Full, 0).unwrap();
        let l = lyapunov(&sq, &c, 5, 20, 1).unwrap();
        assert!((l.value - 2f64.ln()).abs() < 1e-2, "{l:?}");
    }
}
