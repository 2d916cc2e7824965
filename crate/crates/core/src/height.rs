//! Naive and canonical heights on P¹(Q), preperiodicity and Northcott search.
//!
//! Two independent routes to the canonical height are provided. The global
//! route iterates exactly and rescales the naive height of `fⁿ(x)`; the
//! adelic route sums local Green functions over the places of Q. For a
//! content-normalized lift and a coprime integer point only the
//! Archimedean place and the primes dividing the resultant contribute.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::green::{green_arch_vector, green_padic};
use crate::map::{hom_eval_z, ProjPointQ, RationalMapC, RationalMapQ, DEFAULT_DIGIT_BUDGET};
use crate::rational::ln_abs;

/// Largest `max(|a|, |b|)` that [`preperiodic_search`] will enumerate.
pub const SEARCH_COORD_LIMIT: u64 = 5000;
/// Largest orbit [`is_preperiodic`] will store before giving up.
pub const ORBIT_LIMIT: usize = 1_000_000;

/// `log max(|a|, |b|)` on coprime coordinates.
pub fn naive_height(x: &ProjPointQ) -> f64 {
    if x.x().abs() >= x.y().abs() {
        ln_abs(x.x())
    } else {
        ln_abs(x.y())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightMethod {
    GlobalIteration,
    AdelicSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightValue {
    pub value: f64,
    pub error: f64,
    pub method: HeightMethod,
    pub depth: usize,
}

impl HeightValue {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "error": self.error,
            "depth": self.depth,
            "method": match self.method {
                HeightMethod::GlobalIteration => "global-iteration",
                HeightMethod::AdelicSum => "adelic-sum",
            },
            "place": "global",
        })
    }
}

/// A constant `C` with `|h(f(x)) − d·h(x)| ≤ C` for all `x ∈ P¹(Q)`.
///
/// For a coprime integer vector `v`, `‖F(v)‖ ≤ c₂‖v‖^d` and the Bezout
/// identities give `‖F(v)‖ ≥ |Res|/S ‖v‖^d`, with `S` the larger cofactor
/// coefficient sum. Reducing `F(v)` divides by a divisor of `Res`, so
/// `−log S ≤ h(f(x)) − d h(x) ≤ log c₂`.
pub fn northcott_constant(f: &RationalMapQ) -> f64 {
    let cof = f.cofactors();
    let sum = |v: &[BigInt]| v.iter().map(|c| c.abs()).fold(BigInt::zero(), |a, b| a + b);
    let s = (sum(&cof.for_y.0) + sum(&cof.for_y.1)).max(sum(&cof.for_x.0) + sum(&cof.for_x.1));
    let c2 = sum(f.p()).max(sum(f.q()));
    ln_abs(&s).max(ln_abs(&c2)).max(0.0)
}

/// `|h_f − h| ≤ C/(d−1)` everywhere.
pub fn height_difference_bound(f: &RationalMapQ) -> f64 {
    northcott_constant(f) / (f.degree() as f64 - 1.0)
}

/// `d^-n h(fⁿ(x))` at a fixed depth, with its certified error.
pub fn canonical_height_at_depth(
    f: &RationalMapQ,
    x: &ProjPointQ,
    depth: usize,
    digit_budget: u64,
) -> Result<HeightValue> {
    let d = f.degree() as f64;
    let c = northcott_constant(f);
    let mut pt = x.clone();
    for _ in 0..depth {
        pt = f.apply(&pt);
        if pt.digits() > digit_budget {
            return Err(Error::Resource(format!(
                "orbit exceeded {digit_budget} digits (naive height reached {:.6e})",
                naive_height(&pt)
            )));
        }
    }
    let w = d.powi(-(depth as i32));
    Ok(HeightValue {
        value: w * naive_height(&pt),
        error: c * w / (d - 1.0),
        method: HeightMethod::GlobalIteration,
        depth,
    })
}

/// Canonical height by `h_n = d^-n h(fⁿ(x))`, iterating until the error
/// `C/((d−1)dⁿ)` is at most `tol`.
pub fn canonical_height_global(f: &RationalMapQ, x: &ProjPointQ, tol: f64) -> Result<HeightValue> {
    canonical_height_global_budget(f, x, tol, DEFAULT_DIGIT_BUDGET)
}

pub fn canonical_height_global_budget(
    f: &RationalMapQ,
    x: &ProjPointQ,
    tol: f64,
    digit_budget: u64,
) -> Result<HeightValue> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let d = f.degree() as f64;
    let c = northcott_constant(f);
    let mut pt = x.clone();
    let mut w = 1.0;
    let mut n = 0;
    loop {
        let error = c * w / (d - 1.0);
        let value = w * naive_height(&pt);
        if error <= tol {
            return Ok(HeightValue {
                value,
                error,
                method: HeightMethod::GlobalIteration,
                depth: n,
            });
        }
        let next = f.apply(&pt);
        if next.digits() > digit_budget {
            return Err(Error::numeric(
                format!("digit budget {digit_budget} exhausted at depth {n}"),
                value,
                error,
            ));
        }
        pt = next;
        w /= d;
        n += 1;
    }
}

/// Canonical height as the sum of local Green functions of the normalized
/// lift at the coprime representative of `x`.
pub fn canonical_height_adelic(f: &RationalMapQ, x: &ProjPointQ, tol: f64) -> Result<HeightValue> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let primes = f.bad_primes()?;
    let share = tol / (primes.len() + 1) as f64;
    let fc = RationalMapC::from_q(f);
    let (unit, log_norm) = x.to_unit_complex();
    let arch = green_arch_vector(&fc, unit.x, unit.y, log_norm, share)?;
    let mut value = arch.value;
    let mut error = arch.error;
    let mut depth = arch.depth;
    let d = f.degree() as f64;
    for p in primes {
        let vres = crate::rational::int_valuation(f.resultant(), p).unwrap_or(0) as f64;
        // smallest n with v_p(Res) log p / ((d−1) dⁿ) ≤ share
        let need = (vres * (p as f64).ln() / ((d - 1.0) * share)).ln() / d.ln();
        let n = need.ceil().max(1.0) as usize;
        let g = green_padic(f, p, x, n)?;
        value += g.value;
        error += g.error;
        depth = depth.max(g.depth);
    }
    Ok(HeightValue {
        value,
        error,
        method: HeightMethod::AdelicSum,
        depth,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `f^tail(x) = f^(tail + period)(x)` exactly.
    Preperiodic { tail: usize, period: usize },
    /// The orbit point at `index` has naive height above `bound`, which
    /// forces a positive canonical height.
    Wandering { index: usize, height: f64, bound: f64 },
}

#[derive(Clone, Debug)]
pub struct PreperiodicityCertificate {
    pub verdict: Verdict,
    /// The exact orbit segment examined, starting at `x`.
    pub orbit: Vec<ProjPointQ>,
}

impl PreperiodicityCertificate {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self.verdict, Verdict::Preperiodic { .. })
    }
}

/// Naive-height cutoff above which no point is preperiodic:
/// `2C/(d−1) + 1`, twice the bound on `|h − h_f|` plus one.
pub fn wandering_bound(f: &RationalMapQ) -> f64 {
    2.0 * height_difference_bound(f) + 1.0
}

/// Decides preperiodicity by following the exact orbit until a repeat or
/// until the naive height exceeds [`wandering_bound`].
pub fn is_preperiodic(f: &RationalMapQ, x: &ProjPointQ) -> Result<PreperiodicityCertificate> {
    is_preperiodic_with_bound(f, x, wandering_bound(f))
}

fn is_preperiodic_with_bound(f: &RationalMapQ, x: &ProjPointQ, bound: f64) -> Result<PreperiodicityCertificate> {
    let mut seen: HashMap<ProjPointQ, usize> = HashMap::new();
    let mut orbit = vec![x.clone()];
    loop {
        let idx = orbit.len() - 1;
        let cur = &orbit[idx];
        let h = naive_height(cur);
        if h > bound {
            return Ok(PreperiodicityCertificate {
                verdict: Verdict::Wandering { index: idx, height: h, bound },
                orbit,
            });
        }
        if let Some(&first) = seen.get(cur) {
            orbit.pop();
            return Ok(PreperiodicityCertificate {
                verdict: Verdict::Preperiodic {
                    tail: first,
                    period: idx - first,
                },
                orbit,
            });
        }
        if orbit.len() > ORBIT_LIMIT {
            return Err(Error::Resource(format!("orbit longer than {ORBIT_LIMIT} below the height bound")));
        }
        seen.insert(cur.clone(), idx);
        let next = f.apply(cur);
        orbit.push(next);
    }
}

/// All preperiodic points of naive height at most `bound`, by exhaustive
/// enumeration: `∞`, then reduced fractions by `max(|a|, |b|)` and value.
pub fn preperiodic_search(f: &RationalMapQ, bound: f64) -> Result<Vec<ProjPointQ>> {
    if !(bound >= 0.0) {
        return Err(Error::domain("height bound must be nonnegative"));
    }
    let limit = bound.exp().floor();
    if limit > SEARCH_COORD_LIMIT as f64 {
        return Err(Error::Resource(format!(
            "search needs coordinates up to {limit}, above the limit {SEARCH_COORD_LIMIT}"
        )));
    }
    let cut = wandering_bound(f);
    let mut out = Vec::new();
    let mut consider = |pt: ProjPointQ| -> Result<()> {
        if is_preperiodic_with_bound(f, &pt, cut)?.is_preperiodic() {
            out.push(pt);
        }
        Ok(())
    };
    consider(ProjPointQ::infinity())?;
    for m in 1..=limit as i64 {
        let mut batch: Vec<(i64, i64)> = Vec::new();
        if m == 1 {
            batch.push((0, 1));
        }
        for b in 1..=m {
            for a in [-m, m] {
                if num_integer::gcd(a, b) == 1 {
                    batch.push((a, b));
                }
            }
        }
        for a in 1 - m..m {
            if a != 0 && num_integer::gcd(a, m) == 1 {
                batch.push((a, m));
            }
        }
        batch.sort_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)));
        batch.dedup();
        for (a, b) in batch {
            consider(ProjPointQ::new(a, b)?)?;
        }
    }
    Ok(out)
}

/// Applies `F` without reduction; used to check lift-level identities.
pub fn apply_unreduced(f: &RationalMapQ, x: &ProjPointQ) -> (BigInt, BigInt) {
    (hom_eval_z(f.p(), x.x(), x.y()), hom_eval_z(f.q(), x.x(), x.y()))
}
