//! Dense univariate polynomials, lowest degree first.

use num_complex::Complex64;
use num_traits::Zero;

use crate::rational::BigRat;

/// Polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<BigRat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRat::zero());
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| BigRat::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &BigRat {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        let mut out = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyQ::new(out)
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRat::zero();
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        PolyQ::new(out)
    }

    pub fn to_complex(&self) -> PolyC {
        PolyC::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.to_f64(), 0.0))
                .collect(),
        )
    }
}

/// Polynomial with complex double coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyC {
    coeffs: Vec<Complex64>,
}

impl PolyC {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::zero());
        }
        PolyC { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        PolyC::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::zero(); c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        PolyC::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Complex64::new(1.0, 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |a_k| |z|^k`, the natural scale of rounding error in `eval`.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> PolyC {
        if self.coeffs.len() == 1 {
            return PolyC::new(vec![Complex64::zero()]);
        }
        PolyC::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> PolyC {
        PolyC::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Upper bound on the modulus of every root (Fujiwara).
    pub fn root_bound(&self) -> f64 {
        let n = self.degree();
        let lead = self.leading().norm();
        let mut best: f64 = 0.0;
        for k in 1..=n {
            let mut a = self.coeffs[n - k].norm() / lead;
            if k == n {
                a /= 2.0;
            }
            best = best.max(a.powf(1.0 / k as f64));
        }
        2.0 * best
    }
}
