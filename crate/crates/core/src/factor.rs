//! Integer factorization: trial division to 10^6, then Pollard–Brent rho
//! with fixed seeds, so output is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on big integers. Deterministic below 3.3·10^24 (the first
/// twelve prime bases), probabilistic with the same bases above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One nontrivial factor of an odd composite `n` by Brent's variant of rho.
fn rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    for seed in 1u32.. {
        let c = BigInt::from(seed);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2u32 + seed);
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let f = rho(&n);
    let g = &n / &f;
    split_into(f, out);
    split_into(g, out);
}

/// Prime factorization with multiplicity, ascending.
pub fn factor_integer(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() || n.is_negative() {
        return Err(Error::domain("factor_integer needs n >= 1"));
    }
    let mut m = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    // A prime cofactor ends trial division early.
    let mut cofactor_prime = is_probable_prime(&m);
    while p < TRIAL_LIMIT && !cofactor_prime {
        let divides = match m.to_u64() {
            Some(small) => {
                if p.saturating_mul(p) > small {
                    break;
                }
                small % p == 0
            }
            None => (&m % p).is_zero(),
        };
        if divides {
            while (&m % p).is_zero() {
                out.push(BigInt::from(p));
                m /= p;
            }
            cofactor_prime = is_probable_prime(&m);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let mut rest = Vec::new();
        split_into(m, &mut rest);
        out.extend(rest);
    }
    out.sort();
    Ok(out)
}

/// Distinct prime divisors of `n ≥ 1`, ascending, as machine integers.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<u64>> {
    let mut ps = Vec::new();
    for p in factor_integer(n)? {
        let p = p
            .to_u64()
            .ok_or_else(|| Error::Resource(format!("prime factor {p} exceeds 64 bits")))?;
        if ps.last() != Some(&p) {
            ps.push(p);
        }
    }
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> Vec<u64> {
        factor_integer(&BigInt::from(n))
            .unwrap()
            .into_iter()
            .map(|p| p.to_u64().unwrap())
            .collect()
    }

    /// Trial-division primality, the independent oracle for `is_prime`.
    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn examples() {
        assert!(fac(1).is_empty());
        assert_eq!(fac(360), vec![2, 2, 2, 3, 3, 5]);
        assert!(naive_prime(1_000_000_007));
        assert_eq!(fac(1_000_000_007), vec![1_000_000_007]);
        assert!(factor_integer(&BigInt::zero()).is_err());
    }

    #[test]
    fn is_prime_agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), naive_prime(n), "{n}");
        }
        // Carmichael numbers
        for n in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
            assert!(!is_prime(n));
        }
    }

    #[test]
    fn rho_splits_large_semiprimes() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let r = BigInt::from(2_147_483_647u64);
        let n = &p * &q * &r * &p;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f, vec![q.clone(), p.clone(), p.clone(), r.clone()]);
        assert_eq!(factor_bigint(&n).unwrap(), vec![998_244_353, 1_000_000_007, 2_147_483_647]);
    }
}
