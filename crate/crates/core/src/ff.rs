//! Prime field parameters and arithmetic on residues stored as `u32`.
//!
//! Every modulus used here is below 2^31, so products fit in a `u64` and
//! sums of two residues never overflow a `u32`.

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Default search interval for the characteristic: 10^4 < p < 3·10^4.
pub const DEFAULT_PRIME_RANGE: (u32, u32) = (10_001, 29_999);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub ell: u32,
    /// Primitive `ell`-th root of unity.
    pub r: u32,
}

impl FieldParams {
    /// Builds parameters for a given prime, picking the smallest primitive root of order `ell`.
    pub fn for_prime(p: u32, ell: u32) -> Result<Self> {
        if ell < 2 {
            return param(format!("level must be at least 2, got {ell}"));
        }
        if p == 2 || !is_prime(p) {
            return param(format!("{p} is not an odd prime"));
        }
        if p >= 1 << 31 {
            return param(format!("prime {p} too large"));
        }
        if (p - 1) % ell != 0 {
            return param(format!("{p} is not congruent to 1 mod {ell}"));
        }
        let r = (2..p)
            .find(|&x| has_exact_order(x, ell, p))
            .expect("cyclic group of order p-1 has an element of every order dividing p-1");
        Ok(FieldParams { p, ell, r })
    }
}

/// Smallest prime `p` in `[lo, hi]` with `p ≡ 1 (mod ell)`, together with the smallest
/// element of exact multiplicative order `ell`.
pub fn select_prime_and_root(ell: u32, range: (u32, u32)) -> Result<FieldParams> {
    let (lo, hi) = range;
    if ell < 2 {
        return param(format!("level must be at least 2, got {ell}"));
    }
    if lo > hi {
        return param(format!("empty prime range [{lo}, {hi}]"));
    }
    let hi = hi.min((1 << 31) - 1);
    let p = (lo.max(3)..=hi)
        .find(|&n| n % ell == 1 % ell && n % 2 == 1 && is_prime(n))
        .ok_or_else(|| crate::SyzError::Param(format!("no prime = 1 mod {ell} in [{lo}, {hi}]")))?;
    FieldParams::for_prime(p, ell)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn has_exact_order(x: u32, ell: u32, p: u32) -> bool {
    x % p != 0
        && pow(x, ell as u64, p) == 1
        && prime_factors(ell)
            .into_iter()
            .all(|q| pow(x, (ell / q) as u64, p) != 1)
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(a: u32, mut e: u64, p: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat. Panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero");
    pow(a, (p - 2) as u64, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn from_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_two_default() {
        let f = select_prime_and_root(2, DEFAULT_PRIME_RANGE).unwrap();
        assert_eq!(f.p, 10007);
        assert_eq!(f.r, f.p - 1);
    }

    // independent oracle: smallest prime = 1 mod ell by trial division, root = g0^((p-1)/ell)
    fn oracle(ell: u32) -> (u32, Vec<u32>) {
        let mut p = 10_001u32;
        loop {
            if p % ell == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                break;
            }
            p += 1;
        }
        let g0 = (2..p)
            .find(|&g| {
                let mut x = 1u64;
                let mut ord = 0;
                loop {
                    x = x * g as u64 % p as u64;
                    ord += 1;
                    if x == 1 {
                        break;
                    }
                }
                ord == p - 1
            })
            .unwrap();
        let r0 = pow(g0, ((p - 1) / ell) as u64, p);
        // all primitive roots of order ell are powers r0^k with gcd(k, ell) = 1
        let roots = (1..ell)
            .filter(|k| (1..=*k).filter(|d| k % d == 0 && ell % d == 0).count() == 1)
            .map(|k| pow(r0, k as u64, p))
            .collect();
        (p, roots)
    }

    #[test]
    fn matches_generator_oracle() {
        for ell in [3u32, 4, 5, 7] {
            let f = select_prime_and_root(ell, DEFAULT_PRIME_RANGE).unwrap();
            let (p, roots) = oracle(ell);
            assert_eq!(f.p, p);
            assert!(roots.contains(&f.r));
            assert_eq!(f.r, *roots.iter().min().unwrap());
            let powers: std::collections::HashSet<u32> =
                (0..ell).map(|k| pow(f.r, k as u64, f.p)).collect();
            assert_eq!(powers.len(), ell as usize);
            assert_eq!(pow(f.r, ell as u64, f.p), 1);
        }
        assert_eq!(
            select_prime_and_root(3, DEFAULT_PRIME_RANGE).unwrap().p,
            10009
        );
    }

    #[test]
    fn deterministic_and_errors() {
        let a = select_prime_and_root(5, DEFAULT_PRIME_RANGE).unwrap();
        assert_eq!(a, select_prime_and_root(5, DEFAULT_PRIME_RANGE).unwrap());
        assert!(select_prime_and_root(1, DEFAULT_PRIME_RANGE).is_err());
        assert!(select_prime_and_root(3, (24, 30)).is_err());
        assert!(select_prime_and_root(3, (30, 20)).is_err());
        assert!(FieldParams::for_prime(7, 4).is_err());
        assert_eq!(FieldParams::for_prime(7, 3).unwrap().r, 2);
    }

    #[test]
    fn arithmetic() {
        let p = 10007;
        for a in [1u32, 2, 5000, 10006] {
            assert_eq!(mul(a, inv(a, p), p), 1);
            assert_eq!(add(a, neg(a, p), p), 0);
            assert_eq!(sub(a, a, p), 0);
        }
        assert_eq!(from_i64(-1, p), p - 1);
    }
}
