//! Univariate polynomials over F_p with a declared degree bound.

use crate::ff;

/// Coefficient vector indexed by degree `0..=bound`. Leading zeros are allowed, so
/// all polynomials with the same bound live in one coordinate space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(bound: usize) -> Self {
        Poly {
            coeffs: vec![0; bound + 1],
        }
    }

    pub fn constant(c: u32, bound: usize) -> Self {
        let mut f = Self::zero(bound);
        f.coeffs[0] = c;
        f
    }

    pub fn monomial(e: usize, bound: usize) -> Self {
        let mut f = Self::zero(bound.max(e));
        f.coeffs[e] = 1;
        f
    }

    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient vector must be nonempty");
        Poly { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Actual degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    fn trimmed(&self) -> Vec<u32> {
        match self.degree() {
            Some(d) => self.coeffs[..=d].to_vec(),
            None => Vec::new(),
        }
    }
}

/// Schoolbook product; the bound of the result is the sum of the bounds.
pub fn poly_mul(f: &Poly, h: &Poly, p: u32) -> Poly {
    let p64 = p as u64;
    let mut acc = vec![0u64; f.coeffs.len() + h.coeffs.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (s, &b) in acc[i..].iter_mut().zip(&h.coeffs) {
            *s += a as u64 * b as u64;
        }
    }
    Poly {
        coeffs: acc.into_iter().map(|s| (s % p64) as u32).collect(),
    }
}

pub fn evaluate_at(f: &Poly, x: u32, p: u32) -> u32 {
    f.coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| ff::add(ff::mul(acc, x, p), c, p))
}

fn rem_in_place(a: &mut Vec<u32>, b: &[u32], p: u32) {
    let db = b.len() - 1;
    let lead_inv = ff::inv(b[db], p);
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = ff::mul(top, lead_inv, p);
            let shift = a.len() - 1 - db;
            for (k, &bk) in b.iter().enumerate() {
                a[shift + k] = ff::sub(a[shift + k], ff::mul(f, bk, p), p);
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic greatest common divisor by Euclid's algorithm. `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Poly, h: &Poly, p: u32) -> Poly {
    let mut a = f.trimmed();
    let mut b = h.trimmed();
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return Poly::zero(0);
    }
    let s = ff::inv(*a.last().unwrap(), p);
    Poly {
        coeffs: a.iter().map(|&c| ff::mul(c, s, p)).collect(),
    }
}

/// Remainder of `f` modulo a nonzero `h`, trimmed.
pub fn poly_rem(f: &Poly, h: &Poly, p: u32) -> Poly {
    let b = h.trimmed();
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut a = f.trimmed();
    rem_in_place(&mut a, &b, p);
    if a.is_empty() {
        Poly::zero(0)
    } else {
        Poly { coeffs: a }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{next_residue, splitmix};
    use proptest::prelude::*;

    const P: u32 = 10007;

    fn random_poly(bound: usize, seed: u64) -> Poly {
        let mut g = splitmix(seed);
        Poly::from_coeffs((0..=bound).map(|_| next_residue(&mut g, P)).collect())
    }

    #[test]
    fn small_products() {
        let f = random_poly(5, 1);
        assert_eq!(poly_mul(&f, &Poly::constant(1, 0), P), f);
        let a = Poly::from_coeffs(vec![1, 1]);
        let b = Poly::from_coeffs(vec![6, 1]);
        assert_eq!(poly_mul(&a, &b, 7).coeffs, vec![6, 0, 1]);
    }

    #[test]
    fn product_matches_interpolation_points() {
        let f = random_poly(34, 2);
        let h = random_poly(34, 3);
        let fh = poly_mul(&f, &h, P);
        assert_eq!(fh.bound(), 68);
        // a degree-68 polynomial is determined by 69 values; check 70 points
        for x in 0..70u32 {
            assert_eq!(
                evaluate_at(&fh, x, P),
                ff::mul(evaluate_at(&f, x, P), evaluate_at(&h, x, P), P)
            );
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(evaluate_at(&Poly::constant(5, 3), 123, P), 5);
        assert_eq!(evaluate_at(&Poly::monomial(2, 2), 3, 7), 2);
        let f = random_poly(20, 4);
        let x = 4321;
        let naive = f.coeffs.iter().enumerate().fold(0, |acc, (e, &c)| {
            ff::add(acc, ff::mul(c, ff::pow(x, e as u64, P), P), P)
        });
        assert_eq!(evaluate_at(&f, x, P), naive);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let lin = Poly::from_coeffs(vec![P - 17, 1]);
        let f = poly_mul(&lin, &random_poly(6, 5), P);
        let h = poly_mul(&lin, &random_poly(4, 6), P);
        let g = poly_gcd(&f, &h, P);
        assert!(g.degree().unwrap() >= 1);
        assert!(poly_rem(&g, &lin, P).is_zero());
        assert_eq!(poly_gcd(&Poly::zero(3), &Poly::zero(2), P).degree(), None);
        assert_eq!(poly_gcd(&Poly::zero(3), &lin, P), lin);
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(a in proptest::collection::vec(0u32..P, 1..12),
                                        b in proptest::collection::vec(0u32..P, 1..12),
                                        x in 0u32..P) {
            let f = Poly::from_coeffs(a);
            let h = Poly::from_coeffs(b);
            prop_assert_eq!(evaluate_at(&poly_mul(&f, &h, P), x, P),
                            ff::mul(evaluate_at(&f, x, P), evaluate_at(&h, x, P), P));
        }

        #[test]
        fn gcd_is_monic_and_divides(a in proptest::collection::vec(0u32..P, 1..10),
                                    b in proptest::collection::vec(0u32..P, 1..10),
                                    c in proptest::collection::vec(0u32..P, 1..4)) {
            let common = Poly::from_coeffs(c);
            let f = poly_mul(&Poly::from_coeffs(a), &common, P);
            let h = poly_mul(&Poly::from_coeffs(b), &common, P);
            let g = poly_gcd(&f, &h, P);
            if let Some(d) = g.degree() {
                prop_assert_eq!(g.coeffs[d], 1);
                prop_assert!(poly_rem(&f, &g, P).is_zero());
                prop_assert!(poly_rem(&h, &g, P).is_zero());
                if !common.is_zero() {
                    prop_assert!(poly_rem(&g, &common, P).is_zero());
                }
            } else {
                prop_assert!(f.is_zero() && h.is_zero());
            }
        }
    }
}
