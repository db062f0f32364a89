//! Rational g-nodal curves: the line with g pairs of points glued. A line
//! bundle of degree d is given by one multiplier per node. Its sections are
//! the polynomials of degree at most d with `a_j f(p_j) = f(q_j)`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::ff::{self, FieldParams};
use crate::linalg::{self, MatrixFp};
use crate::poly::{evaluate_at, poly_mul, Poly};
use crate::rng::{next_residue, splitmix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodalRationalCurve {
    pub g: usize,
    /// Preimages `(p_j, q_j)` of the nodes.
    pub nodes: Vec<(u32, u32)>,
    pub field: FieldParams,
}

impl NodalRationalCurve {
    pub fn new(nodes: Vec<(u32, u32)>, field: FieldParams) -> Result<Self> {
        let g = nodes.len();
        if g < 2 {
            return param(format!("genus must be at least 2, got {g}"));
        }
        if field.p as u64 <= 2 * g as u64 {
            return param(format!("prime {} too small for genus {g}", field.p));
        }
        let mut seen = HashSet::new();
        for &(a, b) in &nodes {
            if a >= field.p || b >= field.p {
                return param("node coordinate not reduced mod p");
            }
            if !seen.insert(a) || !seen.insert(b) {
                return param("node preimages must be pairwise distinct");
            }
        }
        Ok(NodalRationalCurve { g, nodes, field })
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    /// Same curve with the nodes listed in a different order.
    pub fn permute_nodes(&self, perm: &[usize]) -> Self {
        NodalRationalCurve {
            g: self.g,
            nodes: perm.iter().map(|&j| self.nodes[j]).collect(),
            field: self.field,
        }
    }
}

/// 2g distinct points drawn from SplitMix64 as `next_u64() mod p`, repeats
/// rejected, assigned in the order `p_1, q_1, p_2, q_2, ...`.
pub fn random_curve(g: usize, field: FieldParams, seed: u64) -> Result<NodalRationalCurve> {
    if g < 2 {
        return param(format!("genus must be at least 2, got {g}"));
    }
    if field.p as u64 <= 2 * g as u64 {
        return param(format!("prime {} too small for genus {g}", field.p));
    }
    let mut rng = splitmix(seed);
    let mut seen = HashSet::new();
    let mut pts = Vec::with_capacity(2 * g);
    while pts.len() < 2 * g {
        let x = next_residue(&mut rng, field.p);
        if seen.insert(x) {
            pts.push(x);
        }
    }
    let nodes = pts.chunks(2).map(|c| (c[0], c[1])).collect();
    NodalRationalCurve::new(nodes, field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleData {
    pub degree: i64,
    pub multipliers: Vec<u32>,
}

impl LineBundleData {
    pub fn trivial(g: usize) -> Self {
        LineBundleData {
            degree: 0,
            multipliers: vec![1; g],
        }
    }

    pub fn tensor(&self, other: &LineBundleData, p: u32) -> Self {
        tensor(self, other, p)
    }

    pub fn dual(&self, p: u32) -> Self {
        LineBundleData {
            degree: -self.degree,
            multipliers: self.multipliers.iter().map(|&a| ff::inv(a, p)).collect(),
        }
    }

    /// `k`-th tensor power; negative `k` uses the dual.
    pub fn pow(&self, k: i64, p: u32) -> Self {
        let base = if k < 0 { self.dual(p) } else { self.clone() };
        let e = k.unsigned_abs();
        LineBundleData {
            degree: self.degree * k,
            multipliers: base.multipliers.iter().map(|&a| ff::pow(a, e, p)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0 && self.multipliers.iter().all(|&a| a == 1)
    }
}

pub fn tensor(a: &LineBundleData, b: &LineBundleData, p: u32) -> LineBundleData {
    assert_eq!(
        a.multipliers.len(),
        b.multipliers.len(),
        "bundles on different curves"
    );
    LineBundleData {
        degree: a.degree + b.degree,
        multipliers: a
            .multipliers
            .iter()
            .zip(&b.multipliers)
            .map(|(&x, &y)| ff::mul(x, y, p))
            .collect(),
    }
}

/// Multipliers of the dualizing sheaf:
/// `a_j = ∏_{i≠j} (q_j−p_i)(q_j−q_i) / ((p_j−p_i)(p_j−q_i))`.
pub fn canonical_multipliers(curve: &NodalRationalCurve) -> LineBundleData {
    let p = curve.p();
    let mut mult = Vec::with_capacity(curve.g);
    for (j, &(pj, qj)) in curve.nodes.iter().enumerate() {
        let mut num = 1;
        let mut den = 1;
        for (i, &(pi, qi)) in curve.nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            num = ff::mul(num, ff::mul(ff::sub(qj, pi, p), ff::sub(qj, qi, p), p), p);
            den = ff::mul(den, ff::mul(ff::sub(pj, pi, p), ff::sub(pj, qi, p), p), p);
        }
        mult.push(ff::mul(num, ff::inv(den, p), p));
    }
    LineBundleData {
        degree: 2 * curve.g as i64 - 2,
        multipliers: mult,
    }
}

/// Degree-0 bundle with multiplier `r` on the nodes in `support` (0-based) and 1 elsewhere.
pub fn torsion_bundle(
    curve: &NodalRationalCurve,
    field: &FieldParams,
    support: &[usize],
) -> Result<LineBundleData> {
    if support.is_empty() {
        return param("empty torsion support gives the trivial bundle");
    }
    let mut mult = vec![1; curve.g];
    for &j in support {
        if j >= curve.g {
            return param(format!("node index {j} out of range"));
        }
        mult[j] = field.r;
    }
    Ok(LineBundleData {
        degree: 0,
        multipliers: mult,
    })
}

/// Torsion bundle supported on every node, of exact order ℓ.
pub fn full_torsion_bundle(curve: &NodalRationalCurve) -> LineBundleData {
    let all: Vec<usize> = (0..curve.g).collect();
    torsion_bundle(curve, &curve.field, &all).expect("nonempty support")
}

/// Degree zero with every multiplier an `ell`-th root of unity.
pub fn is_torsion(bundle: &LineBundleData, ell: u32, p: u32) -> bool {
    bundle.degree == 0
        && bundle
            .multipliers
            .iter()
            .all(|&a| ff::pow(a, ell as u64, p) == 1)
}

/// Bundle of the given degree with uniformly random nonzero multipliers.
pub fn random_bundle(curve: &NodalRationalCurve, degree: i64, seed: u64) -> LineBundleData {
    let p = curve.p();
    let mut rng = splitmix(seed);
    let multipliers = (0..curve.g)
        .map(|_| loop {
            let a = next_residue(&mut rng, p);
            if a != 0 {
                break a;
            }
        })
        .collect();
    LineBundleData {
        degree,
        multipliers,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub bundle: LineBundleData,
    /// Rows are coefficient vectors (degree `0..=d`) in reduced echelon form.
    pub basis: MatrixFp,
    pub pivots: Vec<usize>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn degree(&self) -> i64 {
        self.bundle.degree
    }

    /// Length of the coefficient vectors.
    pub fn coeff_len(&self) -> usize {
        self.basis.cols()
    }

    pub fn section(&self, i: usize) -> Poly {
        Poly::from_coeffs(self.basis.row(i).to_vec())
    }

    pub fn sections(&self) -> Vec<Poly> {
        (0..self.dim()).map(|i| self.section(i)).collect()
    }

    /// Coordinates of a member of the space in the echelon basis.
    pub fn coords(&self, f: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| f[c]).collect()
    }

    pub fn contains(&self, curve: &NodalRationalCurve, f: &Poly) -> bool {
        satisfies(curve, &self.bundle, f)
    }
}

pub fn satisfies(curve: &NodalRationalCurve, bundle: &LineBundleData, f: &Poly) -> bool {
    let p = curve.p();
    curve
        .nodes
        .iter()
        .zip(&bundle.multipliers)
        .all(|(&(a, b), &m)| ff::mul(m, evaluate_at(f, a, p), p) == evaluate_at(f, b, p))
}

/// Kernel of the `g × (d+1)` system `a_j f(p_j) − f(q_j) = 0`.
pub fn section_space(curve: &NodalRationalCurve, bundle: &LineBundleData) -> SectionSpace {
    let p = curve.p();
    if bundle.degree < 0 {
        return SectionSpace {
            bundle: bundle.clone(),
            basis: MatrixFp::zeros(0, 0, p),
            pivots: vec![],
        };
    }
    let n = bundle.degree as usize + 1;
    let mut c = MatrixFp::zeros(curve.g, n, p);
    for (j, (&(a, b), &m)) in curve.nodes.iter().zip(&bundle.multipliers).enumerate() {
        let (mut pa, mut pb) = (1u32, 1u32);
        for e in 0..n {
            c.set(j, e, ff::sub(ff::mul(m, pa, p), pb, p));
            pa = ff::mul(pa, a, p);
            pb = ff::mul(pb, b, p);
        }
    }
    let k = linalg::kernel_basis(&c);
    let (basis, pivots) = linalg::rref(&k.transpose());
    SectionSpace {
        bundle: bundle.clone(),
        basis,
        pivots,
    }
}

/// Matrix of `V ⊗ W → coefficients`; column `i·dim W + j` holds `f_i·h_j`.
pub fn multiplication_matrix(v: &SectionSpace, w: &SectionSpace) -> MatrixFp {
    let p = v.basis.p();
    let n = v.coeff_len() + w.coeff_len() - 1;
    let mut m = MatrixFp::zeros(n, v.dim() * w.dim(), p);
    for i in 0..v.dim() {
        let f = v.section(i);
        for j in 0..w.dim() {
            let fh = poly_mul(&f, &w.section(j), p);
            for (e, &c) in fh.coeffs.iter().enumerate() {
                m.set(e, i * w.dim() + j, c);
            }
        }
    }
    m
}

/// Serializable curve with named bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub g: usize,
    pub p: u32,
    pub ell: u32,
    pub r: u32,
    pub nodes: Vec<[u32; 2]>,
    pub bundles: BTreeMap<String, LineBundleData>,
}

impl CurveFile {
    pub fn new(curve: &NodalRationalCurve, bundles: &[(&str, &LineBundleData)]) -> Self {
        CurveFile {
            g: curve.g,
            p: curve.field.p,
            ell: curve.field.ell,
            r: curve.field.r,
            nodes: curve.nodes.iter().map(|&(a, b)| [a, b]).collect(),
            bundles: bundles
                .iter()
                .map(|(n, b)| (n.to_string(), (*b).clone()))
                .collect(),
        }
    }

    pub fn curve(&self) -> Result<NodalRationalCurve> {
        let field = FieldParams {
            p: self.p,
            ell: self.ell,
            r: self.r,
        };
        if !ff::is_prime(self.p) || !ff::has_exact_order(self.r, self.ell, self.p) {
            return param("inconsistent field parameters");
        }
        NodalRationalCurve::new(self.nodes.iter().map(|n| (n[0], n[1])).collect(), field)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::SyzError::Param(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{select_prime_and_root, DEFAULT_PRIME_RANGE};

    fn field(ell: u32) -> FieldParams {
        select_prime_and_root(ell, DEFAULT_PRIME_RANGE).unwrap()
    }

    #[test]
    fn random_curve_small_and_deterministic() {
        let f7 = FieldParams::for_prime(7, 2).unwrap();
        let c = random_curve(2, f7, 5).unwrap();
        let mut v: Vec<u32> = c.nodes.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 4);
        assert_eq!(c, random_curve(2, f7, 5).unwrap());
        assert!(random_curve(4, f7, 1).is_err());

        let c = random_curve(10, field(2), 99).unwrap();
        let mut v: Vec<u32> = c.nodes.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 20);
    }

    #[test]
    fn canonical_multipliers_small() {
        let f7 = FieldParams::for_prime(7, 2).unwrap();
        let c = NodalRationalCurve::new(vec![(0, 1), (2, 3)], f7).unwrap();
        // a1 = (1-2)(1-3)/((0-2)(0-3)) = 2/6 = 5, a2 = (3-0)(3-1)/((2-0)(2-1)) = 6/2 = 3 in F_7
        assert_eq!(canonical_multipliers(&c).multipliers, vec![5, 3]);
        let swapped = NodalRationalCurve::new(vec![(1, 0), (2, 3)], f7).unwrap();
        let a = canonical_multipliers(&c).multipliers[0];
        let b = canonical_multipliers(&swapped).multipliers[0];
        assert_eq!(ff::mul(a, b, 7), 1);
    }

    #[test]
    fn canonical_space_has_dimension_g() {
        for g in 2..=12 {
            for s in 0..20 {
                let c = random_curve(g, field(3), 1000 * g as u64 + s).unwrap();
                assert_eq!(section_space(&c, &canonical_multipliers(&c)).dim(), g);
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let p = 7;
        let f7 = FieldParams::for_prime(7, 3).unwrap();
        let a = LineBundleData {
            degree: 2,
            multipliers: vec![5, 3],
        };
        assert_eq!(a.tensor(&LineBundleData::trivial(2), p), a);
        let r = f7.r;
        let t = LineBundleData {
            degree: 0,
            multipliers: vec![r, r],
        };
        assert_eq!(
            a.tensor(&t, p).multipliers,
            vec![ff::mul(5, r, p), ff::mul(3, r, p)]
        );
        assert!(a.tensor(&a.dual(p), p).is_trivial());
        assert_eq!(a.pow(-2, p), a.dual(p).pow(2, p));
    }

    #[test]
    fn torsion_examples() {
        let f = field(3);
        let c = random_curve(5, f, 1).unwrap();
        let eta = full_torsion_bundle(&c);
        assert!(eta.multipliers.iter().all(|&z| z == f.r));
        assert!(is_torsion(&eta, 3, f.p));
        assert!(!eta.is_trivial());
        assert!(!eta.pow(2, f.p).is_trivial());
        assert!(eta.pow(3, f.p).is_trivial());
        let odd = LineBundleData {
            degree: 0,
            multipliers: vec![2, 1, 1, 1, 1],
        };
        assert!(!is_torsion(&odd, 3, f.p));
        assert!(torsion_bundle(&c, &f, &[]).is_err());
        assert_eq!(
            torsion_bundle(&c, &f, &[1]).unwrap().multipliers,
            vec![1, f.r, 1, 1, 1]
        );
    }

    #[test]
    fn section_space_examples() {
        let f = field(3);
        let c = random_curve(6, f, 4).unwrap();
        assert_eq!(section_space(&c, &LineBundleData::trivial(6)).dim(), 1);
        let eta = torsion_bundle(&c, &f, &[2]).unwrap();
        assert_eq!(section_space(&c, &eta).dim(), 0);
        let l = canonical_multipliers(&c).tensor(&full_torsion_bundle(&c), f.p);
        let v = section_space(&c, &l);
        assert_eq!(v.dim(), 5);
        for s in v.sections() {
            assert!(v.contains(&c, &s));
        }
        let neg = LineBundleData {
            degree: -1,
            multipliers: vec![1; 6],
        };
        assert_eq!(section_space(&c, &neg).dim(), 0);
    }

    #[test]
    fn riemann_roch_for_large_degree() {
        let f = field(2);
        for s in 0..50u64 {
            let g = 2 + (s % 9) as usize;
            let c = random_curve(g, f, s).unwrap();
            let d = 2 * g as i64 - 1 + (s % 4) as i64;
            let b = random_bundle(&c, d, s + 77);
            assert_eq!(section_space(&c, &b).dim() as i64, d - g as i64 + 1);
        }
    }

    #[test]
    fn multiplication_matrix_examples() {
        let f = field(3);
        let c = random_curve(4, f, 2).unwrap();
        let o = section_space(&c, &LineBundleData::trivial(4));
        assert_eq!(multiplication_matrix(&o, &o), MatrixFp::identity(1, f.p));

        let c = random_curve(10, f, 3).unwrap();
        let k = canonical_multipliers(&c);
        let eta = full_torsion_bundle(&c);
        let v = section_space(&c, &k.tensor(&eta, f.p));
        let w = section_space(&c, &k.tensor(&eta, f.p));
        let m = multiplication_matrix(&v, &w);
        let target = k.pow(2, f.p).tensor(&eta.pow(2, f.p), f.p);
        for j in 0..m.cols() {
            assert!(satisfies(&c, &target, &Poly::from_coeffs(m.column(j))));
        }
        assert_eq!(m.cols() - linalg::rank(&m), 54);
    }

    #[test]
    fn json_round_trip() {
        let c = random_curve(3, field(5), 8).unwrap();
        let k = canonical_multipliers(&c);
        let file = CurveFile::new(&c, &[("K", &k)]);
        let back = CurveFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.curve().unwrap(), c);
    }
}
