//! Koszul complexes of section spaces.
//!
//! Wedge bases are ordered lexicographically. The differential sends
//! `(S = {i_0 < … < i_{p−1}}, w)` to `Σ_t (−1)^t (S∖{i_t}) ⊗ f_{i_t}·w`. Targets
//! are raw coefficient spaces (or quotient coordinates in the artinian case),
//! so every kernel is computed without first solving for H⁰ coordinates.

use std::collections::HashMap;

use crate::curve::{
    multiplication_matrix, section_space, LineBundleData, NodalRationalCurve, SectionSpace,
};
use crate::error::{param, Result, SyzError};
use crate::ff;
use crate::linalg::{self, check_size, MatrixFp, RowReducer};
use crate::poly::{poly_mul, Poly};

/// Default cap on `rows × cols` for directly assembled strands.
pub const DEFAULT_DIRECT_LIMIT: u128 = 50_000_000;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// All `k`-subsets of `{0..n−1}` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    pub n: usize,
    pub k: usize,
    pub subsets: Vec<Vec<usize>>,
    binom: Vec<Vec<u64>>,
}

impl WedgeBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let mut subsets = Vec::with_capacity(binomial(n, k) as usize);
        if k <= n {
            let mut cur: Vec<usize> = (0..k).collect();
            loop {
                subsets.push(cur.clone());
                let Some(t) = (0..k).rev().find(|&t| cur[t] < n - k + t) else {
                    break;
                };
                cur[t] += 1;
                for s in t + 1..k {
                    cur[s] = cur[s - 1] + 1;
                }
            }
        }
        let binom = (0..=n)
            .map(|a| (0..=k).map(|b| binomial(a, b)).collect())
            .collect();
        WedgeBasis {
            n,
            k,
            subsets,
            binom,
        }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Lexicographic rank of a sorted `k`-subset.
    pub fn index_of(&self, s: &[usize]) -> usize {
        debug_assert_eq!(s.len(), self.k);
        let mut idx = 0u64;
        let mut start = 0;
        for (t, &x) in s.iter().enumerate() {
            for y in start..x {
                idx += self.binom[self.n - 1 - y][self.k - 1 - t];
            }
            start = x + 1;
        }
        idx as usize
    }
}

/// `∧^p V' ⊗ A → ∧^{p−1} V' ⊗ B` determined by the products `v_j · a ∈ B`.
/// Rows are indexed by `(S', c)` as `rank(S')·dim B + c`, and columns by
/// `(S, a)` as `rank(S)·dim A + a`.
#[derive(Clone, Debug)]
pub struct KoszulMap {
    p: u32,
    wedge: usize,
    dim_v: usize,
    dim_src: usize,
    dim_tgt: usize,
    /// `table[(j·dim_src + a)·dim_tgt + c]` = coordinate `c` of `v_j · a`.
    table: Vec<u32>,
    src: WedgeBasis,
    tgt: WedgeBasis,
}

impl KoszulMap {
    pub fn new(
        p: u32,
        wedge: usize,
        dim_v: usize,
        dim_src: usize,
        dim_tgt: usize,
        table: Vec<u32>,
    ) -> Self {
        assert!(wedge >= 1, "wedge degree must be positive");
        assert_eq!(table.len(), dim_v * dim_src * dim_tgt);
        KoszulMap {
            p,
            wedge,
            dim_v,
            dim_src,
            dim_tgt,
            table,
            src: WedgeBasis::new(dim_v, wedge),
            tgt: WedgeBasis::new(dim_v, wedge - 1),
        }
    }

    /// Products of sections: `v_j · w_a` as raw coefficient vectors.
    pub fn from_sections(v: &[Poly], w: &[Poly], wedge: usize, p: u32) -> Self {
        let dim_tgt = match (v.first(), w.first()) {
            (Some(f), Some(h)) => f.coeffs.len() + h.coeffs.len() - 1,
            _ => 0,
        };
        let mut table = Vec::with_capacity(v.len() * w.len() * dim_tgt);
        for f in v {
            for h in w {
                table.extend(poly_mul(f, h, p).coeffs);
            }
        }
        Self::new(p, wedge, v.len(), w.len(), dim_tgt, table)
    }

    pub fn rows(&self) -> usize {
        self.tgt.len() * self.dim_tgt
    }

    pub fn cols(&self) -> usize {
        self.src.len() * self.dim_src
    }

    pub fn fill_row(&self, r: usize, buf: &mut [u32]) {
        buf.iter_mut().for_each(|x| *x = 0);
        let s_prime = &self.tgt.subsets[r / self.dim_tgt];
        let c = r % self.dim_tgt;
        let mut s = Vec::with_capacity(self.wedge);
        let mut t = 0;
        for j in 0..self.dim_v {
            if t < s_prime.len() && s_prime[t] == j {
                t += 1;
                continue;
            }
            // j sits at position t of S = S' ∪ {j}
            s.clear();
            s.extend_from_slice(&s_prime[..t]);
            s.push(j);
            s.extend_from_slice(&s_prime[t..]);
            let base = self.src.index_of(&s) * self.dim_src;
            let negate = t % 2 == 1;
            for a in 0..self.dim_src {
                let v = self.table[(j * self.dim_src + a) * self.dim_tgt + c];
                buf[base + a] = if negate { ff::neg(v, self.p) } else { v };
            }
        }
    }

    pub fn to_matrix(&self, limit: u128) -> Result<MatrixFp> {
        check_size(self.rows(), self.cols(), limit)?;
        let mut m = MatrixFp::zeros(self.rows(), self.cols(), self.p);
        for r in 0..self.rows() {
            self.fill_row(r, m.row_mut(r));
        }
        Ok(m)
    }

    pub fn rank(&self, limit: u128) -> Result<usize> {
        check_size(self.rows(), self.cols(), limit)?;
        if self.cols() > self.rows() {
            return Ok(linalg::rank(&self.to_matrix(limit)?));
        }
        let mut red = RowReducer::new(self.cols(), self.p);
        let mut buf = vec![0u32; self.cols()];
        for r in 0..self.rows() {
            self.fill_row(r, &mut buf);
            red.push_row(&buf);
            if red.rank() == self.cols() {
                break;
            }
        }
        Ok(red.rank())
    }

    pub fn kernel_dim(&self, limit: u128) -> Result<usize> {
        Ok(self.cols() - self.rank(limit)?)
    }
}

/// Matrix of `∧^p V ⊗ W → ∧^{p−1} V ⊗ coefficients(deg V + deg W)`.
pub fn koszul_differential_on_sections(
    v: &SectionSpace,
    w: &SectionSpace,
    p: usize,
    limit: u128,
) -> Result<MatrixFp> {
    if p == 0 {
        return param("strand index must be at least 1");
    }
    KoszulMap::from_sections(&v.sections(), &w.sections(), p, v.basis.p()).to_matrix(limit)
}

/// Differential on polynomial coefficients, `∧^p V ⊗ F_p[z]_{≤bound} → ∧^{p−1} V ⊗ F_p[z]_{≤bound+deg V}`.
pub fn lifted_differential(
    v: &SectionSpace,
    bound: usize,
    p: usize,
    limit: u128,
) -> Result<MatrixFp> {
    let mono: Vec<Poly> = (0..=bound).map(|e| Poly::monomial(e, bound)).collect();
    KoszulMap::from_sections(&v.sections(), &mono, p, v.basis.p()).to_matrix(limit)
}

fn kernel_of_strand(v: &SectionSpace, w: &SectionSpace, p: usize, limit: u128) -> Result<usize> {
    if p == 0 {
        return Ok(w.dim());
    }
    if w.dim() == 0 || v.dim() < p {
        return Ok(0);
    }
    KoszulMap::from_sections(&v.sections(), &w.sections(), p, v.basis.p()).kernel_dim(limit)
}

/// `dim K_{p,1}(C; F, L)` for `h⁰(F) = 0`, where it is a plain kernel.
pub fn koszul_dim_twisted(
    curve: &NodalRationalCurve,
    f: &LineBundleData,
    l: &LineBundleData,
    p: usize,
    limit: u128,
) -> Result<usize> {
    if section_space(curve, f).dim() != 0 {
        return Err(SyzError::Param(
            "twisting bundle has sections; use the ring computation".into(),
        ));
    }
    let q = curve.p();
    let v = section_space(curve, l);
    let w = section_space(curve, &f.tensor(l, q));
    kernel_of_strand(&v, &w, p, limit)
}

/// `(dim K_{i,1}, dim K_{i−1,2})` of a twisted module with `h⁰(F) = 0`, both computed directly.
pub fn twisted_strand_pair(
    curve: &NodalRationalCurve,
    f: &LineBundleData,
    l: &LineBundleData,
    i: usize,
    limit: u128,
) -> Result<(usize, usize)> {
    if i == 0 {
        return param("strand index must be at least 1");
    }
    let q = curve.p();
    if section_space(curve, f).dim() != 0 {
        return param("twisting bundle has sections");
    }
    let v = section_space(curve, l);
    let w1 = section_space(curve, &f.tensor(l, q));
    let w2 = section_space(curve, &f.tensor(&l.pow(2, q), q));
    let k1 = kernel_of_strand(&v, &w1, i, limit)?;
    let rank_in = binomial(v.dim(), i) as usize * w1.dim() - k1;
    let ker2 = kernel_of_strand(&v, &w2, i - 1, limit)?;
    Ok((k1, ker2 - rank_in))
}

/// `dim K_{p,1}(C, L)` for the section ring: kernel minus the image of `∧^{p+1} V`.
fn ring_k1(v: &SectionSpace, p: usize, limit: u128) -> Result<usize> {
    if p == 0 {
        return Ok(0);
    }
    let ker = kernel_of_strand(v, v, p, limit)?;
    Ok(ker - binomial(v.dim(), p + 1) as usize)
}

/// Alternating sum `Σ_i (−1)^i C(nvars, i) h(n − i)` over the degree-`n` strand.
pub fn strand_euler_char(nvars: usize, n: usize, h: impl Fn(usize) -> i64) -> i64 {
    (0..=n.min(nvars))
        .map(|i| {
            let s = if i % 2 == 0 { 1 } else { -1 };
            s * binomial(nvars, i) as i64 * h(n - i)
        })
        .sum()
}

/// Hilbert function `q ↦ h⁰(L^q)` measured on the curve.
pub fn measured_hilbert(curve: &NodalRationalCurve, l: &LineBundleData, upto: usize) -> Vec<i64> {
    let p = curve.p();
    (0..=upto)
        .map(|q| section_space(curve, &l.pow(q as i64, p)).dim() as i64)
        .collect()
}

fn check_row_three_vanishes(curve: &NodalRationalCurve, l: &LineBundleData) -> Result<()> {
    let p = curve.p();
    let k = crate::curve::canonical_multipliers(curve);
    if section_space(curve, &k.tensor(&l.dual(p), p)).dim() != 0 {
        return param("K ⊗ L^-1 has sections; the third row need not vanish");
    }
    Ok(())
}

/// Graded Betti number `b_{p,q}` of the section ring of `L`, `q ∈ {1, 2}`.
/// Row 2 comes from the degree-`(p+2)` strand: `b_{p,2} = b_{p+1,1} + (−1)^p χ_{p+2}`.
pub fn koszul_dim_ring(
    curve: &NodalRationalCurve,
    l: &LineBundleData,
    p: usize,
    q: usize,
    limit: u128,
) -> Result<usize> {
    let v = section_space(curve, l);
    match q {
        1 => ring_k1(&v, p, limit),
        2 => {
            check_row_three_vanishes(curve, l)?;
            let h = measured_hilbert(curve, l, p + 2);
            let chi = strand_euler_char(v.dim(), p + 2, |t| h[t]);
            let k = ring_k1(&v, p + 1, limit)? as i64;
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let b = k + sign * chi;
            if b < 0 {
                return Err(SyzError::Invalid(format!(
                    "negative Betti number {b} from strand identity"
                )));
            }
            Ok(b as usize)
        }
        _ => param(format!("row {q} not supported")),
    }
}

/// `b_{p,2}` from an explicit kernel computation: `dim ker d_{p,2} − rank d_{p+1,1}`.
pub fn ring_k2_direct(
    curve: &NodalRationalCurve,
    l: &LineBundleData,
    p: usize,
    limit: u128,
) -> Result<usize> {
    let q = curve.p();
    let v = section_space(curve, l);
    let w2 = section_space(curve, &l.pow(2, q));
    let n = v.dim();
    let ker_next = kernel_of_strand(&v, &v, p + 1, limit)?;
    let rank_in = binomial(n, p + 1) as usize * n - ker_next;
    let ker = kernel_of_strand(&v, &w2, p, limit)?;
    Ok(ker - rank_in)
}

/// Row 1 of the Betti table, `K_{i,1}` for `i = 0..len`. Once an entry vanishes,
/// all later entries vanish too, so they are not computed.
pub fn ring_row1(
    curve: &NodalRationalCurve,
    l: &LineBundleData,
    len: usize,
    limit: u128,
) -> Result<Vec<usize>> {
    let v = section_space(curve, l);
    let mut row = vec![0; len];
    for (i, slot) in row.iter_mut().enumerate().skip(1) {
        *slot = ring_k1(&v, i, limit)?;
        if *slot == 0 {
            break;
        }
    }
    Ok(row)
}

/// Symmetric-power monomials: nondecreasing index sequences of length `d` in lexicographic order.
pub fn sym_monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, d, i, cur, out);
            cur.pop();
        }
    }
    rec(n, d, 0, &mut cur, &mut out);
    out
}

/// Degree-`d` piece of the ideal of the image of the curve under `|L|`.
#[derive(Clone, Debug)]
pub struct IdealPiece {
    pub d: usize,
    pub monomials: Vec<Vec<usize>>,
    /// Rows are ideal elements in monomial coordinates.
    pub basis: MatrixFp,
    /// Whether `Sym^d H⁰(L) → H⁰(L^d)` is onto.
    pub surjective: bool,
}

impl IdealPiece {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

pub fn ideal_graded(
    curve: &NodalRationalCurve,
    l: &LineBundleData,
    d: usize,
) -> Result<IdealPiece> {
    if !(1..=4).contains(&d) {
        return param(format!("ideal degree {d} out of range"));
    }
    let p = curve.p();
    let v = section_space(curve, l);
    let secs = v.sections();
    let monomials = sym_monomials(v.dim(), d);
    let len = (v.coeff_len() - 1) * d + 1;
    let mut cols = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let mut f = Poly::constant(1, 0);
        for &i in m {
            f = poly_mul(&f, &secs[i], p);
        }
        assert_eq!(f.coeffs.len(), len);
        cols.push(f.coeffs);
    }
    let map = MatrixFp::from_columns(len, p, &cols);
    let (r, piv) = linalg::rref(&map);
    let basis = linalg::kernel_from_rref(&r, &piv).transpose();
    let target = section_space(curve, &l.pow(d as i64, p)).dim();
    Ok(IdealPiece {
        d,
        monomials,
        basis,
        surjective: piv.len() == target,
    })
}

pub fn ideal_graded_dim(curve: &NodalRationalCurve, l: &LineBundleData, d: usize) -> Result<usize> {
    Ok(ideal_graded(curve, l, d)?.dim())
}

#[derive(Clone, Debug)]
pub struct LinearSyzygies {
    pub dim_v: usize,
    pub quadrics: IdealPiece,
    /// Each kernel element as a `dim V × dim I₂` matrix.
    pub tensors: Vec<MatrixFp>,
}

impl LinearSyzygies {
    pub fn dim(&self) -> usize {
        self.tensors.len()
    }
}

/// Kernel of `V ⊗ I₂ → Sym³ V`, `y_i ⊗ q ↦ y_i·q`.
pub fn linear_syzygy_space(
    curve: &NodalRationalCurve,
    l: &LineBundleData,
) -> Result<LinearSyzygies> {
    let p = curve.p();
    let quadrics = ideal_graded(curve, l, 2)?;
    let n = section_space(curve, l).dim();
    let k = quadrics.dim();
    let cubics = sym_monomials(n, 3);
    let cubic_index: HashMap<&[usize], usize> = cubics
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut map = MatrixFp::zeros(cubics.len(), n * k, p);
    for i in 0..n {
        for a in 0..k {
            for (mi, mono) in quadrics.monomials.iter().enumerate() {
                let c = quadrics.basis.get(a, mi);
                if c == 0 {
                    continue;
                }
                let mut m = mono.clone();
                m.push(i);
                m.sort_unstable();
                let row = cubic_index[m.as_slice()];
                let col = i * k + a;
                map.set(row, col, ff::add(map.get(row, col), c, p));
            }
        }
    }
    let ker = linalg::kernel_basis(&map);
    let tensors = (0..ker.cols())
        .map(|t| MatrixFp::from_vec(n, k, p, ker.column(t)))
        .collect();
    Ok(LinearSyzygies {
        dim_v: n,
        quadrics,
        tensors,
    })
}

/// Dimension of the span of the linear forms appearing in a linear syzygy.
pub fn syzygy_rank(gamma: &MatrixFp) -> Result<usize> {
    if gamma.is_zero() {
        return param("syzygy rank of the zero tensor is undefined");
    }
    Ok(linalg::rank(gamma))
}

/// Result of assembling the pairing `∧^{m+1}V × ∧^{m+1}V → V` over `2m+1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub m: usize,
    pub size: usize,
    pub symmetric: bool,
    pub skew: bool,
    pub zero_diagonal: bool,
    pub nonzero: bool,
}

impl SymmetryVerdict {
    /// Symmetric for even `m`, skew-symmetric with zero diagonal for odd `m`.
    pub fn passes(&self) -> bool {
        self.nonzero
            && if self.m % 2 == 0 {
                self.symmetric && !self.skew
            } else {
                self.skew && !self.symmetric && self.zero_diagonal
            }
    }
}

fn merge_sign(a: &[usize], b: &[usize]) -> i64 {
    let inversions: usize = a
        .iter()
        .map(|&x| b.iter().filter(|&&y| y < x).count())
        .sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ψ(y_I ⊗ y_J) = Σ_t (−1)^t y_{i_t} ⊗ (y_{I∖i_t} ∧ y_J)`, identified with a
/// linear form through `∧^{2m+1} V ≅ F`. Returns one integer matrix per variable.
pub fn middle_koszul_pairing(m: usize) -> Vec<Vec<Vec<i64>>> {
    let n = 2 * m + 1;
    let basis = WedgeBasis::new(n, m + 1);
    let size = basis.len();
    let mut psi = vec![vec![vec![0i64; size]; size]; n];
    for (a, i_set) in basis.subsets.iter().enumerate() {
        for (b, j_set) in basis.subsets.iter().enumerate() {
            for (t, &it) in i_set.iter().enumerate() {
                let rest: Vec<usize> = i_set.iter().copied().filter(|&x| x != it).collect();
                if rest.iter().any(|x| j_set.contains(x)) {
                    continue;
                }
                let s = if t % 2 == 0 { 1 } else { -1 };
                psi[it][a][b] += s * merge_sign(&rest, j_set);
            }
        }
    }
    psi
}

pub fn middle_koszul_symmetry_check(m: usize) -> Result<SymmetryVerdict> {
    if m == 0 {
        return param("m must be at least 1");
    }
    let psi = middle_koszul_pairing(m);
    let size = psi[0].len();
    let all = |f: &dyn Fn(&Vec<Vec<i64>>, usize, usize) -> bool| {
        psi.iter()
            .all(|mat| (0..size).all(|a| (0..size).all(|b| f(mat, a, b))))
    };
    Ok(SymmetryVerdict {
        m,
        size,
        symmetric: all(&|x, a, b| x[a][b] == x[b][a]),
        skew: all(&|x, a, b| x[a][b] == -x[b][a]),
        zero_diagonal: psi.iter().all(|x| (0..size).all(|a| x[a][a] == 0)),
        nonzero: psi.iter().any(|x| x.iter().flatten().any(|&v| v != 0)),
    })
}

/// Multiplication map `V ⊗ W → coefficients` kernel dimension, for spot checks.
pub fn multiplication_kernel_dim(v: &SectionSpace, w: &SectionSpace) -> usize {
    let m = multiplication_matrix(v, w);
    m.cols() - linalg::rank(&m)
}

/// Rows 0 and 1 of the Betti table of `Γ(F, L)` with `h⁰(F) = 0`, computed
/// directly: row 0 holds `K_{i,1}` and row 1 holds `K_{i,2}` for `i < ncols`.
pub fn twisted_rows_direct(
    curve: &NodalRationalCurve,
    f: &LineBundleData,
    l: &LineBundleData,
    ncols: usize,
    limit: u128,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut row0 = vec![0; ncols];
    let mut row1 = vec![0; ncols];
    if ncols == 0 {
        return Ok((row0, row1));
    }
    row0[0] = section_space(curve, &f.tensor(l, curve.p())).dim();
    for i in 1..=ncols {
        let (a, b) = twisted_strand_pair(curve, f, l, i, limit)?;
        if i < ncols {
            row0[i] = a;
        }
        row1[i - 1] = b;
    }
    Ok((row0, row1))
}
