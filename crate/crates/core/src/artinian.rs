//! Artinian reductions by a regular pair of sections.
//!
//! A graded module `N = ⊕_{q≥0} H⁰(G ⊗ L^q)` over `Sym H⁰(L)` is cut down by
//! two sections `u, w` with no common zero. This gives `A_q = N_q / (u, w) N_{q−1}`.
//! The Betti numbers of `N` over `Sym H⁰(L)` are those of `A` over the
//! polynomial ring on the remaining sections `V'`, so the Koszul strands
//! shrink to small matrices over the pieces `A_q`.

use serde::Serialize;

use crate::betti::{BettiTable, ModuleKind};
use crate::curve::{
    canonical_multipliers, section_space, LineBundleData, NodalRationalCurve, SectionSpace,
};
use crate::error::{param, Result, SyzError};
use crate::ff;
use crate::koszul::{binomial, KoszulMap};
use crate::linalg::{quotient_with_lifts, MatrixFp};
use crate::poly::{poly_gcd, poly_mul, Poly};
use crate::rng::{next_residue, splitmix};

/// Cap on `rows × cols` for artinian Koszul matrices (rows are streamed).
pub const DEFAULT_ARTINIAN_LIMIT: u128 = 1_000_000_000;
pub const MAX_PAIR_ATTEMPTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ReductionKind {
    /// Canonical module of the paracanonical ring: `G = K`, `L = K ⊗ η`.
    OmegaR,
    /// `Γ(η^k, K ⊗ η)`: `G = K ⊗ η^{k+1}`, `L = K ⊗ η`, starting in degree 1.
    TorsionModule { k: u32 },
    /// `Γ(η, K)`: `G = K ⊗ η`, `L = K`, starting in degree 1.
    CanonicalTwist,
}

impl ReductionKind {
    /// Expected dimensions of `A_0, A_1, …` (indexed from the first nonzero degree).
    pub fn expected_pieces(&self, g: usize) -> Vec<usize> {
        match self {
            ReductionKind::OmegaR => vec![g, g - 3, 1, 0],
            _ => vec![g - 1, g - 1, 0],
        }
    }

    /// Degree of `A_0` in the module's grading.
    pub fn offset(&self) -> usize {
        match self {
            ReductionKind::OmegaR => 0,
            _ => 1,
        }
    }
}

/// A basis of `H⁰(L)` whose last two members form a regular pair.
#[derive(Clone, Debug)]
pub struct RegularPair {
    pub basis: Vec<Poly>,
    pub attempt: usize,
}

impl RegularPair {
    pub fn pair(&self) -> (&Poly, &Poly) {
        let n = self.basis.len();
        (&self.basis[n - 2], &self.basis[n - 1])
    }

    pub fn v_prime(&self) -> &[Poly] {
        &self.basis[..self.basis.len() - 2]
    }
}

/// No common zero on the projective line: constant gcd, and at least one of
/// the two has nonzero coefficient in degree `top` (the point at infinity).
pub fn is_regular_pair(f: &Poly, h: &Poly, top: usize, p: u32) -> bool {
    let lead = |x: &Poly| x.coeffs.get(top).copied().unwrap_or(0) != 0;
    if !lead(f) && !lead(h) {
        return false;
    }
    poly_gcd(f, h, p).degree() == Some(0)
}

/// Attempt 0 tests the last two basis rows. Attempt `k ≥ 1` draws two random
/// combinations `u, w` from SplitMix64 seeded with `seed + k`. The draw is
/// kept only if `u, w` can replace the last two rows of the basis. The first
/// accepted attempt at or after `start` is returned.
pub fn choose_regular_pair(v: &SectionSpace, seed: u64, start: usize) -> Result<RegularPair> {
    let n = v.dim();
    if n < 2 {
        return param("need at least two sections for a regular pair");
    }
    let p = v.basis.p();
    let top = v.coeff_len() - 1;
    let secs = v.sections();
    for attempt in start..MAX_PAIR_ATTEMPTS {
        let (u, w) = if attempt == 0 {
            (secs[n - 2].clone(), secs[n - 1].clone())
        } else {
            let mut rng = splitmix(seed.wrapping_add(attempt as u64));
            let cu: Vec<u32> = (0..n).map(|_| next_residue(&mut rng, p)).collect();
            let cw: Vec<u32> = (0..n).map(|_| next_residue(&mut rng, p)).collect();
            let minor = ff::sub(
                ff::mul(cu[n - 2], cw[n - 1], p),
                ff::mul(cu[n - 1], cw[n - 2], p),
                p,
            );
            if minor == 0 {
                continue;
            }
            (combine(&secs, &cu, p), combine(&secs, &cw, p))
        };
        if is_regular_pair(&u, &w, top, p) {
            let mut basis = secs[..n - 2].to_vec();
            basis.push(u);
            basis.push(w);
            return Ok(RegularPair { basis, attempt });
        }
    }
    Err(SyzError::NoRegularPair(MAX_PAIR_ATTEMPTS))
}

fn combine(secs: &[Poly], c: &[u32], p: u32) -> Poly {
    let mut out = vec![0u32; secs[0].coeffs.len()];
    for (s, &a) in secs.iter().zip(c) {
        for (o, &x) in out.iter_mut().zip(&s.coeffs) {
            *o = ff::add(*o, ff::mul(a, x, p), p);
        }
    }
    Poly::from_coeffs(out)
}

/// One graded piece `A_q` of the reduction.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub space: SectionSpace,
    /// `dim A_q × dim N_q` projection in echelon coordinates of `N_q`.
    pub quotient: MatrixFp,
    /// Basis indices of `N_q` lifting the basis of `A_q`.
    pub lifts: Vec<usize>,
    /// Dimension of `(u, w) N_{q−1}` inside `N_q`.
    pub image_dim: usize,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.quotient.rows()
    }
}

#[derive(Clone, Debug)]
pub struct ArtinianReduction {
    pub kind: ReductionKind,
    pub g: usize,
    pub pair: RegularPair,
    pub pieces: Vec<GradedPiece>,
    p: u32,
}

impl ArtinianReduction {
    /// Measured `dim A_q` for the computed pieces.
    pub fn piece_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|x| x.dim()).collect()
    }

    /// Hilbert function from degree 0, with zeros below the first generator.
    pub fn hilbert(&self) -> Vec<usize> {
        let mut h = vec![0; self.kind.offset()];
        let dims = self.piece_dims();
        let last = dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
        h.extend_from_slice(&dims[..last]);
        h
    }

    pub fn dim_v_prime(&self) -> usize {
        self.pair.basis.len() - 2
    }

    /// `∧^m V' ⊗ A_q → ∧^{m−1} V' ⊗ A_{q+1}`.
    pub fn koszul_map(&self, m: usize, q: usize) -> KoszulMap {
        let src = &self.pieces[q];
        let tgt = &self.pieces[q + 1];
        let vp = self.pair.v_prime();
        let (ds, dt) = (src.dim(), tgt.dim());
        let mut table = Vec::with_capacity(vp.len() * ds * dt);
        let src_lifts: Vec<Poly> = if q == 0 {
            src.space.sections()
        } else {
            src.lifts.iter().map(|&i| src.space.section(i)).collect()
        };
        for v in vp {
            for a in &src_lifts {
                let prod = poly_mul(v, a, self.p);
                let coords = tgt.space.coords(&prod.coeffs);
                table.extend(tgt.quotient.mul_vec(&coords));
            }
        }
        KoszulMap::new(self.p, m, vp.len(), ds, dt, table)
    }

    /// `dim` of the homology at `∧^m V' ⊗ A_q`, i.e. `Tor_m(A)` in the strand through `A_q`.
    pub fn tor_dim(&self, m: usize, q: usize, limit: u128) -> Result<usize> {
        let n = self.dim_v_prime();
        let here = binomial(n, m) as usize * self.pieces[q].dim();
        if here == 0 {
            return Ok(0);
        }
        let ker = if m == 0 || q + 1 >= self.pieces.len() || self.pieces[q + 1].dim() == 0 {
            here
        } else {
            self.koszul_map(m, q).kernel_dim(limit)?
        };
        let incoming = if q == 0 || m + 1 > n || self.pieces[q - 1].dim() == 0 {
            0
        } else {
            self.koszul_map(m + 1, q - 1).rank(limit)?
        };
        Ok(ker - incoming)
    }
}

/// Bundles `(G, L)` of the module and the bundle whose sections give the regular pair.
fn module_bundles(
    curve: &NodalRationalCurve,
    kind: ReductionKind,
    eta: &LineBundleData,
) -> Result<(LineBundleData, LineBundleData)> {
    let p = curve.p();
    let k = canonical_multipliers(curve);
    if eta.is_trivial() {
        return param("torsion bundle must be nontrivial");
    }
    Ok(match kind {
        ReductionKind::OmegaR => (k.clone(), k.tensor(eta, p)),
        ReductionKind::TorsionModule { k: tw } => {
            if tw == 0 {
                return param("twist exponent must be at least 1");
            }
            (k.tensor(&eta.pow(tw as i64 + 1, p), p), k.tensor(eta, p))
        }
        ReductionKind::CanonicalTwist => (k.tensor(eta, p), k),
    })
}

fn reduce_with_pair(
    curve: &NodalRationalCurve,
    kind: ReductionKind,
    g_bundle: &LineBundleData,
    l: &LineBundleData,
    pair: RegularPair,
    npieces: usize,
) -> ArtinianReduction {
    let p = curve.p();
    let (u, w) = pair.pair();
    let mut pieces: Vec<GradedPiece> = Vec::with_capacity(npieces);
    for q in 0..npieces {
        let space = section_space(curve, &g_bundle.tensor(&l.pow(q as i64, p), p));
        let n = space.dim();
        let (quotient, lifts, image_dim) = if q == 0 {
            (MatrixFp::identity(n, p), (0..n).collect(), 0)
        } else {
            let prev = &pieces[q - 1].space;
            let mut cols = Vec::with_capacity(2 * prev.dim());
            for s in [u, w] {
                for b in prev.sections() {
                    cols.push(space.coords(&poly_mul(s, &b, p).coeffs));
                }
            }
            let image = MatrixFp::from_columns(n, p, &cols);
            let (quo, lifts) = quotient_with_lifts(&image);
            let image_dim = n - quo.rows();
            (quo, lifts, image_dim)
        };
        pieces.push(GradedPiece {
            space,
            quotient,
            lifts,
            image_dim,
        });
    }
    ArtinianReduction {
        kind,
        g: curve.g,
        pair,
        pieces,
        p,
    }
}

/// Reduction with measured piece dimensions matching the expected Hilbert
/// function. Pairs whose reduction has the wrong dimensions are skipped.
pub fn artinian_reduce(
    curve: &NodalRationalCurve,
    kind: ReductionKind,
    eta: &LineBundleData,
    seed: u64,
) -> Result<ArtinianReduction> {
    let g = curve.g;
    if g < 4 {
        return param("artinian reduction needs genus at least 4");
    }
    let (g_bundle, l) = module_bundles(curve, kind, eta)?;
    let v = section_space(curve, &l);
    let expected = kind.expected_pieces(g);
    let mut start = 0;
    let mut last_found = Vec::new();
    while start < MAX_PAIR_ATTEMPTS {
        let pair = choose_regular_pair(&v, seed, start)?;
        start = pair.attempt + 1;
        let red = reduce_with_pair(curve, kind, &g_bundle, &l, pair, expected.len());
        let found = red.piece_dims();
        if found == expected {
            return Ok(red);
        }
        last_found = found;
    }
    Err(SyzError::Hilbert {
        expected,
        found: last_found,
    })
}

pub fn artinian_reduce_omega(
    curve: &NodalRationalCurve,
    eta: &LineBundleData,
    seed: u64,
) -> Result<ArtinianReduction> {
    artinian_reduce(curve, ReductionKind::OmegaR, eta, seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineResult {
    pub kernel_dim: usize,
    pub rows: usize,
    pub cols: usize,
    pub pair_attempt: usize,
    pub hilbert: Vec<usize>,
}

/// Kernel of `∧^m V' ⊗ A_0 → ∧^{m−1} V' ⊗ A_1` with its shape and the reduction data.
pub fn pipeline_kernel(red: &ArtinianReduction, m: usize, limit: u128) -> Result<PipelineResult> {
    let map = red.koszul_map(m, 0);
    Ok(PipelineResult {
        kernel_dim: map.kernel_dim(limit)?,
        rows: map.rows(),
        cols: map.cols(),
        pair_attempt: red.pair.attempt,
        hilbert: red.hilbert(),
    })
}

/// `dim K_{g/2−2,1}(C, K ⊗ η)` as the kernel of `∧^{g/2} V' ⊗ A_0 → ∧^{g/2−1} V' ⊗ A_1`.
pub fn prym_green_kernel_dim(
    curve: &NodalRationalCurve,
    eta: &LineBundleData,
    seed: u64,
    limit: u128,
) -> Result<PipelineResult> {
    if curve.g % 2 != 0 {
        return param("Prym-Green pipeline needs even genus");
    }
    let red = artinian_reduce_omega(curve, eta, seed)?;
    pipeline_kernel(&red, curve.g / 2, limit)
}

/// `dim K_{g/2−1,1}(C; η^k, K ⊗ η)` from the square matrix
/// `∧^{g/2−1} V' ⊗ B_1 → ∧^{g/2−2} V' ⊗ B_2`.
pub fn torsion_module_kernel_dim(
    curve: &NodalRationalCurve,
    eta: &LineBundleData,
    k: u32,
    seed: u64,
    limit: u128,
) -> Result<PipelineResult> {
    let g = curve.g;
    if g % 2 != 0 {
        return param("torsion-module pipeline needs even genus");
    }
    let ell = curve.field.ell;
    if k < 1 || k + 2 > ell {
        return param(format!("twist k = {k} outside 1..=ell-2 for ell = {ell}"));
    }
    let red = artinian_reduce(curve, ReductionKind::TorsionModule { k }, eta, seed)?;
    pipeline_kernel(&red, g / 2 - 1, limit)
}

/// `dim K_{⌊(g−1)/2⌋,1}(C; η, K)`.
pub fn canonical_twist_kernel_dim(
    curve: &NodalRationalCurve,
    eta: &LineBundleData,
    seed: u64,
    limit: u128,
) -> Result<PipelineResult> {
    let red = artinian_reduce(curve, ReductionKind::CanonicalTwist, eta, seed)?;
    pipeline_kernel(&red, (curve.g - 1) / 2, limit)
}

/// `(dim K_{i,1}, dim K_{i−1,2})` of a twisted module, read off its reduction.
pub fn twisted_strand_pair(
    red: &ArtinianReduction,
    i: usize,
    limit: u128,
) -> Result<(usize, usize)> {
    if red.kind == ReductionKind::OmegaR {
        return param("strand pairs are defined for twisted modules");
    }
    Ok((red.tor_dim(i, 0, limit)?, red.tor_dim(i - 1, 1, limit)?))
}

/// Betti table rows of a twisted module: row 0 holds `K_{i,1}`, row 1 holds `K_{i,2}`.
pub fn twisted_table_rows(
    red: &ArtinianReduction,
    limit: u128,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = red.dim_v_prime();
    let mut r0 = Vec::with_capacity(n + 1);
    let mut r1 = Vec::with_capacity(n + 1);
    for i in 0..=n {
        r0.push(red.tor_dim(i, 0, limit)?);
        r1.push(red.tor_dim(i, 1, limit)?);
    }
    Ok((r0, r1))
}

/// Betti table of the section ring of `K ⊗ η`, read off the reduction of its
/// canonical module: `b_{p,1} = Tor_{g−3−p}(A)` through `A_1` and
/// `b_{p,2} = Tor_{g−3−p}(A)` through `A_0`.
pub fn ring_table(red: &ArtinianReduction, limit: u128) -> Result<BettiTable> {
    if red.kind != ReductionKind::OmegaR {
        return param("ring tables come from the canonical-module reduction");
    }
    let n = red.dim_v_prime();
    let mut t = BettiTable::zeros(ModuleKind::ParacanonicalRing, 3, n + 1);
    t.set(0, 0, red.tor_dim(n, 2, limit)? as u64);
    for p in 0..=n {
        t.set(p, 1, red.tor_dim(n - p, 1, limit)? as u64);
        t.set(p, 2, red.tor_dim(n - p, 0, limit)? as u64);
    }
    Ok(t)
}
