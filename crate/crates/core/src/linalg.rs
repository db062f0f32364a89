//! Dense linear algebra over F_p.
//!
//! Two elimination paths produce the reduced row echelon form. The textbook
//! Gauss-Jordan sweep is used for short matrices. Taller inputs go through
//! [`RowReducer`], which keeps the pivot rows fully reduced against each other.
//! Because of that, the multiplier of each pivot row is just the incoming
//! row's original entry in the pivot column. All multipliers for one row can
//! then be accumulated in `u64` and reduced once, and zero entries of a
//! sparse input row cost nothing. Both paths return the unique RREF, so
//! results do not depend on the path taken.

use rand_core::RngCore;

use crate::error::{Result, SyzError};
use crate::ff;
use crate::rng::SplitMix64;

/// Inputs with fewer rows than this use the Gauss-Jordan sweep.
pub const BLOCK_THRESHOLD: usize = 256;
/// Pending pivots merged into the main basis at once.
const PENDING_BATCH: usize = 48;
const NONE: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl MatrixFp {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        MatrixFp {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major data; entries are reduced mod p.
    pub fn from_vec(rows: usize, cols: usize, p: u32, mut data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        for x in data.iter_mut() {
            *x %= p;
        }
        MatrixFp {
            rows,
            cols,
            p,
            data,
        }
    }

    pub fn from_rows(cols: usize, p: u32, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|x| x % p));
        }
        MatrixFp {
            rows: rows.len(),
            cols,
            p,
            data,
        }
    }

    pub fn from_columns(nrows: usize, p: u32, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), p);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn random(rows: usize, cols: usize, p: u32, rng: &mut SplitMix64) -> Self {
        let data = (0..rows * cols)
            .map(|_| (rng.next_u64() % p as u64) as u32)
            .collect();
        MatrixFp {
            rows,
            cols,
            p,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.p, other.p, "modulus mismatch in product");
        let p64 = self.p as u64;
        let mut out = Self::zeros(self.rows, other.cols, self.p);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a != 0 {
                    for (s, &b) in acc.iter_mut().zip(other.row(k)) {
                        *s += a as u64 * b as u64;
                    }
                }
            }
            for (o, a) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = (a % p64) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p64 = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p64) as u32
            })
            .collect()
    }

    /// Rows `[start, end)` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        MatrixFp {
            rows: end - start,
            cols: self.cols,
            p: self.p,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }
}

/// Refuses shapes whose entry count exceeds `limit`.
pub fn check_size(rows: usize, cols: usize, limit: u128) -> Result<()> {
    let entries = rows as u128 * cols as u128;
    if entries > limit {
        return Err(SyzError::TooLarge {
            rows,
            cols,
            entries,
            limit,
        });
    }
    Ok(())
}

/// Incremental row reduction. Rows are pushed one at a time; the accepted rows
/// span the same space as the input and are kept in reduced echelon form.
pub struct RowReducer {
    p: u32,
    width: usize,
    basis: Vec<Vec<u32>>,
    basis_pivot: Vec<usize>,
    col_basis: Vec<usize>,
    pending: Vec<Vec<u32>>,
    pending_pivot: Vec<usize>,
    col_pending: Vec<usize>,
    acc: Vec<u64>,
}

impl RowReducer {
    pub fn new(width: usize, p: u32) -> Self {
        RowReducer {
            p,
            width,
            basis: Vec::new(),
            basis_pivot: Vec::new(),
            col_basis: vec![NONE; width],
            pending: Vec::new(),
            pending_pivot: Vec::new(),
            col_pending: vec![NONE; width],
            acc: vec![0; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.basis.len() + self.pending.len()
    }

    /// Adds a row (entries in `[0, p)`); returns the pivot column if the row
    /// was independent of the rows seen so far.
    pub fn push_row(&mut self, row: &[u32]) -> Option<usize> {
        assert_eq!(row.len(), self.width);
        let p = self.p;
        let p64 = p as u64;
        if self.rank() == self.width {
            return None;
        }
        let mut r: Vec<u32>;
        // reduce against the merged basis; multipliers are the original entries
        let mut hit = false;
        for (a, &x) in self.acc.iter_mut().zip(row) {
            *a = x as u64;
        }
        for (c, &v) in row.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let b = self.col_basis[c];
            if b == NONE {
                continue;
            }
            hit = true;
            let f = (p - v) as u64;
            let br = &self.basis[b];
            for (a, &x) in self.acc[c..].iter_mut().zip(&br[c..]) {
                *a += f * x as u64;
            }
        }
        if hit {
            r = self.acc.iter().map(|&a| (a % p64) as u32).collect();
        } else {
            r = row.to_vec();
        }
        // reduce against pending pivots (mutually reduced, zero on merged pivot columns)
        let factors: Vec<(usize, u32)> = self
            .pending_pivot
            .iter()
            .enumerate()
            .filter(|&(_, &c)| r[c] != 0)
            .map(|(n, &c)| (n, p - r[c]))
            .collect();
        if !factors.is_empty() {
            for (a, &x) in self.acc.iter_mut().zip(&r) {
                *a = x as u64;
            }
            for &(n, f) in &factors {
                let c = self.pending_pivot[n];
                let pr = &self.pending[n];
                for (a, &x) in self.acc[c..].iter_mut().zip(&pr[c..]) {
                    *a += f as u64 * x as u64;
                }
            }
            for (x, &a) in r.iter_mut().zip(&self.acc) {
                *x = (a % p64) as u32;
            }
        }
        let c = r.iter().position(|&x| x != 0)?;
        let s = ff::inv(r[c], p) as u64;
        for x in r[c..].iter_mut() {
            *x = ((*x as u64 * s) % p64) as u32;
        }
        for pr in self.pending.iter_mut() {
            let v = pr[c];
            if v != 0 {
                let f = (p - v) as u64;
                for (y, &x) in pr[c..].iter_mut().zip(&r[c..]) {
                    *y = ((*y as u64 + f * x as u64) % p64) as u32;
                }
            }
        }
        self.col_pending[c] = self.pending.len();
        self.pending.push(r);
        self.pending_pivot.push(c);
        if self.pending.len() >= PENDING_BATCH {
            self.flush();
        }
        Some(c)
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let p = self.p;
        let p64 = p as u64;
        let acc = &mut self.acc;
        for br in self.basis.iter_mut() {
            let mut touched = false;
            for (n, &c) in self.pending_pivot.iter().enumerate() {
                let v = br[c];
                if v == 0 {
                    continue;
                }
                if !touched {
                    for (a, &x) in acc.iter_mut().zip(br.iter()) {
                        *a = x as u64;
                    }
                    touched = true;
                }
                let f = (p - v) as u64;
                let pr = &self.pending[n];
                for (a, &x) in acc[c..].iter_mut().zip(&pr[c..]) {
                    *a += f * x as u64;
                }
            }
            if touched {
                for (x, &a) in br.iter_mut().zip(acc.iter()) {
                    *x = (a % p64) as u32;
                }
            }
        }
        for (r, c) in self.pending.drain(..).zip(self.pending_pivot.drain(..)) {
            self.col_pending[c] = NONE;
            self.col_basis[c] = self.basis.len();
            self.basis.push(r);
            self.basis_pivot.push(c);
        }
    }

    /// Reduced row echelon form of everything pushed so far, with pivot columns.
    pub fn into_rref(mut self) -> (MatrixFp, Vec<usize>) {
        self.flush();
        let mut order: Vec<usize> = (0..self.basis.len()).collect();
        order.sort_by_key(|&i| self.basis_pivot[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.basis_pivot[i]).collect();
        let mut data = Vec::with_capacity(order.len() * self.width);
        for &i in &order {
            data.extend_from_slice(&self.basis[i]);
        }
        (
            MatrixFp {
                rows: order.len(),
                cols: self.width,
                p: self.p,
                data,
            },
            pivots,
        )
    }
}

/// Textbook Gauss-Jordan elimination: pivot is the first nonzero row at or
/// below the current position; every other row is cleared in the pivot column.
pub fn naive_rref(m: &MatrixFp) -> (MatrixFp, Vec<usize>) {
    let p = m.p;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let s = ff::inv(a.get(r, c), p);
        for j in c..a.cols {
            let v = ff::mul(a.get(r, j), s, p);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f == 0 {
                continue;
            }
            for j in c..a.cols {
                let v = ff::sub(a.get(i, j), ff::mul(f, a.get(r, j), p), p);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a.row_range(0, r), pivots)
}

/// Reduced row echelon form (nonzero rows only) and pivot columns.
pub fn rref(m: &MatrixFp) -> (MatrixFp, Vec<usize>) {
    if m.rows < BLOCK_THRESHOLD {
        return naive_rref(m);
    }
    let mut red = RowReducer::new(m.cols, m.p);
    for i in 0..m.rows {
        red.push_row(m.row(i));
    }
    red.into_rref()
}

pub fn rank(m: &MatrixFp) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if m.cols > m.rows {
        return rref(&m.transpose()).1.len();
    }
    rref(m).1.len()
}

/// Right kernel basis as the columns of a `cols × (cols − rank)` matrix. Column
/// `t` is the solution with a 1 in the `t`-th free coordinate and 0 in the others.
pub fn kernel_basis(m: &MatrixFp) -> MatrixFp {
    let (r, pivots) = rref(m);
    kernel_from_rref(&r, &pivots)
}

pub fn kernel_from_rref(r: &MatrixFp, pivots: &[usize]) -> MatrixFp {
    let n = r.cols;
    let p = r.p;
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = MatrixFp::zeros(n, free.len(), p);
    for (t, &f) in free.iter().enumerate() {
        k.set(f, t, 1);
        for (b, &c) in pivots.iter().enumerate() {
            k.set(c, t, ff::neg(r.get(b, f), p));
        }
    }
    k
}

/// Given `s` whose columns span `W ⊂ F_p^n`, returns the `(n − dim W) × n`
/// matrix of a projection with kernel exactly `W`. It sends `v` to the non-pivot
/// coordinates of `v` after reduction by the echelon basis of `W`.
pub fn quotient_coordinates(s: &MatrixFp) -> MatrixFp {
    quotient_with_lifts(s).0
}

/// [`quotient_coordinates`] together with the free coordinates: the unit vector
/// at `lifts[t]` maps to the `t`-th basis vector of the quotient.
pub fn quotient_with_lifts(s: &MatrixFp) -> (MatrixFp, Vec<usize>) {
    let n = s.rows;
    let p = s.p;
    let (r, pivots) = if s.cols == 0 {
        (MatrixFp::zeros(0, n, p), vec![])
    } else {
        rref(&s.transpose())
    };
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut q = MatrixFp::zeros(free.len(), n, p);
    for (t, &f) in free.iter().enumerate() {
        q.set(t, f, 1);
        for (b, &c) in pivots.iter().enumerate() {
            q.set(t, c, ff::neg(r.get(b, f), p));
        }
    }
    (q, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::splitmix;

    const P: u32 = 10007;

    // independent oracle: single-pass forward elimination with i64 arithmetic,
    // counting pivots, no back substitution
    fn oracle_rank(m: &MatrixFp) -> usize {
        let p = m.p() as i64;
        let mut a: Vec<Vec<i64>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(|&x| x as i64).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(pr) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(rank, pr);
            let inv = {
                let (mut b, mut e, mut acc) = (a[rank][c], p - 2, 1i64);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                acc
            };
            for i in rank + 1..a.len() {
                let f = a[i][c] * inv % p;
                if f != 0 {
                    for j in c..m.cols() {
                        a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn low_rank(rows: usize, cols: usize, r: usize, seed: u64) -> MatrixFp {
        let mut g = splitmix(seed);
        let a = MatrixFp::random(rows, r, P, &mut g);
        let b = MatrixFp::random(r, cols, P, &mut g);
        a.mul(&b)
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&MatrixFp::identity(7, P)), 7);
        assert_eq!(rank(&MatrixFp::zeros(5, 9, P)), 0);
        assert_eq!(rank(&MatrixFp::zeros(0, 3, P)), 0);
    }

    #[test]
    fn random_rank_matches_oracle() {
        let m = MatrixFp::random(200, 240, P, &mut splitmix(1));
        assert_eq!(rank(&m), oracle_rank(&m));
        let m = low_rank(300, 120, 77, 2);
        assert_eq!(rank(&m), oracle_rank(&m));
        assert_eq!(rank(&m), 77);
    }

    #[test]
    fn both_paths_give_identical_rref() {
        for (rows, cols, r, seed) in [
            (600, 90, 60, 3),
            (500, 500, 500, 4),
            (700, 300, 299, 5),
            (300, 40, 3, 6),
        ] {
            let m = low_rank(rows, cols, r, seed);
            let (a, pa) = naive_rref(&m);
            let mut red = RowReducer::new(cols, P);
            for i in 0..rows {
                red.push_row(m.row(i));
            }
            let (b, pb) = red.into_rref();
            assert_eq!(pa, pb);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sparse_rows_through_reducer() {
        let mut g = splitmix(9);
        let mut m = MatrixFp::zeros(900, 200, P);
        for i in 0..900 {
            for _ in 0..4 {
                let j = (g.next_u64() % 200) as usize;
                m.set(i, j, (g.next_u64() % P as u64) as u32);
            }
        }
        assert_eq!(rank(&m), oracle_rank(&m));
        assert_eq!(rref(&m), naive_rref(&m));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&MatrixFp::identity(4, P)).cols(), 0);
        let k = kernel_basis(&MatrixFp::from_rows(2, P, &[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![P - 1, 1]);
        let m = low_rank(40, 70, 25, 11);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 70 - rank(&m));
        assert!(m.mul(&k).is_zero());
        assert_eq!(rank(&k), k.cols());
    }

    #[test]
    fn quotient_examples() {
        let n = 6;
        let e: Vec<Vec<u32>> = (0..2)
            .map(|i| (0..n).map(|j| (i == j) as u32).collect())
            .collect();
        let q = quotient_coordinates(&MatrixFp::from_columns(n, P, &e));
        let mut expected = MatrixFp::zeros(4, 6, P);
        for t in 0..4 {
            expected.set(t, t + 2, 1);
        }
        assert_eq!(q, expected);
        let q = quotient_coordinates(&MatrixFp::identity(5, P));
        assert_eq!((q.rows(), q.cols()), (0, 5));
        let s = low_rank(9, 5, 5, 12);
        let q = quotient_coordinates(&s);
        assert_eq!(q.rows(), 4);
        assert_eq!(rank(&q), 4);
        assert!(q.mul(&s).is_zero());
    }

    #[test]
    fn size_guard() {
        assert!(check_size(10, 10, 100).is_ok());
        assert!(matches!(
            check_size(10, 11, 100),
            Err(SyzError::TooLarge { .. })
        ));
    }
}
