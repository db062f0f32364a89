//! Betti tables: expected natural shapes, the exceptional torsion case, and
//! the text layout used for display.

use num_rational::Ratio;
use serde::Serialize;

use crate::koszul::{binomial, strand_euler_char};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ModuleKind {
    /// Section ring of `K ⊗ η`.
    ParacanonicalRing,
    /// `Γ(η^k, K ⊗ η)`.
    TorsionModule { k: u32 },
    /// `Γ(η, K)`.
    CanonicalTwist,
}

/// `rows[j][i] = b_{i,j}`: column `i` is the homological step and row `j` the
/// internal degree minus the step. Row 0 of a twisted module holds generators
/// of degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub kind: ModuleKind,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    rows: &'a [Vec<u64>],
    totals: Vec<u64>,
}

impl BettiTable {
    pub fn zeros(kind: ModuleKind, nrows: usize, ncols: usize) -> Self {
        BettiTable {
            kind,
            rows: vec![vec![0; ncols]; nrows],
        }
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows
            .get(j)
            .and_then(|r| r.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.rows[j][i] = v;
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..self.ncols())
            .map(|i| self.rows.iter().map(|r| r[i]).sum())
            .collect()
    }

    /// At most one nonzero entry on each diagonal `i + j`.
    pub fn is_natural(&self) -> bool {
        let nd = self.ncols() + self.rows.len();
        (0..nd).all(|d| {
            (0..self.rows.len())
                .filter(|&j| d >= j && d - j < self.ncols() && self.rows[j][d - j] != 0)
                .count()
                <= 1
        })
    }

    /// Positions `(i, j)` where the two tables differ.
    pub fn differences(&self, other: &BettiTable) -> Vec<(usize, usize)> {
        let nr = self.rows.len().max(other.rows.len());
        let nc = self.ncols().max(other.ncols());
        let mut out = Vec::new();
        for j in 0..nr {
            for i in 0..nc {
                if self.get(i, j) != other.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            rows: &self.rows,
            totals: self.totals(),
        })
        .expect("serializable")
    }

    pub fn render(&self) -> String {
        render_table(self)
    }
}

/// Column-aligned text: header of column indices, a `total:` row, then one row
/// per degree; zeros print as `.`. Ring tables use a 7-wide label column and
/// module tables a 6-wide one.
pub fn render_table(t: &BettiTable) -> String {
    let label_width = match t.kind {
        ModuleKind::ParacanonicalRing => 7,
        _ => 6,
    };
    let totals = t.totals();
    let cell = |v: u64| {
        if v == 0 {
            ".".to_string()
        } else {
            v.to_string()
        }
    };
    let widths: Vec<usize> = (0..t.ncols())
        .map(|i| {
            let mut w = i.to_string().len().max(totals[i].to_string().len());
            for r in &t.rows {
                w = w.max(cell(r[i]).len());
            }
            w
        })
        .collect();
    let line = |label: &str, cells: Vec<String>| {
        let mut s = format!("{label:>label_width$}");
        for (c, w) in cells.iter().zip(&widths) {
            s.push(' ');
            s.push_str(&format!("{c:>w$}"));
        }
        s.trim_end().to_string()
    };
    let mut out = Vec::with_capacity(t.rows.len() + 2);
    out.push(line("", (0..t.ncols()).map(|i| i.to_string()).collect()));
    out.push(line(
        "total:",
        totals.iter().map(|v| v.to_string()).collect(),
    ));
    for (j, r) in t.rows.iter().enumerate() {
        out.push(line(&format!("{j}:"), r.iter().map(|&v| cell(v)).collect()));
    }
    out.join("\n") + "\n"
}

/// `(g−1)·C(g−2, i)·(1 − 2i/(g−2))`, the Euler characteristic on the `i`-th
/// diagonal of `Γ(ξ, K ⊗ η)` for a nontrivial `ξ`.
pub fn chi_diagonal(g: usize, i: usize) -> i64 {
    assert!(
        g >= 4 && i <= g - 2,
        "chi_diagonal needs g >= 4 and 0 <= i <= g-2"
    );
    let v = Ratio::from_integer((g as i128 - 1) * binomial(g - 2, i) as i128)
        * (Ratio::from_integer(1) - Ratio::new(2 * i as i128, g as i128 - 2));
    assert!(
        v.is_integer(),
        "diagonal Euler characteristic is not integral"
    );
    v.to_integer() as i64
}

/// `C(g−1, i)·(g−1−2i)`, the diagonal Euler characteristic of `Γ(η, K)`.
pub fn chi_canonical_twist(g: usize, i: usize) -> i64 {
    binomial(g - 1, i) as i64 * (g as i64 - 1 - 2 * i as i64)
}

/// Hilbert function of the section ring of a paracanonical bundle: `h(0) = 1`,
/// `h(q) = q(2g−2) − g + 1`.
pub fn ring_hilbert(g: usize, q: usize) -> i64 {
    if q == 0 {
        1
    } else {
        q as i64 * (2 * g as i64 - 2) - g as i64 + 1
    }
}

/// Exceptional torsion case: `ℓ | 2k+1`, `g ≡ 2 (mod 4)` and `C(g−3, g/2−1)` odd.
pub fn is_exceptional(g: usize, ell: u32, k: u32) -> bool {
    g % 2 == 0
        && g >= 4
        && (2 * k + 1) % ell == 0
        && g % 4 == 2
        && binomial(g - 3, g / 2 - 1) % 2 == 1
}

fn place_ring_diagonals(t: &mut BettiTable, nvars: usize, h: &dyn Fn(usize) -> i64) {
    let ncols = t.ncols();
    t.set(0, 0, h(0).max(0) as u64);
    for n in 1..=ncols + 1 {
        let chi = strand_euler_char(nvars, n, h);
        let d = if (n - 1) % 2 == 0 { chi } else { -chi };
        if d > 0 && n - 1 < ncols {
            t.set(n - 1, 1, d as u64);
        } else if d < 0 && n >= 2 && n - 2 < ncols {
            t.set(n - 2, 2, (-d) as u64);
        }
    }
}

/// Natural Betti table predicted from Euler characteristics, plus the single
/// extra syzygy in the exceptional torsion case.
pub fn expected_table(g: usize, kind: ModuleKind, ell: u32) -> BettiTable {
    assert!(g >= 4, "expected tables need genus at least 4");
    match kind {
        ModuleKind::ParacanonicalRing => {
            let mut t = BettiTable::zeros(kind, 3, g - 2);
            place_ring_diagonals(&mut t, g - 1, &|q| ring_hilbert(g, q));
            t
        }
        ModuleKind::TorsionModule { k } => {
            let ncols = g - 2;
            let mut t = BettiTable::zeros(kind, 2, ncols);
            for i in 0..=g - 2 {
                let chi = chi_diagonal(g, i);
                if chi > 0 && i < ncols {
                    t.set(i, 0, chi as u64);
                } else if chi < 0 {
                    t.set(i - 1, 1, (-chi) as u64);
                }
            }
            if is_exceptional(g, ell, k) {
                let (a, b) = (g / 2 - 1, g / 2 - 2);
                t.set(a, 0, t.get(a, 0) + 1);
                t.set(b, 1, t.get(b, 1) + 1);
            }
            t
        }
        ModuleKind::CanonicalTwist => {
            let ncols = g - 1;
            let mut t = BettiTable::zeros(kind, 2, ncols);
            for i in 0..=g - 1 {
                let chi = chi_canonical_twist(g, i);
                if chi > 0 && i < ncols {
                    t.set(i, 0, chi as u64);
                } else if chi < 0 {
                    t.set(i - 1, 1, (-chi) as u64);
                }
            }
            t
        }
    }
}

/// Ring table from a measured row 1 and Hilbert function, rows 0 and 3 vanishing:
/// `b_{i,2} = b_{i+1,1} + (−1)^i χ_{i+2}`.
pub fn ring_table_from_row1(nvars: usize, hilbert: &[i64], row1: &[usize]) -> BettiTable {
    let ncols = row1.len();
    let mut t = BettiTable::zeros(ModuleKind::ParacanonicalRing, 3, ncols);
    t.set(0, 0, hilbert[0] as u64);
    for i in 0..ncols {
        t.set(i, 1, row1[i] as u64);
        let chi = strand_euler_char(nvars, i + 2, |q| hilbert[q]);
        let next = row1.get(i + 1).copied().unwrap_or(0) as i64;
        let v = next + if i % 2 == 0 { chi } else { -chi };
        assert!(v >= 0, "negative entry from strand identity");
        t.set(i, 2, v as u64);
    }
    t
}

/// Twisted table from measured rows.
pub fn twisted_table(kind: ModuleKind, row0: &[usize], row1: &[usize]) -> BettiTable {
    let ncols = row0.len().max(row1.len());
    let mut t = BettiTable::zeros(kind, 2, ncols);
    for (i, &v) in row0.iter().enumerate() {
        t.set(i, 0, v as u64);
    }
    for (i, &v) in row1.iter().enumerate() {
        t.set(i, 1, v as u64);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_values() {
        assert_eq!(chi_diagonal(10, 1), 54);
        assert_eq!(chi_diagonal(10, 4), 0);
        assert_eq!(chi_diagonal(10, 5), -126);
        for g in 4..20 {
            for i in 0..=g - 2 {
                assert_eq!(chi_diagonal(g, i) + chi_diagonal(g, g - 2 - i), 0);
            }
        }
    }

    #[test]
    fn exceptional_predicate() {
        assert!(is_exceptional(10, 3, 1));
        assert!(!is_exceptional(8, 3, 1));
        assert!(!is_exceptional(14, 3, 1));
        assert!(is_exceptional(6, 5, 2));
        assert!(!is_exceptional(6, 5, 1));
        let listed: Vec<usize> = (4..=70)
            .step_by(2)
            .filter(|&g| is_exceptional(g, 3, 1))
            .collect();
        assert_eq!(listed, vec![6, 10, 18, 34, 66]);
    }

    #[test]
    fn g10_ring_layout() {
        let t = expected_table(10, ModuleKind::ParacanonicalRing, 3);
        let expected = "        0  1  2   3   4   5  6  7
 total: 1 18 42 126 210 162 63 10
     0: 1  .  .   .   .   .  .  .
     1: . 18 42   .   .   .  .  .
     2: .  .  . 126 210 162 63 10
";
        assert_eq!(t.render(), expected);
        assert!(t.is_natural());
    }

    #[test]
    fn g10_torsion_layout() {
        let t = expected_table(10, ModuleKind::TorsionModule { k: 1 }, 5);
        let expected = "       0  1   2   3   4   5  6 7
total: 9 54 126 126 126 126 54 9
    0: 9 54 126 126   .   .  . .
    1: .  .   .   . 126 126 54 9
";
        assert_eq!(t.render(), expected);
        let e = expected_table(10, ModuleKind::TorsionModule { k: 1 }, 3);
        assert_eq!(e.get(4, 0), 1);
        assert_eq!(e.get(3, 1), 1);
        assert!(!e.is_natural());
        assert_eq!(e.differences(&t), vec![(4, 0), (3, 1)]);
    }

    #[test]
    fn g8_observed_against_expected() {
        let row1 = [0usize, 7, 1, 0, 0, 0];
        let h: Vec<i64> = (0..=8).map(|q| ring_hilbert(8, q)).collect();
        let t = ring_table_from_row1(7, &h, &row1);
        let expected = "        0 1  2  3  4 5
 total: 1 8 36 56 35 8
     0: 1 .  .  .  . .
     1: . 7  1  .  . .
     2: . 1 35 56 35 8
";
        assert_eq!(t.render(), expected);
        let e = expected_table(8, ModuleKind::ParacanonicalRing, 2);
        assert_eq!(t.differences(&e), vec![(2, 1), (1, 2)]);
    }

    #[test]
    fn small_renders() {
        let t = BettiTable::zeros(ModuleKind::ParacanonicalRing, 1, 1);
        assert_eq!(t.render(), "        0\n total: 0\n     0: .\n");
        let json = expected_table(6, ModuleKind::ParacanonicalRing, 2).to_json();
        assert_eq!(json["totals"], serde_json::json!([1, 10, 15, 6]));
    }

    #[test]
    fn canonical_twist_shape() {
        let t = expected_table(9, ModuleKind::CanonicalTwist, 2);
        assert_eq!(t.ncols(), 8);
        assert_eq!(t.get(0, 0), 8);
        assert_eq!(t.get(4, 0), 0);
        assert_eq!(t.get(3, 1), 0);
        assert_eq!(t.get(7, 1), 8);
        assert!(t.is_natural());
    }
}
