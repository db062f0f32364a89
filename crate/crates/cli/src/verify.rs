use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use syzlab::artinian::{
    artinian_reduce, artinian_reduce_omega, pipeline_kernel, ring_table, twisted_table_rows,
    ReductionKind, DEFAULT_ARTINIAN_LIMIT,
};
use syzlab::betti::{expected_table, ring_table_from_row1, twisted_table, BettiTable, ModuleKind};
use syzlab::curve::{
    canonical_multipliers, full_torsion_bundle, random_curve, LineBundleData, NodalRationalCurve,
};
use syzlab::ff::{FieldParams, DEFAULT_PRIME_RANGE};
use syzlab::koszul::{
    koszul_dim_ring, koszul_dim_twisted, linear_syzygy_space, measured_hilbert, ring_row1,
    syzygy_rank, twisted_rows_direct, DEFAULT_DIRECT_LIMIT,
};
use syzlab::rng::derive_seed;
use syzlab::SyzError;

use crate::{field_for, CommonArgs, PathChoice, VerifyTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    ExtraSyzygy,
    Inconclusive,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub genus: usize,
    pub level: u32,
    pub k: Option<u32>,
    pub prime: Option<u32>,
    pub root: Option<u32>,
    pub prime_range: (u32, u32),
    pub seed: u64,
    pub trials: usize,
    pub path: PathChoice,
    pub table: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    /// Target Koszul dimension.
    pub dimension: Option<usize>,
    pub direct: Option<usize>,
    pub artinian: Option<usize>,
    /// Rows and columns of the artinian matrix.
    pub matrix: Option<(usize, usize)>,
    pub pair_attempt: Option<usize>,
    pub hilbert: Option<Vec<usize>>,
    pub table: Option<serde_json::Value>,
    pub matches_expected: bool,
    pub syzygy_ranks: Option<Vec<usize>>,
    pub error: Option<String>,
    pub seconds: f64,
    #[serde(skip)]
    pub betti: Option<BettiTable>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Parameters,
    pub target: String,
    pub expected_dimension: usize,
    pub expected_table: Option<serde_json::Value>,
    pub trials: Vec<Trial>,
    pub verdict: Verdict,
    /// Smallest observed excess over the expected dimension.
    pub excess: Option<usize>,
    pub error: Option<String>,
    pub timings: Timings,
}

#[derive(Clone, Copy, Debug)]
enum Target {
    PrymGreen,
    Torsion { k: u32 },
    Canonical,
}

impl Target {
    fn name(&self) -> &'static str {
        match self {
            Target::PrymGreen => "prym-green",
            Target::Torsion { .. } => "torsion-bundle",
            Target::Canonical => "canonical",
        }
    }

    fn module(&self) -> ModuleKind {
        match *self {
            Target::PrymGreen => ModuleKind::ParacanonicalRing,
            Target::Torsion { k } => ModuleKind::TorsionModule { k },
            Target::Canonical => ModuleKind::CanonicalTwist,
        }
    }

    /// Column and row of the target entry in the Betti table.
    fn entry(&self, g: usize) -> (usize, usize) {
        match self {
            Target::PrymGreen => (g / 2 - 2, 1),
            Target::Torsion { .. } => (g / 2 - 1, 0),
            Target::Canonical => ((g - 1) / 2, 0),
        }
    }

    fn describe(&self, g: usize) -> String {
        let (i, _) = self.entry(g);
        match self {
            Target::PrymGreen => format!("K_{{{i},1}}(C, K⊗η)"),
            Target::Torsion { k } => format!("K_{{{i},1}}(C; η^{k}, K⊗η)"),
            Target::Canonical => format!("K_{{{i},1}}(C; η, K)"),
        }
    }

    fn check(&self, g: usize, level: u32) -> Result<(), String> {
        if level < 2 {
            return Err(format!("level must be at least 2, got {level}"));
        }
        match *self {
            Target::PrymGreen if g < 6 || g % 2 == 1 => {
                Err(format!("prym-green needs even genus >= 6, got {g}"))
            }
            Target::Torsion { .. } if g < 4 || g % 2 == 1 => {
                Err(format!("torsion-bundle needs even genus >= 4, got {g}"))
            }
            Target::Torsion { k } if k < 1 || k + 2 > level => {
                Err(format!("k = {k} must satisfy 1 <= k <= level - 2"))
            }
            Target::Canonical if g < 4 => Err(format!("canonical needs genus >= 4, got {g}")),
            _ => Ok(()),
        }
    }
}

struct Computed {
    direct: Option<usize>,
    artinian: Option<usize>,
    matrix: Option<(usize, usize)>,
    pair_attempt: Option<usize>,
    hilbert: Option<Vec<usize>>,
    table: Option<BettiTable>,
    syzygy_ranks: Option<Vec<usize>>,
}

fn bundles(
    t: Target,
    curve: &NodalRationalCurve,
) -> (LineBundleData, LineBundleData, LineBundleData) {
    let p = curve.p();
    let eta = full_torsion_bundle(curve);
    let k = canonical_multipliers(curve);
    let (f, l) = match t {
        Target::PrymGreen => (LineBundleData::trivial(curve.g), k.tensor(&eta, p)),
        Target::Torsion { k: tw } => (eta.pow(tw as i64, p), k.tensor(&eta, p)),
        Target::Canonical => (eta.clone(), k),
    };
    (eta, f, l)
}

fn compute(
    t: Target,
    curve: &NodalRationalCurve,
    seed: u64,
    path: PathChoice,
    want_table: bool,
) -> syzlab::Result<Computed> {
    let g = curve.g;
    let (eta, f, l) = bundles(t, curve);
    let (col, _) = t.entry(g);
    let use_direct = matches!(path, PathChoice::Direct | PathChoice::Both);
    let use_art = !matches!(path, PathChoice::Direct);
    let mut out = Computed {
        direct: None,
        artinian: None,
        matrix: None,
        pair_attempt: None,
        hilbert: None,
        table: None,
        syzygy_ranks: None,
    };
    let mut direct_table = None;
    if use_direct {
        out.direct = Some(match t {
            Target::PrymGreen => koszul_dim_ring(curve, &l, col, 1, DEFAULT_DIRECT_LIMIT)?,
            _ => koszul_dim_twisted(curve, &f, &l, col, DEFAULT_DIRECT_LIMIT)?,
        });
        if want_table {
            direct_table = Some(match t {
                Target::PrymGreen => {
                    let h = measured_hilbert(curve, &l, g - 1);
                    let row1 = ring_row1(curve, &l, g - 2, DEFAULT_DIRECT_LIMIT)?;
                    ring_table_from_row1(g - 1, &h, &row1)
                }
                Target::Torsion { .. } => {
                    let (r0, r1) = twisted_rows_direct(curve, &f, &l, g - 2, DEFAULT_DIRECT_LIMIT)?;
                    twisted_table(t.module(), &r0, &r1)
                }
                Target::Canonical => {
                    let (r0, r1) = twisted_rows_direct(curve, &f, &l, g - 1, DEFAULT_DIRECT_LIMIT)?;
                    twisted_table(t.module(), &r0, &r1)
                }
            });
        }
    }
    if use_art {
        let (red, m) = match t {
            Target::PrymGreen => (artinian_reduce_omega(curve, &eta, seed)?, g / 2),
            Target::Torsion { k } => (
                artinian_reduce(curve, ReductionKind::TorsionModule { k }, &eta, seed)?,
                col,
            ),
            Target::Canonical => (
                artinian_reduce(curve, ReductionKind::CanonicalTwist, &eta, seed)?,
                col,
            ),
        };
        let r = pipeline_kernel(&red, m, DEFAULT_ARTINIAN_LIMIT)?;
        out.artinian = Some(r.kernel_dim);
        out.matrix = Some((r.rows, r.cols));
        out.pair_attempt = Some(r.pair_attempt);
        out.hilbert = Some(r.hilbert);
        if want_table {
            out.table = Some(match t {
                Target::PrymGreen => ring_table(&red, DEFAULT_ARTINIAN_LIMIT)?,
                _ => {
                    let (r0, r1) = twisted_table_rows(&red, DEFAULT_ARTINIAN_LIMIT)?;
                    twisted_table(t.module(), &r0, &r1)
                }
            });
        }
    }
    if let (Some(a), Some(d)) = (out.artinian, out.direct) {
        if a != d {
            return Err(SyzError::Invalid(format!(
                "direct path gives {d}, artinian path gives {a}"
            )));
        }
    }
    match (&out.table, direct_table) {
        (Some(a), Some(d)) if *a != d => {
            return Err(SyzError::Invalid(
                "direct and artinian Betti tables differ".into(),
            ));
        }
        (None, Some(d)) => out.table = Some(d),
        _ => {}
    }
    let dim = out.artinian.or(out.direct).unwrap_or(0);
    if matches!(t, Target::PrymGreen) && g == 8 && dim > 0 {
        let syz = linear_syzygy_space(curve, &l)?;
        out.syzygy_ranks = Some(
            syz.tensors
                .iter()
                .map(syzygy_rank)
                .collect::<syzlab::Result<_>>()?,
        );
    }
    Ok(out)
}

fn run_trial(
    t: Target,
    g: usize,
    field: &FieldParams,
    index: usize,
    base: u64,
    a: &CommonArgs,
    expected: &BettiTable,
) -> Trial {
    let seed = derive_seed(base, index as u64);
    let start = Instant::now();
    let mut trial = Trial {
        index,
        seed,
        ..Default::default()
    };
    let res = random_curve(g, *field, seed)
        .and_then(|c| compute(t, &c, seed, a.path, !a.no_table));
    match res {
        Ok(c) => {
            let dim = c.artinian.or(c.direct);
            let (col, row) = t.entry(g);
            trial.matches_expected = match &c.table {
                Some(tb) => tb == expected,
                None => dim == Some(expected.get(col, row) as usize),
            };
            trial.dimension = dim;
            trial.direct = c.direct;
            trial.artinian = c.artinian;
            trial.matrix = c.matrix;
            trial.pair_attempt = c.pair_attempt;
            trial.hilbert = c.hilbert;
            trial.table = c.table.as_ref().map(|x| x.to_json());
            trial.betti = c.table;
            trial.syzygy_ranks = c.syzygy_ranks;
        }
        Err(e) => trial.error = Some(e.to_string()),
    }
    trial.seconds = start.elapsed().as_secs_f64();
    trial
}

/// Semicontinuity: one clean trial confirms a vanishing prediction, while a
/// nonzero prediction or an observed excess needs all trials to agree.
pub fn decide(expected_dim: usize, trials: &[Trial]) -> (Verdict, Option<usize>) {
    if trials.is_empty() || trials.iter().any(|t| t.error.is_some()) {
        return (Verdict::Error, None);
    }
    let dims: Vec<usize> = trials.iter().map(|t| t.dimension.unwrap_or(0)).collect();
    let min = *dims.iter().min().expect("nonempty");
    let all_equal = dims.iter().all(|&d| d == min);
    if expected_dim == 0 && trials.iter().any(|t| t.matches_expected) {
        return (Verdict::Verified, None);
    }
    if expected_dim > 0 && trials.iter().all(|t| t.matches_expected) {
        return (Verdict::Verified, None);
    }
    if min > expected_dim && all_equal {
        return (Verdict::ExtraSyzygy, Some(min - expected_dim));
    }
    (Verdict::Inconclusive, None)
}

pub fn verify(target: &VerifyTarget) -> RunReport {
    let (t, a) = match target {
        VerifyTarget::PrymGreen(a) => (Target::PrymGreen, a),
        VerifyTarget::TorsionBundle { common, k } => (Target::Torsion { k: *k }, common),
        VerifyTarget::Canonical(a) => (Target::Canonical, a),
    };
    let start = Instant::now();
    let g = a.genus;
    let mut report = RunReport {
        command: format!("verify {}", t.name()),
        parameters: Parameters {
            genus: g,
            level: a.level,
            k: if let Target::Torsion { k } = t {
                Some(k)
            } else {
                None
            },
            prime: a.prime,
            root: None,
            prime_range: DEFAULT_PRIME_RANGE,
            seed: a.seed,
            trials: a.trials,
            path: a.path,
            table: !a.no_table,
        },
        target: String::new(),
        expected_dimension: 0,
        expected_table: None,
        trials: Vec::new(),
        verdict: Verdict::Error,
        excess: None,
        error: None,
        timings: Timings { total_seconds: 0.0 },
    };
    if let Err(e) = t.check(g, a.level) {
        report.error = Some(e);
        return report;
    }
    if a.trials == 0 {
        report.error = Some("at least one trial is required".into());
        return report;
    }
    let field = match field_for(a.level, a.prime) {
        Ok(f) => f,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.parameters.prime = Some(field.p);
    report.parameters.root = Some(field.r);
    report.target = t.describe(g);
    let expected = expected_table(g, t.module(), a.level);
    let (col, row) = t.entry(g);
    report.expected_dimension = expected.get(col, row) as usize;
    report.expected_table = Some(expected.to_json());
    report.trials = (0..a.trials)
        .into_par_iter()
        .map(|i| run_trial(t, g, &field, i, a.seed, a, &expected))
        .collect();
    let (verdict, excess) = decide(report.expected_dimension, &report.trials);
    report.verdict = verdict;
    report.excess = excess;
    report.error = report.trials.iter().find_map(|t| t.error.clone());
    report.timings.total_seconds = start.elapsed().as_secs_f64();
    report
}

impl RunReport {
    pub fn render(&self, quiet: bool) -> String {
        let mut s = String::new();
        let p = &self.parameters;
        let verdict = serde_json::to_value(self.verdict)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        if quiet {
            let dims: Vec<String> = self
                .trials
                .iter()
                .map(|t| t.dimension.map_or("-".into(), |d| d.to_string()))
                .collect();
            let _ = write!(
                s,
                "{} g={} l={}: {} (dims {})",
                self.command,
                p.genus,
                p.level,
                verdict,
                dims.join(",")
            );
            if let Some(e) = &self.error {
                let _ = write!(s, ": {e}");
            }
            s.push('\n');
            return s;
        }
        let _ = writeln!(
            s,
            "{}: g={} l={}{} p={} r={} seed={} trials={} path={:?}",
            self.command,
            p.genus,
            p.level,
            p.k.map_or(String::new(), |k| format!(" k={k}")),
            p.prime.map_or("-".into(), |x| x.to_string()),
            p.root.map_or("-".into(), |x| x.to_string()),
            p.seed,
            p.trials,
            p.path
        );
        if !self.target.is_empty() {
            let _ = writeln!(
                s,
                "target {}: expected {}",
                self.target, self.expected_dimension
            );
        }
        for t in &self.trials {
            let _ = write!(s, "trial {} seed {:#018x}: ", t.index, t.seed);
            match (&t.error, t.dimension) {
                (Some(e), _) => {
                    let _ = write!(s, "error: {e}");
                }
                (None, Some(d)) => {
                    let _ = write!(s, "dim {d}");
                    if let Some((r, c)) = t.matrix {
                        let _ = write!(s, ", matrix {r}x{c}");
                    }
                    if let Some(a) = t.pair_attempt {
                        let _ = write!(s, ", pair attempt {a}");
                    }
                    if let Some(r) = &t.syzygy_ranks {
                        let _ = write!(s, ", syzygy rank {r:?}");
                    }
                }
                (None, None) => {}
            }
            let _ = writeln!(s, " ({:.2} s)", t.seconds);
            if let Some(b) = &t.betti {
                s.push_str(&b.render());
            }
        }
        let _ = write!(s, "verdict: {verdict}");
        if let Some(x) = self.excess {
            let _ = write!(s, " (excess {x})");
        }
        if let Some(e) = &self.error {
            let _ = write!(s, ": {e}");
        }
        let _ = writeln!(s, " [{:.2} s]", self.timings.total_seconds);
        s
    }
}
