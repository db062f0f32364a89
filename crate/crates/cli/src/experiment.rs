use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use syzlab::curve::{canonical_multipliers, full_torsion_bundle, random_bundle, random_curve};
use syzlab::ff::FieldParams;
use syzlab::koszul::{linear_syzygy_space, syzygy_rank};
use syzlab::rng::derive_seed;

use crate::verify::{Timings, Verdict};
use crate::G8Args;

pub const G8_GENUS: usize = 8;
pub const G8_DEGREE: i64 = 14;
/// Minimum share of hits for each of the two syzygy ranks.
pub const RANK_SHARE: f64 = 0.2;

#[derive(Clone, Debug, Serialize)]
pub struct SampleHit {
    pub index: u64,
    pub seed: u64,
    pub dimension: usize,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub command: String,
    pub samples: u64,
    pub prime: u32,
    pub seed: u64,
    pub two_torsion: bool,
    pub hits: usize,
    pub rate: f64,
    /// `[N/(2p), 2N/p]`.
    pub hit_band: (f64, f64),
    pub in_band: bool,
    pub rank6: usize,
    pub rank7: usize,
    pub other: usize,
    pub hit_list: Vec<SampleHit>,
    pub verdict: Verdict,
    pub timings: Timings,
}

fn sample(
    field: &FieldParams,
    base: u64,
    index: u64,
    two_torsion: bool,
) -> syzlab::Result<Option<SampleHit>> {
    let seed = derive_seed(base, index);
    let curve = random_curve(G8_GENUS, *field, seed)?;
    let l = if two_torsion {
        canonical_multipliers(&curve).tensor(&full_torsion_bundle(&curve), curve.p())
    } else {
        random_bundle(&curve, G8_DEGREE, derive_seed(seed, 1))
    };
    let syz = linear_syzygy_space(&curve, &l)?;
    if syz.dim() == 0 {
        return Ok(None);
    }
    let ranks = syz
        .tensors
        .iter()
        .map(syzygy_rank)
        .collect::<syzlab::Result<Vec<_>>>()?;
    Ok(Some(SampleHit {
        index,
        seed,
        dimension: syz.dim(),
        ranks,
    }))
}

pub fn run_g8_experiment(a: &G8Args) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    let field = FieldParams::for_prime(a.prime, 2)?;
    let results: Vec<syzlab::Result<Option<SampleHit>>> = (0..a.samples)
        .into_par_iter()
        .map(|i| sample(&field, a.seed, i, a.two_torsion))
        .collect();
    let mut hit_list = Vec::new();
    for r in results {
        if let Some(h) = r? {
            hit_list.push(h);
        }
    }
    let hits = hit_list.len();
    let count = |r: usize| hit_list.iter().filter(|h| h.ranks == [r]).count();
    let (rank6, rank7) = (count(6), count(7));
    let other = hits - rank6 - rank7;
    let n = a.samples as f64;
    let p = a.prime as f64;
    let hit_band = (n / (2.0 * p), 2.0 * n / p);
    let in_band = (hits as f64) >= hit_band.0 && (hits as f64) <= hit_band.1;
    let verdict = if a.two_torsion {
        if rank6 as u64 == a.samples {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        }
    } else {
        let share = RANK_SHARE * hits as f64;
        if in_band && rank6 > 0 && rank7 > 0 && rank6 as f64 >= share && rank7 as f64 >= share {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(ExperimentReport {
        command: "experiment g8".into(),
        samples: a.samples,
        prime: a.prime,
        seed: a.seed,
        two_torsion: a.two_torsion,
        hits,
        rate: if a.samples == 0 { 0.0 } else { hits as f64 / n },
        hit_band,
        in_band,
        rank6,
        rank7,
        other,
        hit_list,
        verdict,
        timings: Timings {
            total_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

impl ExperimentReport {
    pub fn render(&self, quiet: bool) -> String {
        let mut s = String::new();
        let verdict = serde_json::to_value(self.verdict)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "experiment g8: N={} p={} seed={}{}: {} hits (rate {:.3e}, 1/p = {:.3e}), band [{:.2}, {:.2}] {}",
            self.samples,
            self.prime,
            self.seed,
            if self.two_torsion { " two-torsion" } else { "" },
            self.hits,
            self.rate,
            1.0 / self.prime as f64,
            self.hit_band.0,
            self.hit_band.1,
            if self.in_band { "inside" } else { "outside" }
        );
        let _ = writeln!(
            s,
            "syzygy rank 6: {}, rank 7: {}, other: {}",
            self.rank6, self.rank7, self.other
        );
        if !quiet && !self.two_torsion {
            for h in &self.hit_list {
                let _ = writeln!(
                    s,
                    "  sample {} (seed {:#018x}): dim {} ranks {:?}",
                    h.index, h.seed, h.dimension, h.ranks
                );
            }
        }
        let _ = writeln!(
            s,
            "verdict: {verdict} [{:.2} s]",
            self.timings.total_seconds
        );
        s
    }
}
