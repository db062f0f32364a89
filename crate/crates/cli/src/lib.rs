//! Command-line harness: verification runs, Betti tables, the genus-8
//! sampling experiment and divisor-class queries.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod betti_cmd;
mod divclass_cmd;
mod experiment;
mod verify;

pub use experiment::{run_g8_experiment, ExperimentReport, SampleHit};
pub use verify::{verify, RunReport, Trial, Verdict};

use syzlab::ff::{self, FieldParams, DEFAULT_PRIME_RANGE};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TRIALS: usize = 3;
pub const THREADS_ENV: &str = "SYZLAB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "syzlab",
    version,
    about = "Syzygies of paracanonical curves over finite fields"
)]
pub struct Cli {
    /// Write the report as JSON to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Print only the summary line.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a vanishing prediction on random g-nodal rational curves.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Compute a Betti table and compare it with the expected one.
    Betti(BettiArgs),
    /// Sampling experiments.
    Experiment {
        #[command(subcommand)]
        which: ExperimentKind,
    },
    /// Evaluate divisor-class formulas on the level-ℓ moduli space.
    Divclass(DivclassArgs),
}

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyTarget {
    /// K_{g/2-2,1}(C, K⊗η) = 0 for even g.
    PrymGreen(CommonArgs),
    /// K_{g/2-1,1}(C; η^k, K⊗η) = 0 outside the exceptional cases.
    TorsionBundle {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: u32,
    },
    /// K_{⌊(g-1)/2⌋,1}(C; η, K) = 0.
    Canonical(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub level: u32,
    /// Field size; by default the smallest suitable prime in the default range.
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = PathChoice::Auto)]
    pub path: PathChoice,
    /// Skip the full Betti table and compute only the target dimension.
    #[arg(long)]
    pub no_table: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathChoice {
    /// The artinian reduction.
    Auto,
    Direct,
    Artinian,
    /// Both paths, which must agree.
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Ring,
    Torsion,
    Canonical,
}

#[derive(Args, Debug, Clone)]
pub struct BettiArgs {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub level: u32,
    #[arg(long, value_enum, default_value_t = TableKind::Ring)]
    pub kind: TableKind,
    /// Twist exponent for the torsion module.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Print the expected table without computing.
    #[arg(long)]
    pub expected_only: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ExperimentKind {
    /// Linear syzygies of random degree-14 bundles on genus-8 curves.
    G8(G8Args),
}

#[derive(Args, Debug, Clone)]
pub struct G8Args {
    #[arg(long, default_value_t = 20_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 10_007)]
    pub prime: u32,
    /// Use L = K⊗η with η of order 2 instead of a random bundle.
    #[arg(long)]
    pub two_torsion: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct DivclassArgs {
    /// u, zvirt, dvirt, kcanonical or pullback.
    pub kind: Option<String>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub level: Option<u32>,
    /// Evaluate the alternating Chern-class sums instead of the closed form.
    #[arg(long)]
    pub derive: bool,
    /// Drop the binomial prefactor.
    #[arg(long)]
    pub normalized: bool,
    /// Odd-genus effective combination for g = 2i+1.
    #[arg(long, value_name = "I")]
    pub combo_odd: Option<usize>,
    /// Genus-12 level-3 combination report.
    #[arg(long)]
    pub combo_g12: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub exit_code: i32,
}

/// Exit code for a verdict: 0 agrees with the prediction, 2 otherwise, 1 on error.
pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => 0,
        Verdict::ExtraSyzygy | Verdict::Inconclusive => 2,
        Verdict::Error => 1,
    }
}

pub fn field_for(level: u32, prime: Option<u32>) -> syzlab::Result<FieldParams> {
    match prime {
        Some(p) => FieldParams::for_prime(p, level),
        None => ff::select_prime_and_root(level, DEFAULT_PRIME_RANGE),
    }
}

/// Worker count from `SYZLAB_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

/// Sizes the global rayon pool once; later calls are no-ops.
pub fn init_threads() {
    if let Some(n) = thread_cap() {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses a command line (including the program name) and executes it.
pub fn run<I, T>(args: I) -> anyhow::Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> anyhow::Result<Outcome> {
    init_threads();
    let out = match &cli.command {
        Command::Verify { target } => {
            let report = verify(target);
            let text = report.render(cli.quiet);
            Outcome {
                json: serde_json::to_value(&report)?,
                text,
                exit_code: exit_code(report.verdict),
            }
        }
        Command::Betti(a) => betti_cmd::run(a, cli.quiet)?,
        Command::Experiment {
            which: ExperimentKind::G8(a),
        } => {
            let report = run_g8_experiment(a)?;
            let text = report.render(cli.quiet);
            Outcome {
                json: serde_json::to_value(&report)?,
                text,
                exit_code: exit_code(report.verdict),
            }
        }
        Command::Divclass(a) => divclass_cmd::run(a)?,
    };
    if let Some(path) = &cli.json {
        let s = serde_json::to_string_pretty(&out.json)?;
        std::fs::write(path, s + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(out)
}

/// Drops wall-clock fields so reports from identical runs compare equal.
pub fn strip_timings(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.retain(|k, _| k != "seconds" && k != "timings");
            m.values_mut().for_each(strip_timings);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
