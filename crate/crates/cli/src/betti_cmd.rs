use std::fmt::Write as _;

use serde_json::json;

use syzlab::artinian::{
    artinian_reduce, artinian_reduce_omega, ring_table, twisted_table_rows, ReductionKind,
    DEFAULT_ARTINIAN_LIMIT,
};
use syzlab::betti::{expected_table, twisted_table, ModuleKind};
use syzlab::curve::{full_torsion_bundle, random_curve};

use crate::{field_for, BettiArgs, Outcome, TableKind};

pub fn run(a: &BettiArgs, quiet: bool) -> anyhow::Result<Outcome> {
    let g = a.genus;
    anyhow::ensure!(g >= 4, "genus must be at least 4");
    let module = match a.kind {
        TableKind::Ring => ModuleKind::ParacanonicalRing,
        TableKind::Torsion => {
            anyhow::ensure!(g % 2 == 0, "torsion tables need even genus");
            anyhow::ensure!(
                a.k >= 1 && a.k + 2 <= a.level,
                "k must satisfy 1 <= k <= level - 2"
            );
            ModuleKind::TorsionModule { k: a.k }
        }
        TableKind::Canonical => ModuleKind::CanonicalTwist,
    };
    let field = field_for(a.level, a.prime)?;
    let expected = expected_table(g, module, a.level);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "g={} l={} p={} kind={:?}",
        g, a.level, field.p, a.kind
    );
    if a.expected_only {
        if !quiet {
            text.push_str(&expected.render());
        }
        let j = json!({ "genus": g, "level": a.level, "prime": field.p, "expected": expected.to_json() });
        return Ok(Outcome {
            json: j,
            text,
            exit_code: 0,
        });
    }
    let curve = random_curve(g, field, a.seed)?;
    let eta = full_torsion_bundle(&curve);
    let computed = match module {
        ModuleKind::ParacanonicalRing => ring_table(
            &artinian_reduce_omega(&curve, &eta, a.seed)?,
            DEFAULT_ARTINIAN_LIMIT,
        )?,
        ModuleKind::TorsionModule { k } => {
            let red = artinian_reduce(&curve, ReductionKind::TorsionModule { k }, &eta, a.seed)?;
            let (r0, r1) = twisted_table_rows(&red, DEFAULT_ARTINIAN_LIMIT)?;
            twisted_table(module, &r0, &r1)
        }
        ModuleKind::CanonicalTwist => {
            let red = artinian_reduce(&curve, ReductionKind::CanonicalTwist, &eta, a.seed)?;
            let (r0, r1) = twisted_table_rows(&red, DEFAULT_ARTINIAN_LIMIT)?;
            twisted_table(module, &r0, &r1)
        }
    };
    let diffs = computed.differences(&expected);
    if !quiet {
        text.push_str(&computed.render());
        if !diffs.is_empty() {
            text.push_str("expected:\n");
            text.push_str(&expected.render());
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if diffs.is_empty() {
            "matches expected table".to_string()
        } else {
            format!("differs at {diffs:?}")
        }
    );
    let j = json!({
        "genus": g,
        "level": a.level,
        "prime": curve.p(),
        "seed": a.seed,
        "computed": computed.to_json(),
        "expected": expected.to_json(),
        "natural": computed.is_natural(),
        "differences": diffs,
    });
    Ok(Outcome {
        json: j,
        text,
        exit_code: if diffs.is_empty() { 0 } else { 2 },
    })
}
