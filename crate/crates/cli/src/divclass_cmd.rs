use std::fmt::Write as _;

use serde_json::json;

use syzlab::divclass::{
    class_formula, derive_class_by_sums, g12_combination_report, odd_genus_combination, ClassKind,
};

use crate::{DivclassArgs, Outcome};

pub fn run(a: &DivclassArgs) -> anyhow::Result<Outcome> {
    let mut text = String::new();
    let mut j = serde_json::Map::new();
    if let Some(kind) = &a.kind {
        let kind: ClassKind = kind.parse()?;
        let g = a
            .genus
            .ok_or_else(|| anyhow::anyhow!("--genus is required"))?;
        let ell = a
            .level
            .ok_or_else(|| anyhow::anyhow!("--level is required"))?;
        let class = if a.derive {
            derive_class_by_sums(kind, g, ell, a.normalized)?
        } else {
            class_formula(kind, g, ell, a.normalized)?
        };
        let _ = writeln!(text, "{kind:?}(g={g}, l={ell}) = {class}");
        j.insert("kind".into(), json!(kind));
        j.insert("genus".into(), json!(g));
        j.insert("level".into(), json!(ell));
        j.insert("derived".into(), json!(a.derive));
        j.insert("normalized".into(), json!(a.normalized));
        j.insert("class".into(), class.to_json());
    }
    if let Some(i) = a.combo_odd {
        let c = odd_genus_combination(i)?;
        let _ = writeln!(
            text,
            "i={i} (g={}): alpha = {}, beta = {}, combination = {}, lambda coefficient {} -> {:?}",
            2 * i + 1,
            c.alpha,
            c.beta,
            c.combination,
            c.lambda_coefficient,
            c.bigness
        );
        j.insert(
            "combo_odd".into(),
            json!({
                "i": i,
                "alpha": c.alpha.to_string(),
                "beta": c.beta.to_string(),
                "slope": c.slope.to_string(),
                "combination": c.combination.to_json(),
                "lambda_coefficient": c.lambda_coefficient.to_string(),
                "lambda_identity_holds": c.lambda_identity_holds,
                "bigness": format!("{:?}", c.bigness).to_lowercase(),
            }),
        );
    }
    if a.combo_g12 {
        let r = g12_combination_report();
        let _ = writeln!(text, "{r}");
        j.insert(
            "combo_g12".into(),
            json!({
                "z_formula_full": r.z_formula_full.to_json(),
                "z_formula_lambda13": r.z_formula_lambda13.to_json(),
                "z_derived_full": r.z_derived_full.to_json(),
                "z_derived_lambda13": r.z_derived_lambda13.to_json(),
                "z_stated": r.z_stated.to_json(),
                "d_formula_full": r.d_formula_full.to_json(),
                "formula_scalar_match": r.formula_scalar_match,
                "derived_scalar_match": r.derived_scalar_match,
                "target": r.target.to_json(),
                "combination_with_formula": r.combination_with_formula.to_json(),
                "combination_with_derived": r.combination_with_derived.to_json(),
                "combination_with_stated": r.combination_with_stated.to_json(),
                "reproduces_target": r.reproduces_target(),
            }),
        );
    }
    anyhow::ensure!(
        !j.is_empty(),
        "give a class kind, --combo-odd or --combo-g12"
    );
    Ok(Outcome {
        json: serde_json::Value::Object(j),
        text,
        exit_code: 0,
    })
}
