//! Check the bounded successor and chain conditions at several depths.

use densify::repair::{verify_bounded_conditions, ConditionScope};
use densify::{AxiomSet, PointedModel};

fn main() -> densify::Result<()> {
    let axioms = AxiomSet::parse("2>3")?;
    // r -> u -> v, v loops: graded up to depth 2
    let lasso = PointedModel::from_parts(&["r", "u", "v"], "r", &[("r", "u"), ("u", "v"), ("v", "v")], &[])?;
    for k in 0..=3 {
        for scope in [ConditionScope::Bounded, ConditionScope::Strict] {
            let report = verify_bounded_conditions(&lasso, &axioms, k, scope)?;
            let verdict = if report.is_empty() { "clean".to_string() } else { report.to_string() };
            println!("k = {k} {scope:?}: {verdict}");
        }
    }
    Ok(())
}
