//! Graded bisimilarity tables and the full bisimulation between two models.

use std::collections::BTreeSet;

use densify::bisim::{classes_mod_k_bisim, full_bisim, k_bisim_table};
use densify::PointedModel;

fn main() -> densify::Result<()> {
    let chain = PointedModel::from_parts(&["r", "a", "b"], "r", &[("r", "a"), ("a", "b")], &[("p", vec!["b"])])?;
    let vars: BTreeSet<String> = ["p".to_string()].into();
    let table = k_bisim_table(&chain, &chain, &vars, 3);
    for k in 0..=3 {
        let classes: Vec<Vec<&str>> = classes_mod_k_bisim(&chain, &vars, k)
            .iter()
            .map(|c| c.iter().map(|&w| chain.name(w)).collect())
            .collect();
        println!("~{k}: {} pairs, classes {classes:?}", table.level(k).len());
    }

    // a reflexive point and a two-cycle are bisimilar
    let point = PointedModel::from_parts(&["w"], "w", &[("w", "w")], &[])?;
    let cycle = PointedModel::from_parts(&["x", "y"], "x", &[("x", "y"), ("y", "x")], &[])?;
    let z = full_bisim(&cycle, &point);
    let pairs: Vec<(&str, &str)> = z.pairs().map(|(a, b)| (cycle.name(a), point.name(b))).collect();
    println!("cycle ~ point: {pairs:?}");
    Ok(())
}
