//! Check the density conditions on a frame and close it under them.

use densify::kripke::{check_axiom_condition, saturate_to_phi_frame};
use densify::{AxiomSet, PointedModel};

fn show(label: &str, m: &PointedModel, axioms: &AxiomSet) {
    println!("{label}: {} worlds, {} edges", m.len(), m.edge_count());
    for a in axioms.iter() {
        let bad: Vec<(&str, &str)> = check_axiom_condition(m, a).into_iter().map(|(x, y)| (m.name(x), m.name(y))).collect();
        println!("  {a}: {}", if bad.is_empty() { "holds".to_string() } else { format!("fails at {bad:?}") });
    }
}

fn main() -> densify::Result<()> {
    let axioms = AxiomSet::parse("2>3, 3>4")?;
    let chain = PointedModel::from_parts(&["r", "a", "b", "c"], "r", &[("r", "a"), ("a", "b"), ("b", "c")], &[])?;
    show("chain", &chain, &axioms);
    let closed = saturate_to_phi_frame(&chain, &axioms);
    show("saturated", &closed, &axioms);
    let edges: Vec<(&str, &str)> = closed.edges().map(|(x, y)| (closed.name(x), closed.name(y))).collect();
    println!("  edges {edges:?}");
    Ok(())
}
