//! Verify maps between models and pull valuations back along them.

use densify::morphism::{pullback_valuation, verify_pmorphism, PMorphism};
use densify::PointedModel;

fn main() -> densify::Result<()> {
    let cycle = PointedModel::from_parts(&["x", "y"], "x", &[("x", "y"), ("y", "x")], &[])?;
    let point = PointedModel::from_parts(&["w"], "w", &[("w", "w")], &[("p", vec!["w"])])?;
    let f = PMorphism::new(cycle, point, vec![0, 0]);
    println!("cycle -> point: {} violations", f.verify().violation_count());
    let pulled = pullback_valuation(&f, f.target.valuation())?;
    let source = f.source.clone().with_valuation(pulled);
    println!("  pulled back p holds at x: {}, y: {}", source.holds("p", 0), source.holds("p", 1));

    // collapsing a dead end onto a looping world fails the back clause
    let chain = PointedModel::from_parts(&["r", "a", "b"], "r", &[("r", "a"), ("a", "b")], &[])?;
    let target = PointedModel::from_parts(&["w"], "w", &[("w", "w")], &[])?;
    let report = verify_pmorphism(&chain, &target, &[0, 0, 0]);
    println!("chain -> point: {} violations", report.violation_count());
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
