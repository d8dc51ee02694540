//! Evaluate formulas at every world of a small model.

use densify::logic::{extension, model_check, parse_formula};
use densify::PointedModel;

fn main() -> densify::Result<()> {
    // r -> a -> b, p true at b only
    let m = PointedModel::from_parts(&["r", "a", "b"], "r", &[("r", "a"), ("a", "b")], &[("p", vec!["b"])])?;
    for text in ["p", "<>p", "<><>p", "<><><>p", "[]false", "<>[]false"] {
        let f = parse_formula(text)?;
        let ext = extension(&m, &f);
        let worlds: Vec<&str> = ext.ones().map(|w| m.name(w)).collect();
        println!("{text:<10} root: {:<5} true at {worlds:?}", model_check(&m, m.root(), &f)?);
    }
    Ok(())
}
