//! Search small frames for a model of a formula under density axioms.

use densify::logic::parse_formula;
use densify::oracle::sat_oracle;
use densify::AxiomSet;

fn main() -> densify::Result<()> {
    let axioms = AxiomSet::parse("2>3")?;
    for text in ["p", "<><>p & ~<>p", "<>~false & ~<><>~false", "[]p & <>~p"] {
        let phi = parse_formula(text)?;
        match sat_oracle(&phi, &axioms, 4)? {
            Some(m) => {
                let edges: Vec<(&str, &str)> = m.edges().map(|(x, y)| (m.name(x), m.name(y))).collect();
                println!("{text}: {} worlds {edges:?}", m.len());
            }
            None => println!("{text}: no model with at most 4 worlds"),
        }
    }
    Ok(())
}
