//! Build a depth-stratified filtration and run every verifier on it.

use densify::filtration::build_filtration;
use densify::logic::{model_check, parse_formula};
use densify::repair::ConditionScope;
use densify::{AxiomSet, PointedModel};

fn main() -> densify::Result<()> {
    let axioms = AxiomSet::parse("2>3")?;
    let model = PointedModel::from_parts(
        &["r", "a", "b", "c"],
        "r",
        &[("r", "a"), ("r", "b"), ("a", "c"), ("b", "c"), ("c", "c")],
        &[("p", vec!["a", "c"])],
    )?;
    let phi = parse_formula("<>(p & <>p) & <>~p")?;
    let f = build_filtration(&model, &phi, &axioms, ConditionScope::Bounded)?;
    for (i, class) in f.classes.iter().enumerate() {
        let members: Vec<&str> = class.iter().map(|&w| model.name(w)).collect();
        let succ: Vec<&str> = f.quotient.sorted_successors(i).into_iter().map(|c| f.quotient.name(c)).collect();
        println!("{:<4} {members:?} -> {succ:?}", f.quotient.name(i));
    }
    println!("root satisfies phi: {}", model_check(&f.quotient, f.root_class(), &phi)?);
    let report = f.verify(&axioms);
    println!("verifiers clean: {}", report.is_clean());

    let mut broken = f.clone();
    broken.corrupt_valuation(1, "p");
    println!("after flipping p on class 1, failing: {:?}", broken.verify(&axioms).failed());

    let chain = PointedModel::from_parts(&["r", "a", "b"], "r", &[("r", "a"), ("a", "b")], &[("p", vec!["b"])])?;
    if let Err(e) = build_filtration(&chain, &parse_formula("<><>p")?, &axioms, ConditionScope::Bounded) {
        println!("chain refused: {e}");
    }
    Ok(())
}
