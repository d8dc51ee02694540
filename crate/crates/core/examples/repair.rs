//! Repair depth-graded defects step by step, then run the scheduler.

use densify::repair::{run_repair, RepairState};
use densify::{AxiomSet, PointedModel};

fn main() -> densify::Result<()> {
    let axioms = AxiomSet::parse("2>3")?;
    let point = PointedModel::from_parts(&["w"], "w", &[("w", "w")], &[("p", vec!["w"])])?;

    let mut state = RepairState::new(&point)?;
    for _ in 0..3 {
        let defects = state.find_defects(&axioms, 2);
        let Some(d) = defects.first() else { break };
        let info = d.describe(state.current());
        let fresh = state.repair(d)?;
        let names: Vec<&str> = fresh.iter().map(|&u| state.current().name(u)).collect();
        println!("repaired {info:?}, added {names:?}");
    }
    println!("{}", state.census(&axioms, 2).table());

    for budget in 0..=2 {
        let run = run_repair(&point, &axioms, budget, 40)?;
        println!(
            "budget {budget}: {:?} after {} steps, {} worlds",
            run.status,
            run.state.steps(),
            run.state.current().len()
        );
    }
    Ok(())
}
