//! Unravel a cyclic model into a tree, plain and closed, and check both maps.

use densify::kripke::{unravel, unravel_closed};
use densify::PointedModel;

fn main() -> densify::Result<()> {
    let m = PointedModel::from_parts(&["r", "a"], "r", &[("r", "a"), ("a", "r")], &[("p", vec!["a"])])?;
    for bound in 0..=3 {
        let plain = unravel(&m, bound);
        let closed = unravel_closed(&m, bound);
        println!(
            "bound {bound}: plain {} nodes, back clause {}; closed {} worlds, p-morphism {}",
            plain.source.len(),
            if plain.verify().is_empty() { "holds" } else { "fails at the leaves" },
            closed.source.len(),
            closed.verify().is_empty(),
        );
    }
    let f = unravel_closed(&m, 2);
    for w in f.source.worlds() {
        println!("  {:<8} -> {}", f.source.name(w), f.target.name(f.map[w]));
    }
    Ok(())
}
