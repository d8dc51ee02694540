use fixedbitset::FixedBitSet;

use super::Formula;
use crate::error::{Error, Result};
use crate::kripke::{PointedModel, World};

/// The set of worlds satisfying `f`, computed bottom-up over the formula.
pub fn extension(model: &PointedModel, f: &Formula) -> FixedBitSet {
    let n = model.len();
    match f {
        Formula::Falsum => FixedBitSet::with_capacity(n),
        Formula::Prop(p) => {
            let mut set = FixedBitSet::with_capacity(n);
            if let Some(ws) = model.valuation().get(p) {
                for &w in ws {
                    set.insert(w);
                }
            }
            set
        }
        Formula::Not(a) => complement(extension(model, a)),
        Formula::Or(a, b) => {
            let mut set = extension(model, a);
            set.union_with(&extension(model, b));
            set
        }
        Formula::And(a, b) => {
            let mut set = extension(model, a);
            set.intersect_with(&extension(model, b));
            set
        }
        Formula::Implies(a, b) => {
            let mut set = complement(extension(model, a));
            set.union_with(&extension(model, b));
            set
        }
        Formula::Diamond(a) => {
            let inner = extension(model, a);
            let mut set = FixedBitSet::with_capacity(n);
            for w in model.worlds() {
                if model.successors(w).iter().any(|&v| inner.contains(v)) {
                    set.insert(w);
                }
            }
            set
        }
        Formula::Box(a) => {
            let inner = extension(model, a);
            let mut set = FixedBitSet::with_capacity(n);
            for w in model.worlds() {
                if model.successors(w).iter().all(|&v| inner.contains(v)) {
                    set.insert(w);
                }
            }
            set
        }
    }
}

fn complement(mut set: FixedBitSet) -> FixedBitSet {
    set.toggle_range(..);
    set
}

/// Kripke satisfaction `model, w |= f`.
pub fn model_check(model: &PointedModel, w: World, f: &Formula) -> Result<bool> {
    if !model.contains(w) {
        return Err(Error::UnknownWorld(format!("#{w}")));
    }
    Ok(extension(model, f).contains(w))
}
