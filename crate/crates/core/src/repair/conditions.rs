use serde::Serialize;

use super::defect::{graded_chain_targets, step_successors};
use crate::bisim::full_bisim;
use crate::error::Result;
use crate::kripke::{depth_map, PointedModel};
use crate::logic::AxiomSet;

/// Which worlds the two depth conditions are checked at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionScope {
    /// The successor condition where `d(x) < k`, the chain condition where
    /// `d(x) <= k - m`: exactly the instances a depth-`k` filtration uses.
    #[default]
    Bounded,
    /// Both conditions at every world.
    Strict,
}

/// `x R y`, but no successor of `x` one level deeper is bisimilar to `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuccessorViolation {
    pub x: String,
    pub y: String,
}

/// `x R^m z`, but no depth-graded `n`-chain from `x` ends in `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainViolation {
    pub axiom: String,
    pub x: String,
    pub z: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub k: usize,
    pub scope: ConditionScope,
    /// Set when the model has no true variables, so bisimilarity is taken
    /// over the bare frame.
    pub frame_only: bool,
    pub successor: Vec<SuccessorViolation>,
    pub chain: Vec<ChainViolation>,
}

impl ConditionReport {
    pub fn is_empty(&self) -> bool {
        self.successor.is_empty() && self.chain.is_empty()
    }
}

impl std::fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(v) = self.successor.first() {
            write!(f, "successor condition fails at ({:?}, {:?})", v.x, v.y)?;
        } else if let Some(v) = self.chain.first() {
            write!(f, "chain condition for {} fails at ({:?}, {:?})", v.axiom, v.x, v.z)?;
        } else {
            write!(f, "no violations")?;
        }
        let total = self.successor.len() + self.chain.len();
        if total > 1 {
            write!(f, " (+{} more)", total - 1)?;
        }
        Ok(())
    }
}

/// Checks, with `~` the full bisimilarity of `model` with itself:
///
/// * successor condition: if `x R y` then some `y'` with `x R y'`,
///   `d(y') = d(x) + 1` and `y' ~ y`;
/// * chain condition, per axiom: if `x R^m z` then some
///   `x R w1 .. R w(n-1) R z` with `d(wj) = d(x) + j`.
pub fn verify_bounded_conditions(
    model: &PointedModel,
    axioms: &AxiomSet,
    k: usize,
    scope: ConditionScope,
) -> Result<ConditionReport> {
    let depth = depth_map(model)?;
    let bisim = full_bisim(model, model);
    let strict = scope == ConditionScope::Strict;
    let mut report = ConditionReport {
        k,
        scope,
        frame_only: model.support().is_empty(),
        ..Default::default()
    };
    for x in model.sorted_worlds() {
        let dx = depth[x];
        if strict || dx < k {
            for y in model.sorted_successors(x) {
                let ok = model
                    .successors(x)
                    .iter()
                    .any(|&y2| depth[y2] == dx + 1 && bisim.contains(y2, y));
                if !ok {
                    report.successor.push(SuccessorViolation {
                        x: model.name(x).to_string(),
                        y: model.name(y).to_string(),
                    });
                }
            }
        }
        for axiom in axioms {
            if !strict && dx + axiom.m() > k {
                continue;
            }
            let reach = step_successors(model, x, axiom.m());
            let graded = graded_chain_targets(model, &depth, x, axiom.n());
            let mut missing: Vec<&str> = reach.ones().filter(|&z| !graded.contains(z)).map(|z| model.name(z)).collect();
            missing.sort();
            for z in missing {
                report.chain.push(ChainViolation {
                    axiom: axiom.to_string(),
                    x: model.name(x).to_string(),
                    z: z.to_string(),
                });
            }
        }
    }
    Ok(report)
}
