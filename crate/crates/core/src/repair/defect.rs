use std::cmp::Ordering;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::kripke::{DepthMap, PointedModel, World};
use crate::logic::{Axiom, AxiomSet};

/// A witness that the current model lacks a depth-graded copy.
///
/// * `Type2 { x, y }`: `x R y`, but no successor `y'` of `x` at depth
///   `d(x) + 1` has the same image as `y`.
/// * `Type3 { x, z, axiom }`: `x R^m z`, but there is no chain
///   `x R w1 R .. R w(n-1) R z` with `d(wj) = d(x) + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Defect {
    Type2 { x: World, y: World },
    Type3 { x: World, z: World, axiom: Axiom },
}

impl Defect {
    pub fn source(&self) -> World {
        match *self {
            Defect::Type2 { x, .. } | Defect::Type3 { x, .. } => x,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            Defect::Type2 { .. } => "type2".to_string(),
            Defect::Type3 { axiom, .. } => format!("type3({axiom})"),
        }
    }

    pub fn describe(&self, model: &PointedModel) -> DefectInfo {
        match *self {
            Defect::Type2 { x, y } => DefectInfo {
                kind: self.kind(),
                x: model.name(x).to_string(),
                other: model.name(y).to_string(),
            },
            Defect::Type3 { x, z, .. } => DefectInfo {
                kind: self.kind(),
                x: model.name(x).to_string(),
                other: model.name(z).to_string(),
            },
        }
    }

    fn sort_key<'a>(&self, model: &'a PointedModel) -> (&'a str, &'a str, Option<Axiom>) {
        match *self {
            Defect::Type2 { x, y } => (model.name(x), model.name(y), None),
            Defect::Type3 { x, z, axiom } => (model.name(x), model.name(z), Some(axiom)),
        }
    }

    pub fn cmp_in(&self, other: &Defect, model: &PointedModel) -> Ordering {
        self.sort_key(model).cmp(&other.sort_key(model))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectInfo {
    pub kind: String,
    pub x: String,
    /// `y` for type 2, `z` for type 3.
    pub other: String,
}

/// Worlds reachable from `x` in exactly `steps` steps.
pub fn step_successors(model: &PointedModel, x: World, steps: usize) -> FixedBitSet {
    let mut layer = FixedBitSet::with_capacity(model.len());
    layer.insert(x);
    for _ in 0..steps {
        let mut next = FixedBitSet::with_capacity(model.len());
        for w in layer.ones() {
            for &v in model.successors(w) {
                next.insert(v);
            }
        }
        layer = next;
    }
    layer
}

/// The worlds `z` reachable from `x` by a chain `x R w1 .. R w(n-1) R z` with
/// `d(wj) = d(x) + j`.
pub fn graded_chain_targets(model: &PointedModel, depth: &DepthMap, x: World, n: usize) -> FixedBitSet {
    let mut layer = FixedBitSet::with_capacity(model.len());
    layer.insert(x);
    for j in 1..n {
        let mut next = FixedBitSet::with_capacity(model.len());
        for w in layer.ones() {
            for &v in model.successors(w) {
                if depth[v] == depth[x] + j {
                    next.insert(v);
                }
            }
        }
        layer = next;
    }
    let mut targets = FixedBitSet::with_capacity(model.len());
    for w in layer.ones() {
        for &v in model.successors(w) {
            targets.insert(v);
        }
    }
    targets
}

pub(crate) fn is_type2(model: &PointedModel, depth: &DepthMap, map: &[World], x: World, y: World) -> bool {
    model.has_edge(x, y)
        && !model
            .successors(x)
            .iter()
            .any(|&y2| depth[y2] == depth[x] + 1 && map[y2] == map[y])
}

pub(crate) fn is_type3(model: &PointedModel, depth: &DepthMap, x: World, z: World, axiom: &Axiom) -> bool {
    step_successors(model, x, axiom.m()).contains(z) && !graded_chain_targets(model, depth, x, axiom.n()).contains(z)
}

pub(crate) fn is_defect(model: &PointedModel, depth: &DepthMap, map: &[World], defect: &Defect) -> bool {
    match *defect {
        Defect::Type2 { x, y } => is_type2(model, depth, map, x, y),
        Defect::Type3 { x, z, ref axiom } => is_type3(model, depth, x, z, axiom),
    }
}

/// Type-2 defects at depth below `budget` and type-3 defects at depth at most
/// `budget - m`, sorted by source id, then target id, then axiom.
pub(crate) fn defects_within(
    model: &PointedModel,
    depth: &DepthMap,
    map: &[World],
    axioms: &AxiomSet,
    budget: usize,
) -> Vec<Defect> {
    let mut out = Vec::new();
    for x in model.worlds() {
        let dx = depth[x];
        if dx < budget {
            for &y in model.successors(x) {
                if is_type2(model, depth, map, x, y) {
                    out.push(Defect::Type2 { x, y });
                }
            }
        }
        for axiom in axioms {
            if dx + axiom.m() > budget {
                continue;
            }
            let reach = step_successors(model, x, axiom.m());
            let graded = graded_chain_targets(model, depth, x, axiom.n());
            for z in reach.ones() {
                if !graded.contains(z) {
                    out.push(Defect::Type3 { x, z, axiom: *axiom });
                }
            }
        }
    }
    out.sort_by(|a, b| a.cmp_in(b, model));
    out
}
