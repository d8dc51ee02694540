//! Pointed p-morphisms: certification of the pointed/forth/back clauses and
//! the pullback of valuations along a certified map.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kripke::{PointedModel, Valuation, World};

/// A map between the worlds of two pointed models. Only the frame parts of
/// the models matter for verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMorphism {
    pub source: PointedModel,
    pub target: PointedModel,
    /// `map[s]` is the image of source world `s`.
    pub map: Vec<World>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForthViolation {
    pub source_edge: (String, String),
    pub image: (String, String),
}

/// `f(source) R' target_successor`, but no source successor maps there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackViolation {
    pub source: String,
    pub target_successor: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PMorphismReport {
    /// Source worlds without a valid image.
    pub unmapped: Vec<String>,
    /// `(f(root), target root)` when they differ.
    pub pointed: Option<(String, String)>,
    pub forth: Vec<ForthViolation>,
    pub back: Vec<BackViolation>,
}

impl PMorphismReport {
    pub fn is_empty(&self) -> bool {
        self.unmapped.is_empty() && self.pointed.is_none() && self.forth.is_empty() && self.back.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.unmapped.len() + usize::from(self.pointed.is_some()) + self.forth.len() + self.back.len()
    }
}

impl std::fmt::Display for PMorphismReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(w) = self.unmapped.first() {
            return write!(f, "world {w:?} has no image");
        }
        if let Some((got, want)) = &self.pointed {
            return write!(f, "root maps to {got:?}, not {want:?}");
        }
        if let Some(v) = self.forth.first() {
            return write!(
                f,
                "forth fails on {:?} -> {:?} (image {:?} -> {:?})",
                v.source_edge.0, v.source_edge.1, v.image.0, v.image.1
            );
        }
        if let Some(v) = self.back.first() {
            return write!(f, "back fails at {:?} towards {:?}", v.source, v.target_successor);
        }
        write!(f, "no violations")
    }
}

/// Lists every violation of the pointed, forth and back clauses.
pub fn verify_pmorphism(source: &PointedModel, target: &PointedModel, map: &[World]) -> PMorphismReport {
    let mut report = PMorphismReport::default();
    for s in source.worlds() {
        if map.get(s).is_none_or(|&t| !target.contains(t)) {
            report.unmapped.push(source.name(s).to_string());
        }
    }
    if !report.unmapped.is_empty() {
        return report;
    }
    let image = |s: World| map[s];

    if image(source.root()) != target.root() {
        report.pointed = Some((
            target.name(image(source.root())).to_string(),
            target.name(target.root()).to_string(),
        ));
    }
    for (x, y) in source.edges() {
        if !target.has_edge(image(x), image(y)) {
            report.forth.push(ForthViolation {
                source_edge: (source.name(x).to_string(), source.name(y).to_string()),
                image: (target.name(image(x)).to_string(), target.name(image(y)).to_string()),
            });
        }
    }
    for x in source.worlds() {
        for &t in target.successors(image(x)) {
            if !source.successors(x).iter().any(|&y| image(y) == t) {
                report.back.push(BackViolation {
                    source: source.name(x).to_string(),
                    target_successor: target.name(t).to_string(),
                });
            }
        }
    }
    report
}

impl PMorphism {
    pub fn new(source: PointedModel, target: PointedModel, map: Vec<World>) -> Self {
        PMorphism { source, target, map }
    }

    pub fn identity(model: &PointedModel) -> Self {
        PMorphism::new(model.clone(), model.clone(), model.worlds().collect())
    }

    pub fn verify(&self) -> PMorphismReport {
        verify_pmorphism(&self.source, &self.target, &self.map)
    }

    /// Reads `{"map": {src: tgt, ...}}` against the given models.
    pub fn from_json(source: PointedModel, target: PointedModel, text: &str) -> Result<Self> {
        let file: crate::io::MapFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut map = vec![usize::MAX; source.len()];
        for (s, t) in &file.map {
            let s = source.world_or_err(s)?;
            map[s] = target.world_or_err(t)?;
        }
        if let Some(s) = map.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Format(format!("world {:?} has no image", source.name(s))));
        }
        Ok(PMorphism::new(source, target, map))
    }

    pub fn to_json(&self) -> String {
        let file = crate::io::MapFile {
            map: self
                .source
                .worlds()
                .map(|s| (self.source.name(s).to_string(), self.target.name(self.map[s]).to_string()))
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("serializable");
        text.push('\n');
        text
    }
}

pub(crate) fn pull_back_unchecked(valuation: &Valuation, map: &[World]) -> Valuation {
    valuation
        .iter()
        .map(|(p, ws)| {
            let pre = map.iter().enumerate().filter(|(_, t)| ws.contains(t)).map(|(s, _)| s);
            (p.clone(), pre.collect())
        })
        .collect()
}

/// Preimage valuation `V'(p) = f^-1[V(p)]`; refuses uncertified maps.
pub fn pullback_valuation(f: &PMorphism, valuation: &Valuation) -> Result<Valuation> {
    let report = f.verify();
    if !report.is_empty() {
        return Err(Error::NotAPMorphism(report.to_string()));
    }
    Ok(pull_back_unchecked(valuation, &f.map))
}
