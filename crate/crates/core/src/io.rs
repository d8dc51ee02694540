//! JSON model and map files.
//!
//! A model file is `{"worlds": [..], "root": id, "edges": [[x, y], ..],
//! "valuation": {p: [..], ..}}`. Unknown fields are rejected. Canonical
//! output sorts worlds, edges and valuation entries by id, so saving a
//! loaded canonical file reproduces it byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kripke::PointedModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    pub root: String,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

/// `{"map": {source-id: target-id, ..}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub map: BTreeMap<String, String>,
}

impl ModelFile {
    pub fn from_model(model: &PointedModel) -> Self {
        let mut worlds: Vec<String> = model.names().to_vec();
        worlds.sort();
        let mut edges: Vec<(String, String)> = model
            .edges()
            .map(|(x, y)| (model.name(x).to_string(), model.name(y).to_string()))
            .collect();
        edges.sort();
        let valuation = model
            .valuation()
            .iter()
            .map(|(p, ws)| {
                let mut names: Vec<String> = ws.iter().map(|&w| model.name(w).to_string()).collect();
                names.sort();
                (p.clone(), names)
            })
            .collect();
        ModelFile { worlds, root: model.name(model.root()).to_string(), edges, valuation }
    }

    pub fn to_model(&self) -> Result<PointedModel> {
        let valuation: Vec<(String, Vec<String>)> =
            self.valuation.iter().map(|(p, ws)| (p.clone(), ws.clone())).collect();
        let model = PointedModel::from_parts(&self.worlds, &self.root, &self.edges, &valuation)?;
        Ok(model)
    }
}

/// serde_json messages already end in `at line L column C`.
fn format_error(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn model_from_json(text: &str) -> Result<PointedModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(format_error)?;
    file.to_model()
}

/// Canonical pretty JSON with a trailing newline.
pub fn model_to_json(model: &PointedModel) -> String {
    let mut text = serde_json::to_string_pretty(&ModelFile::from_model(model)).expect("serializable");
    text.push('\n');
    text
}

pub fn load_model(path: impl AsRef<Path>) -> Result<PointedModel> {
    model_from_json(&std::fs::read_to_string(path)?)
}

pub fn save_model(model: &PointedModel, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, model_to_json(model))?;
    Ok(())
}

/// Pretty JSON with a trailing newline, for reports.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}
