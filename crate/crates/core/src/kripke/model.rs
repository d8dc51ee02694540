use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Index of a world inside one [`PointedModel`]. Indices are stable: worlds
/// are only ever appended.
pub type World = usize;

/// Variable name to the set of worlds where it holds. Variables that are
/// absent are false everywhere.
pub type Valuation = BTreeMap<String, BTreeSet<World>>;

/// A finite frame with a distinguished root and a valuation.
///
/// World identifiers are opaque strings; internally every world is addressed
/// by its [`World`] index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    names: Vec<String>,
    index: HashMap<String, World>,
    succ: Vec<BTreeSet<World>>,
    root: World,
    valuation: Valuation,
}

impl PointedModel {
    /// A model with a single world and nothing else.
    pub fn singleton(root: impl Into<String>) -> Self {
        let root = root.into();
        PointedModel {
            names: vec![root.clone()],
            index: HashMap::from([(root, 0)]),
            succ: vec![BTreeSet::new()],
            root: 0,
            valuation: Valuation::new(),
        }
    }

    /// Builds a model from string ids, rejecting duplicates and dangling ids.
    pub fn from_parts<S: AsRef<str>>(
        worlds: &[S],
        root: &str,
        edges: &[(S, S)],
        valuation: &[(S, Vec<S>)],
    ) -> Result<Self> {
        let mut names = Vec::with_capacity(worlds.len());
        let mut index = HashMap::with_capacity(worlds.len());
        for w in worlds {
            let w = w.as_ref();
            if index.insert(w.to_string(), names.len()).is_some() {
                return Err(Error::DuplicateWorld(w.to_string()));
            }
            names.push(w.to_string());
        }
        let root = *index.get(root).ok_or_else(|| Error::UnknownWorld(root.to_string()))?;
        let mut model = PointedModel {
            succ: vec![BTreeSet::new(); names.len()],
            names,
            index,
            root,
            valuation: Valuation::new(),
        };
        for (x, y) in edges {
            let x = model.world_or_err(x.as_ref())?;
            let y = model.world_or_err(y.as_ref())?;
            model.add_edge(x, y);
        }
        for (p, ws) in valuation {
            let entry = model.valuation.entry(p.as_ref().to_string()).or_default();
            for w in ws {
                let idx = *model
                    .index
                    .get(w.as_ref())
                    .ok_or_else(|| Error::UnknownWorld(w.as_ref().to_string()))?;
                entry.insert(idx);
            }
        }
        Ok(model)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn worlds(&self) -> std::ops::Range<World> {
        0..self.names.len()
    }

    pub fn root(&self) -> World {
        self.root
    }

    pub fn name(&self, w: World) -> &str {
        &self.names[w]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn world(&self, name: &str) -> Option<World> {
        self.index.get(name).copied()
    }

    pub fn world_or_err(&self, name: &str) -> Result<World> {
        self.world(name).ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn contains(&self, w: World) -> bool {
        w < self.names.len()
    }

    pub fn successors(&self, w: World) -> &BTreeSet<World> {
        &self.succ[w]
    }

    /// Successors of `w` sorted by id.
    pub fn sorted_successors(&self, w: World) -> Vec<World> {
        let mut out: Vec<World> = self.succ[w].iter().copied().collect();
        out.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        out
    }

    pub fn has_edge(&self, x: World, y: World) -> bool {
        self.succ[x].contains(&y)
    }

    pub fn edges(&self) -> impl Iterator<Item = (World, World)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    pub fn predecessors(&self) -> Vec<Vec<World>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (x, y) in self.edges() {
            preds[y].push(x);
        }
        preds
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn holds(&self, p: &str, w: World) -> bool {
        self.valuation.get(p).is_some_and(|ws| ws.contains(&w))
    }

    /// Variables whose extension is nonempty.
    pub fn support(&self) -> BTreeSet<String> {
        self.valuation
            .iter()
            .filter(|(_, ws)| !ws.is_empty())
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Appends a world; fails if the id is taken.
    pub fn add_world(&mut self, name: impl Into<String>) -> Result<World> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateWorld(name));
        }
        let w = self.names.len();
        self.index.insert(name.clone(), w);
        self.names.push(name);
        self.succ.push(BTreeSet::new());
        Ok(w)
    }

    /// Returns true if the edge is new.
    pub fn add_edge(&mut self, x: World, y: World) -> bool {
        self.succ[x].insert(y)
    }

    pub fn set_true(&mut self, p: &str, w: World) {
        self.valuation.entry(p.to_string()).or_default().insert(w);
    }

    pub fn set_valuation(&mut self, valuation: Valuation) {
        debug_assert!(valuation.values().flatten().all(|&w| w < self.len()));
        self.valuation = valuation;
    }

    pub fn with_valuation(mut self, valuation: Valuation) -> Self {
        self.set_valuation(valuation);
        self
    }

    /// Same frame, empty valuation.
    pub fn frame(&self) -> Self {
        self.clone().with_valuation(Valuation::new())
    }

    /// Smallest `prefix<counter>` id (counter advancing from `*counter`) not
    /// already used by this model.
    pub fn fresh_name(&self, prefix: &str, counter: &mut usize) -> String {
        loop {
            let name = format!("{prefix}{counter}");
            *counter += 1;
            if !self.index.contains_key(&name) {
                return name;
            }
        }
    }

    /// World indices sorted by id.
    pub fn sorted_worlds(&self) -> Vec<World> {
        let mut ws: Vec<World> = self.worlds().collect();
        ws.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        ws
    }
}
