//! Bisimilarity and its depth-indexed approximations `~_k` over a fixed set
//! of variables.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::kripke::{PointedModel, World};

/// A relation between the worlds of two (possibly identical) models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRelation {
    rows: Vec<FixedBitSet>,
    right_len: usize,
}

impl CrossRelation {
    fn empty(left_len: usize, right_len: usize) -> Self {
        CrossRelation { rows: vec![FixedBitSet::with_capacity(right_len); left_len], right_len }
    }

    pub fn contains(&self, x: World, y: World) -> bool {
        self.rows[x].contains(y)
    }

    fn set(&mut self, x: World, y: World, value: bool) {
        self.rows[x].set(y, value);
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (World, World)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }

    pub fn is_subset(&self, other: &CrossRelation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.right_len)
    }
}

fn agree_on(left: &PointedModel, x: World, right: &PointedModel, y: World, vars: &BTreeSet<String>) -> bool {
    vars.iter().all(|p| left.holds(p, x) == right.holds(p, y))
}

fn zig_zag(left: &PointedModel, x: World, right: &PointedModel, y: World, rel: &CrossRelation) -> bool {
    let forth = left
        .successors(x)
        .iter()
        .all(|&v| right.successors(y).iter().any(|&v2| rel.contains(v, v2)));
    forth
        && right
            .successors(y)
            .iter()
            .all(|&v2| left.successors(x).iter().any(|&v| rel.contains(v, v2)))
}

/// `~_0 .. ~_K` between two models, over the variables `vars`.
#[derive(Clone, Debug)]
pub struct KBisimTable {
    pub vars: BTreeSet<String>,
    levels: Vec<CrossRelation>,
}

impl KBisimTable {
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &CrossRelation {
        &self.levels[k]
    }

    pub fn related(&self, k: usize, x: World, y: World) -> bool {
        self.levels[k].contains(x, y)
    }
}

/// Builds `~_0` from agreement on `vars`, then each `~_{k+1}` from `~_k` by
/// the zig-zag clauses.
pub fn k_bisim_table(
    left: &PointedModel,
    right: &PointedModel,
    vars: &BTreeSet<String>,
    max_level: usize,
) -> KBisimTable {
    let mut base = CrossRelation::empty(left.len(), right.len());
    for x in left.worlds() {
        for y in right.worlds() {
            base.set(x, y, agree_on(left, x, right, y, vars));
        }
    }
    let mut levels = vec![base];
    for k in 0..max_level {
        let prev = &levels[k];
        let mut next = CrossRelation::empty(left.len(), right.len());
        for (x, y) in levels[0].pairs() {
            if zig_zag(left, x, right, y, prev) {
                next.set(x, y, true);
            }
        }
        levels.push(next);
    }
    KBisimTable { vars: vars.clone(), levels }
}

/// Greatest bisimulation, over every variable true somewhere in either model.
pub fn full_bisim(left: &PointedModel, right: &PointedModel) -> CrossRelation {
    let vars: BTreeSet<String> = left.support().union(&right.support()).cloned().collect();
    let mut rel = CrossRelation::empty(left.len(), right.len());
    for x in left.worlds() {
        for y in right.worlds() {
            rel.set(x, y, agree_on(left, x, right, y, &vars));
        }
    }
    loop {
        let doomed: Vec<(World, World)> = rel
            .pairs()
            .filter(|&(x, y)| !zig_zag(left, x, right, y, &rel))
            .collect();
        if doomed.is_empty() {
            return rel;
        }
        for (x, y) in doomed {
            rel.set(x, y, false);
        }
    }
}

/// Class ids of `~_0 .. ~_K` on one model, by signature refinement: the
/// level-`j+1` signature of `w` is its variable profile plus the set of
/// level-`j` ids of its successors. Ids are numbered in first-seen order.
pub fn refine_levels(model: &PointedModel, vars: &BTreeSet<String>, max_level: usize) -> Vec<Vec<usize>> {
    let profiles: Vec<Vec<bool>> = model
        .worlds()
        .map(|w| vars.iter().map(|p| model.holds(p, w)).collect())
        .collect();
    let base = number_by_signature(profiles.iter());
    let mut levels = vec![base.clone()];
    for j in 0..max_level {
        let prev = &levels[j];
        let sigs: Vec<(usize, BTreeSet<usize>)> = model
            .worlds()
            .map(|w| (base[w], model.successors(w).iter().map(|&v| prev[v]).collect()))
            .collect();
        levels.push(number_by_signature(sigs.iter()));
    }
    levels
}

fn number_by_signature<'a, S: std::hash::Hash + Eq + 'a>(sigs: impl Iterator<Item = &'a S>) -> Vec<usize> {
    let mut ids: HashMap<&S, usize> = HashMap::new();
    sigs.map(|s| {
        let next = ids.len();
        *ids.entry(s).or_insert(next)
    })
    .collect()
}

fn group(ids: &[usize]) -> Vec<Vec<World>> {
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); count];
    for (w, &c) in ids.iter().enumerate() {
        classes[c].push(w);
    }
    classes
}

/// The partition of `W` into `~_k` classes, ordered by least member.
pub fn classes_mod_k_bisim(model: &PointedModel, vars: &BTreeSet<String>, k: usize) -> Vec<Vec<World>> {
    let levels = refine_levels(model, vars, k);
    group(&levels[k])
}
