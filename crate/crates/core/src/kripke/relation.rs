use fixedbitset::FixedBitSet;

use super::{PointedModel, World};

/// Binary relation on the worlds of one model, stored as successor bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut rel = Relation::empty(n);
        for (w, row) in rel.rows.iter_mut().enumerate() {
            row.insert(w);
        }
        rel
    }

    pub fn of_model(model: &PointedModel) -> Self {
        let mut rel = Relation::empty(model.len());
        for (x, y) in model.edges() {
            rel.rows[x].insert(y);
        }
        rel
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: World, y: World) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: World) -> &FixedBitSet {
        &self.rows[x]
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Relational composition: `x (self;other) z` iff `x self y other z` for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.size();
        let mut out = Relation::empty(n);
        for x in 0..n {
            for y in self.rows[x].ones() {
                out.rows[x].union_with(&other.rows[y]);
            }
        }
        out
    }

    pub fn pairs(&self) -> impl Iterator<Item = (World, World)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }
}
