use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::Formula;

/// `<>^m p -> <>^n p` with `n > m > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Axiom {
    m: usize,
    n: usize,
}

impl Axiom {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n > m && m > 1 {
            Ok(Axiom { m, n })
        } else {
            Err(Error::InvalidAxiom { m, n })
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The diamond-form formula over variable `p`.
    pub fn formula(&self) -> Formula {
        let p = Formula::prop("p");
        Formula::implies(Formula::diamonds(self.m, p.clone()), Formula::diamonds(self.n, p))
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.m, self.n)
    }
}

/// Converts the box form `[]^box_n p -> []^box_m p` into its diamond form
/// `<>^box_m p -> <>^box_n p`; both are interderivable over K.
pub fn box_to_diamond(box_n: usize, box_m: usize) -> Result<Axiom> {
    Axiom::new(box_m, box_n)
}

/// Duplicate-free, order-irrelevant collection of axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomSet(BTreeSet<Axiom>);

impl AxiomSet {
    pub fn new(axioms: impl IntoIterator<Item = Axiom>) -> Self {
        AxiomSet(axioms.into_iter().collect())
    }

    /// Parses the command-line form, e.g. `"2>3,2>4"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::AxiomSyntax(text.to_string());
        let mut set = BTreeSet::new();
        for item in text.split(',') {
            let item = item.trim();
            let (m, n) = item.split_once('>').ok_or_else(bad)?;
            let m: usize = m.trim().parse().map_err(|_| bad())?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            set.insert(Axiom::new(m, n)?);
        }
        Ok(AxiomSet(set))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Axiom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.0.contains(axiom)
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Axiom::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl<'a> IntoIterator for &'a AxiomSet {
    type Item = &'a Axiom;
    type IntoIter = std::collections::btree_set::Iter<'a, Axiom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Axiom> for AxiomSet {
    fn from_iter<I: IntoIterator<Item = Axiom>>(iter: I) -> Self {
        AxiomSet::new(iter)
    }
}
