//! The depth-stratified filtration.
//!
//! With `k = md(phi)` and `X = Prop(phi)`, worlds of depth at most `k` are
//! identified by `x == y iff d(x) = d(y) and x ~_{k-d(x)} y` (over `X`). On
//! classes,
//!
//! ```text
//! |x| R^f |y|  iff  d(x) = k,
//!              or   d(x) < k, d(y) <= d(x) + 1 and x R y' for some y' ~_{k-d(x)-1} y
//! ```
//!
//! where `y'` ranges over the whole model, and `V^f(p) = { |x| : x in V(p) }`
//! for `p` in `X`. The construction never trusts itself: each verifier
//! recomputes what it checks from the input model.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bisim::{k_bisim_table, refine_levels, KBisimTable};
use crate::error::{Error, Result};
use crate::kripke::{check_axiom_condition, depth_map, DepthMap, PointedModel, World};
use crate::logic::{model_check, AxiomSet, Formula};
use crate::repair::{verify_bounded_conditions, ConditionReport, ConditionScope};

#[derive(Clone, Debug)]
pub struct FiltrationResult {
    pub input: PointedModel,
    pub phi: Formula,
    pub k: usize,
    pub vars: BTreeSet<String>,
    pub depth: DepthMap,
    /// Classes of `==`, ordered by depth and then least member id. Class `i`
    /// is world `i` of the quotient; class 0 holds the root.
    pub classes: Vec<Vec<World>>,
    /// The class of each input world, `None` above depth `k`.
    pub class_map: Vec<Option<usize>>,
    pub quotient: PointedModel,
    /// The precondition check the build was gated on, if any.
    pub preconditions: Option<ConditionReport>,
}

/// Partition of the worlds of depth at most `md(phi)` into `==` classes,
/// ordered by depth and then least member id; members sorted by id.
pub fn stratified_equiv(model: &PointedModel, phi: &Formula) -> Result<Vec<Vec<World>>> {
    let depth = depth_map(model)?;
    let k = phi.modal_depth();
    Ok(partition(model, &depth, &phi.prop_vars(), k))
}

fn partition(model: &PointedModel, depth: &DepthMap, vars: &BTreeSet<String>, k: usize) -> Vec<Vec<World>> {
    let levels = refine_levels(model, vars, k);
    let mut keyed: std::collections::BTreeMap<(usize, usize), Vec<World>> = Default::default();
    for w in model.worlds().filter(|&w| depth[w] <= k) {
        let d = depth[w];
        keyed.entry((d, levels[k - d][w])).or_default().push(w);
    }
    let mut classes: Vec<Vec<World>> = keyed
        .into_values()
        .map(|mut ws| {
            ws.sort_by(|&a, &b| model.name(a).cmp(model.name(b)));
            ws
        })
        .collect();
    classes.sort_by(|a, b| (depth[a[0]], model.name(a[0])).cmp(&(depth[b[0]], model.name(b[0]))));
    classes
}

/// The `R^f` condition for one pair of representatives, with `sim(j, a, b)`
/// deciding `a ~_j b`.
fn rf_holds(
    model: &PointedModel,
    depth: &DepthMap,
    k: usize,
    x: World,
    y: World,
    sim: impl Fn(usize, World, World) -> bool,
) -> bool {
    let dx = depth[x];
    if dx == k {
        return true;
    }
    dx < k && depth[y] <= dx + 1 && model.successors(x).iter().any(|&y2| sim(k - dx - 1, y2, y))
}

/// Builds the filtration after checking the depth conditions on `model` at
/// bound `md(phi)`. Fails with the first violation as witness.
pub fn build_filtration(
    model: &PointedModel,
    phi: &Formula,
    axioms: &AxiomSet,
    scope: ConditionScope,
) -> Result<FiltrationResult> {
    let report = verify_bounded_conditions(model, axioms, phi.modal_depth(), scope)?;
    if !report.is_empty() {
        return Err(Error::Precondition(report.to_string()));
    }
    let mut result = build_filtration_unchecked(model, phi)?;
    result.preconditions = Some(report);
    Ok(result)
}

/// Builds the quotient without checking any precondition; the verifiers
/// then decide whether the result is sound.
pub fn build_filtration_unchecked(model: &PointedModel, phi: &Formula) -> Result<FiltrationResult> {
    let depth = depth_map(model)?;
    let k = phi.modal_depth();
    let vars = phi.prop_vars();
    let levels = refine_levels(model, &vars, k);
    let classes = partition(model, &depth, &vars, k);
    let mut class_map = vec![None; model.len()];
    for (c, members) in classes.iter().enumerate() {
        for &w in members {
            class_map[w] = Some(c);
        }
    }

    let class_name = |c: usize| format!("|{}|", model.name(classes[c][0]));
    let mut quotient = PointedModel::singleton(class_name(0));
    for c in 1..classes.len() {
        quotient.add_world(class_name(c))?;
    }
    let sim = |j: usize, a: World, b: World| levels[j][a] == levels[j][b];
    for (a, xs) in classes.iter().enumerate() {
        for (b, ys) in classes.iter().enumerate() {
            let related = xs
                .iter()
                .any(|&x| ys.iter().any(|&y| rf_holds(model, &depth, k, x, y, sim)));
            if related {
                quotient.add_edge(a, b);
            }
        }
    }
    for p in &vars {
        for w in model.valuation().get(p).into_iter().flatten() {
            if let Some(c) = class_map[*w] {
                quotient.set_true(p, c);
            }
        }
    }
    Ok(FiltrationResult {
        input: model.clone(),
        phi: phi.clone(),
        k,
        vars,
        depth,
        classes,
        class_map,
        quotient,
        preconditions: None,
    })
}

/// Two worlds of depth at most `k` whose class assignment disagrees with an
/// independent recomputation of `==`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMismatch {
    pub x: String,
    pub y: String,
    pub same_class: bool,
    pub equivalent: bool,
}

/// A pair of representatives whose `R^f` decision differs from the stored
/// quotient edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionMismatch {
    pub from_class: String,
    pub to_class: String,
    pub x: String,
    pub y: String,
    pub decided: bool,
    pub stored: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub classes: Vec<ClassMismatch>,
    pub decisions: Vec<DecisionMismatch>,
}

impl IndependenceReport {
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.decisions.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameViolation {
    pub axiom: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationMismatch {
    pub world: String,
    pub var: String,
    pub input: bool,
    pub quotient: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    /// Input edges `x R y` inside depth `k` whose classes are not related.
    pub edges: Vec<(String, String)>,
    pub valuation: Vec<ValuationMismatch>,
    /// Quotient variables outside `Prop(phi)`.
    pub stray_vars: Vec<String>,
}

impl HomomorphismReport {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.valuation.is_empty() && self.stray_vars.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruthMismatch {
    pub world: String,
    pub formula: String,
    pub input: bool,
    pub quotient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finiteness {
    pub classes: usize,
    pub bound: usize,
}

/// Outcome of every verifier on one filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub k: usize,
    pub classes: usize,
    pub independence: IndependenceReport,
    pub quotient_frame: Vec<FrameViolation>,
    pub homomorphism: HomomorphismReport,
    pub truth_lemma: Vec<TruthMismatch>,
    /// Quotient edges `|x| R^f |y|` with `d(y) > d(x) + 1`.
    pub depth_bound: Vec<(String, String)>,
    pub finiteness: Finiteness,
}

impl FiltrationReport {
    pub fn is_clean(&self) -> bool {
        self.independence.is_empty()
            && self.quotient_frame.is_empty()
            && self.homomorphism.is_empty()
            && self.truth_lemma.is_empty()
            && self.depth_bound.is_empty()
            && self.finiteness.classes <= self.finiteness.bound
    }

    /// Names of the verifiers that found something.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.independence.is_empty() {
            out.push("independence");
        }
        if !self.quotient_frame.is_empty() {
            out.push("quotient_frame");
        }
        if !self.homomorphism.is_empty() {
            out.push("homomorphism");
        }
        if !self.truth_lemma.is_empty() {
            out.push("truth_lemma");
        }
        if !self.depth_bound.is_empty() {
            out.push("depth_bound");
        }
        if self.finiteness.classes > self.finiteness.bound {
            out.push("finiteness");
        }
        out
    }
}

impl FiltrationResult {
    /// Root class of the quotient.
    pub fn root_class(&self) -> World {
        self.quotient.root()
    }

    fn class_depth(&self, c: usize) -> Option<usize> {
        self.classes.get(c).and_then(|ws| ws.first()).map(|&w| self.depth[w])
    }

    fn table(&self) -> KBisimTable {
        k_bisim_table(&self.input, &self.input, &self.vars, self.k)
    }

    /// Recomputes `==` from a fresh `~_j` table and checks the class map
    /// against it, then checks that every choice of representatives yields
    /// the stored `R^f` decision.
    pub fn verify_representative_independence(&self) -> IndependenceReport {
        let m = &self.input;
        let table = self.table();
        let within: Vec<World> = m.sorted_worlds().into_iter().filter(|&w| self.depth[w] <= self.k).collect();
        let mut report = IndependenceReport::default();
        for &x in &within {
            for &y in &within {
                let same_class = self.class_map[x].is_some() && self.class_map[x] == self.class_map[y];
                let equivalent =
                    self.depth[x] == self.depth[y] && table.related(self.k - self.depth[x], x, y);
                if same_class != equivalent {
                    report.classes.push(ClassMismatch {
                        x: m.name(x).to_string(),
                        y: m.name(y).to_string(),
                        same_class,
                        equivalent,
                    });
                }
            }
        }
        let sim = |j: usize, a: World, b: World| table.related(j, a, b);
        for &x in &within {
            for &y in &within {
                let (Some(a), Some(b)) = (self.class_map[x], self.class_map[y]) else {
                    continue;
                };
                if a >= self.quotient.len() || b >= self.quotient.len() {
                    continue;
                }
                let decided = rf_holds(m, &self.depth, self.k, x, y, sim);
                let stored = self.quotient.has_edge(a, b);
                if decided != stored {
                    report.decisions.push(DecisionMismatch {
                        from_class: self.quotient.name(a).to_string(),
                        to_class: self.quotient.name(b).to_string(),
                        x: m.name(x).to_string(),
                        y: m.name(y).to_string(),
                        decided,
                        stored,
                    });
                }
            }
        }
        report
    }

    /// Every axiom's frame condition on the quotient.
    pub fn verify_quotient_frame(&self, axioms: &AxiomSet) -> Vec<FrameViolation> {
        axioms
            .iter()
            .flat_map(|a| {
                check_axiom_condition(&self.quotient, a).into_iter().map(move |(x, y)| FrameViolation {
                    axiom: a.to_string(),
                    x: self.quotient.name(x).to_string(),
                    y: self.quotient.name(y).to_string(),
                })
            })
            .collect()
    }

    /// `x R y` implies `|x| R^f |y|` within depth `k`, and `x` and `|x|`
    /// agree on every variable of `phi`.
    pub fn verify_homomorphism(&self) -> HomomorphismReport {
        let m = &self.input;
        let q = &self.quotient;
        let mut report = HomomorphismReport::default();
        for x in m.sorted_worlds() {
            let Some(a) = self.class_map[x] else { continue };
            for y in m.sorted_successors(x) {
                let Some(b) = self.class_map[y] else { continue };
                if !q.has_edge(a, b) {
                    report.edges.push((m.name(x).to_string(), m.name(y).to_string()));
                }
            }
            for p in &self.vars {
                let (input, quotient) = (m.holds(p, x), q.holds(p, a));
                if input != quotient {
                    report.valuation.push(ValuationMismatch {
                        world: m.name(x).to_string(),
                        var: p.clone(),
                        input,
                        quotient,
                    });
                }
            }
        }
        report.stray_vars = q.support().into_iter().filter(|p| !self.vars.contains(p)).collect();
        report
    }

    /// `M, x |= psi iff M^f, |x| |= psi` for `d(x) <= k` and every
    /// subformula `psi` of `phi` with `md(psi) <= k - d(x)`.
    pub fn verify_truth_lemma(&self) -> Vec<TruthMismatch> {
        let m = &self.input;
        let subs = self.phi.subformulas();
        let mut out = Vec::new();
        for x in m.sorted_worlds() {
            let Some(a) = self.class_map[x] else { continue };
            let budget = self.k - self.depth[x];
            for psi in subs.iter().filter(|psi| psi.modal_depth() <= budget) {
                let input = model_check(m, x, psi).expect("world of the input");
                let quotient = model_check(&self.quotient, a, psi).expect("class of the quotient");
                if input != quotient {
                    out.push(TruthMismatch { world: m.name(x).to_string(), formula: psi.to_string(), input, quotient });
                }
            }
        }
        out
    }

    /// Quotient edges that climb more than one level.
    pub fn verify_depth_bound(&self) -> Vec<(String, String)> {
        self.quotient
            .edges()
            .filter(|&(a, b)| match (self.class_depth(a), self.class_depth(b)) {
                (Some(da), Some(db)) => db > da + 1,
                _ => true,
            })
            .map(|(a, b)| (self.quotient.name(a).to_string(), self.quotient.name(b).to_string()))
            .collect()
    }

    /// Class count against the sum over `d <= k` of the number of
    /// `~_{k-d}` classes of the whole input.
    pub fn finiteness(&self) -> Finiteness {
        let levels = refine_levels(&self.input, &self.vars, self.k);
        let bound = (0..=self.k)
            .map(|d| levels[self.k - d].iter().collect::<BTreeSet<_>>().len())
            .sum();
        Finiteness { classes: self.quotient.len(), bound }
    }

    pub fn verify(&self, axioms: &AxiomSet) -> FiltrationReport {
        FiltrationReport {
            k: self.k,
            classes: self.quotient.len(),
            independence: self.verify_representative_independence(),
            quotient_frame: self.verify_quotient_frame(axioms),
            homomorphism: self.verify_homomorphism(),
            truth_lemma: self.verify_truth_lemma(),
            depth_bound: self.verify_depth_bound(),
            finiteness: self.finiteness(),
        }
    }

    /// Negative control: toggles `p` at quotient world `class`.
    pub fn corrupt_valuation(&mut self, class: usize, p: &str) {
        let mut valuation = self.quotient.valuation().clone();
        let set = valuation.entry(p.to_string()).or_default();
        if !set.remove(&class) {
            set.insert(class);
        }
        self.quotient.set_valuation(valuation);
    }

    /// Negative control: toggles the quotient edge `a -> b`.
    pub fn corrupt_edge(&mut self, a: usize, b: usize) {
        let mut rebuilt = PointedModel::singleton(self.quotient.name(0));
        for c in 1..self.quotient.len() {
            rebuilt.add_world(self.quotient.name(c)).expect("distinct class names");
        }
        for (x, y) in self.quotient.edges() {
            if (x, y) != (a, b) {
                rebuilt.add_edge(x, y);
            }
        }
        if !self.quotient.has_edge(a, b) {
            rebuilt.add_edge(a, b);
        }
        self.quotient = rebuilt.with_valuation(self.quotient.valuation().clone());
    }

    /// Negative control: reassigns input world `w` to class `class`.
    pub fn corrupt_class_map(&mut self, w: World, class: usize) {
        if let Some(old) = self.class_map[w] {
            self.classes[old].retain(|&v| v != w);
        }
        self.classes[class].push(w);
        self.class_map[w] = Some(class);
    }
}
