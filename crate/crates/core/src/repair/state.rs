use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::defect::{self, Defect, DefectInfo};
use crate::error::{Error, Result};
use crate::kripke::{check_axiom_condition, depth_map, violates_any, DepthMap, PointedModel, World};
use crate::logic::{Axiom, AxiomSet};
use crate::morphism::{verify_pmorphism, PMorphism};

/// Prefix of every world id created by a repair.
pub const FRESH_PREFIX: &str = "u#";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub defect: DefectInfo,
    pub added: Vec<String>,
}

/// A model under construction together with its p-morphism into the base
/// frame.
///
/// Every repair only adds worlds and edges, keeps the root, keeps the depth
/// of every existing world, and re-certifies the map before returning.
#[derive(Clone, Debug)]
pub struct RepairState {
    current: PointedModel,
    base: PointedModel,
    map: Vec<World>,
    fresh_counter: usize,
    steps: usize,
    queue: VecDeque<Defect>,
    seen: HashSet<Defect>,
    resolved: Vec<Defect>,
    log: Vec<StepRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepairStatus {
    Saturated,
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub kind: String,
    pub depth: usize,
    pub count: usize,
}

/// Outstanding in-budget defects, grouped by kind and source depth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<12} {:>5} {:>7}\n", "defect", "depth", "count");
        for r in &self.rows {
            out.push_str(&format!("{:<12} {:>5} {:>7}\n", r.kind, r.depth, r.count));
        }
        out.push_str(&format!("{:<12} {:>5} {:>7}\n", "total", "", self.total()));
        out
    }
}

#[derive(Clone, Debug)]
pub struct RepairRun {
    pub state: RepairState,
    pub status: RepairStatus,
    pub census: Census,
}

impl RepairState {
    /// Starts from the base itself under the identity map.
    pub fn new(base: &PointedModel) -> Result<Self> {
        depth_map(base)?;
        Self::from_pmorphism(PMorphism::identity(base))
    }

    /// Starts from any certified p-morphism into the base. The source's
    /// valuation is replaced by the pullback of the base valuation.
    pub fn from_pmorphism(f: PMorphism) -> Result<Self> {
        let report = f.verify();
        if !report.is_empty() {
            return Err(Error::NotAPMorphism(report.to_string()));
        }
        depth_map(&f.source)?;
        let mut current = f.source;
        let valuation = crate::morphism::pull_back_unchecked(f.target.valuation(), &f.map);
        current.set_valuation(valuation);
        Ok(RepairState {
            current,
            base: f.target,
            map: f.map,
            fresh_counter: 0,
            steps: 0,
            queue: VecDeque::new(),
            seen: HashSet::new(),
            resolved: Vec::new(),
            log: Vec::new(),
        })
    }

    pub fn current(&self) -> &PointedModel {
        &self.current
    }

    pub fn base(&self) -> &PointedModel {
        &self.base
    }

    pub fn map(&self) -> &[World] {
        &self.map
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn log(&self) -> &[StepRecord] {
        &self.log
    }

    pub fn pmorphism(&self) -> PMorphism {
        PMorphism::new(self.current.clone(), self.base.clone(), self.map.clone())
    }

    pub fn depths(&self) -> DepthMap {
        depth_map(&self.current).expect("repairs keep the model rooted")
    }

    pub fn is_defect(&self, defect: &Defect) -> bool {
        defect::is_defect(&self.current, &self.depths(), &self.map, defect)
    }

    /// Every type-2 defect with `d(x) < budget` and every type-3 defect with
    /// `d(x) <= budget - m`, in id order.
    pub fn find_defects(&self, axioms: &AxiomSet, budget: usize) -> Vec<Defect> {
        defect::defects_within(&self.current, &self.depths(), &self.map, axioms, budget)
    }

    fn fresh_world(&mut self, image: World) -> World {
        let name = self.current.fresh_name(FRESH_PREFIX, &mut self.fresh_counter);
        let u = self.current.add_world(name).expect("fresh ids never collide");
        self.map.push(image);
        for (p, ws) in self.base.valuation() {
            if ws.contains(&image) {
                self.current.set_true(p, u);
            }
        }
        u
    }

    fn check_postconditions(&self, before: &DepthMap, expected: &[(World, usize)]) -> Result<()> {
        let report = verify_pmorphism(&self.current, &self.base, &self.map);
        if !report.is_empty() {
            return Err(Error::Postcondition(format!("map is no longer a p-morphism: {report}")));
        }
        let after = depth_map(&self.current)?;
        for w in 0..before.as_slice().len() {
            if after[w] != before[w] {
                return Err(Error::Postcondition(format!(
                    "depth of {:?} moved from {} to {}",
                    self.current.name(w),
                    before[w],
                    after[w]
                )));
            }
        }
        for &(u, d) in expected {
            if after[u] != d {
                return Err(Error::Postcondition(format!(
                    "new world {:?} sits at depth {}, expected {d}",
                    self.current.name(u),
                    after[u]
                )));
            }
        }
        Ok(())
    }

    fn record(&mut self, defect: Defect, info: DefectInfo, added: &[World]) {
        self.steps += 1;
        self.resolved.push(defect);
        self.log.push(StepRecord {
            step: self.steps,
            defect: info,
            added: added.iter().map(|&u| self.current.name(u).to_string()).collect(),
        });
    }

    /// Adds a fresh `u` with `x R u` and `u R c` for every `c` with `y R c`,
    /// mapped to the image of `y`.
    pub fn repair_type2(&mut self, x: World, y: World) -> Result<World> {
        let defect = Defect::Type2 { x, y };
        let before = self.depths();
        if !self.current.contains(x) || !self.current.contains(y) || !self.is_defect(&defect) {
            return Err(Error::NotADefect(format!("{:?}", self.describe_pair(x, y))));
        }
        let info = defect.describe(&self.current);
        let targets: Vec<World> = self.current.successors(y).iter().copied().collect();
        let u = self.fresh_world(self.map[y]);
        self.current.add_edge(x, u);
        for c in targets {
            self.current.add_edge(u, c);
        }
        self.check_postconditions(&before, &[(u, before[x] + 1)])?;
        self.record(defect, info, &[u]);
        Ok(u)
    }

    fn describe_pair(&self, a: World, b: World) -> (String, String) {
        let name = |w: World| {
            if self.current.contains(w) {
                self.current.name(w).to_string()
            } else {
                format!("#{w}")
            }
        };
        (name(a), name(b))
    }

    /// Adds fresh `u1 .. u(n-1)` forming a depth-graded detour from `x` to
    /// `z`, each `uj` copying the successors of a world `vj` that the back
    /// clause provides over a base chain from `f(x)` to `f(z)`.
    pub fn repair_type3(&mut self, x: World, z: World, axiom: &Axiom) -> Result<Vec<World>> {
        let defect = Defect::Type3 { x, z, axiom: *axiom };
        if !self.current.contains(x) || !self.current.contains(z) || !self.is_defect(&defect) {
            return Err(Error::NotADefect(format!("{:?} for {axiom}", self.describe_pair(x, z))));
        }
        if let Some(&(bx, by)) = check_axiom_condition(&self.base, axiom).first() {
            return Err(Error::BaseNotPhiFrame {
                axiom: *axiom,
                x: self.base.name(bx).to_string(),
                y: self.base.name(by).to_string(),
            });
        }
        let before = self.depths();
        let info = defect.describe(&self.current);

        // An m-chain x -> .. -> z exists because (x, z) is a defect; pushed
        // forward it puts f(z) m steps from f(x), so the base frame has an
        // n-chain between them.
        let chain = least_chain(&self.current, x, z, axiom.m()).ok_or_else(|| {
            Error::Postcondition(format!("no {}-step chain behind a type-3 defect", axiom.m()))
        })?;
        debug_assert_eq!(chain.len(), axiom.m() + 1);
        let (fx, fz) = (self.map[x], self.map[z]);
        let base_chain = least_chain(&self.base, fx, fz, axiom.n()).ok_or_else(|| Error::BaseNotPhiFrame {
            axiom: *axiom,
            x: self.base.name(fx).to_string(),
            y: self.base.name(fz).to_string(),
        })?;
        let images = &base_chain[1..axiom.n()];

        // Pull the base chain back through the back clause.
        let mut witnesses = Vec::with_capacity(images.len());
        let mut prev = x;
        for &w in images {
            let next = self
                .current
                .sorted_successors(prev)
                .into_iter()
                .find(|&s| self.map[s] == w)
                .ok_or_else(|| Error::MissingBackWitness {
                    from: self.current.name(prev).to_string(),
                    image: self.base.name(w).to_string(),
                })?;
            witnesses.push(next);
            prev = next;
        }

        let copied: Vec<Vec<World>> = witnesses
            .iter()
            .map(|&v| self.current.successors(v).iter().copied().collect())
            .collect();
        let fresh: Vec<World> = images.iter().map(|&w| self.fresh_world(w)).collect();
        self.current.add_edge(x, fresh[0]);
        for pair in fresh.windows(2) {
            self.current.add_edge(pair[0], pair[1]);
        }
        self.current.add_edge(*fresh.last().expect("n > 1"), z);
        for (&u, targets) in fresh.iter().zip(&copied) {
            for &c in targets {
                self.current.add_edge(u, c);
            }
        }
        let expected: Vec<(World, usize)> =
            fresh.iter().enumerate().map(|(j, &u)| (u, before[x] + j + 1)).collect();
        self.check_postconditions(&before, &expected)?;
        self.record(defect, info, &fresh);
        Ok(fresh)
    }

    pub fn repair(&mut self, defect: &Defect) -> Result<Vec<World>> {
        match *defect {
            Defect::Type2 { x, y } => self.repair_type2(x, y).map(|u| vec![u]),
            Defect::Type3 { x, z, ref axiom } => self.repair_type3(x, z, axiom),
        }
    }

    fn enqueue_new(&mut self, found: Vec<Defect>) -> Result<()> {
        for d in found {
            if self.seen.insert(d) {
                self.queue.push_back(d);
            } else if !self.queue.contains(&d) {
                return Err(Error::Postcondition(format!(
                    "defect {:?} came back after being handled",
                    d.describe(&self.current)
                )));
            }
        }
        Ok(())
    }

    fn check_resolved(&self) -> Result<()> {
        let depth = self.depths();
        for d in &self.resolved {
            if defect::is_defect(&self.current, &depth, &self.map, d) {
                return Err(Error::Postcondition(format!(
                    "resolved defect {:?} is a defect again",
                    d.describe(&self.current)
                )));
            }
        }
        Ok(())
    }

    /// Outstanding in-budget defects grouped by kind and source depth.
    pub fn census(&self, axioms: &AxiomSet, budget: usize) -> Census {
        let depth = self.depths();
        let mut counts: BTreeMap<(String, usize), usize> = BTreeMap::new();
        for d in self.find_defects(axioms, budget) {
            *counts.entry((d.kind(), depth[d.source()])).or_default() += 1;
        }
        Census {
            rows: counts
                .into_iter()
                .map(|((kind, depth), count)| CensusRow { kind, depth, count })
                .collect(),
        }
    }

    /// Repairs the oldest outstanding in-budget defect until none remain or
    /// `max_steps` repairs have been applied in total.
    pub fn run(mut self, axioms: &AxiomSet, budget: usize, max_steps: usize) -> Result<RepairRun> {
        for axiom in axioms {
            if let Some(&(x, y)) = check_axiom_condition(&self.base, axiom).first() {
                return Err(Error::BaseNotPhiFrame {
                    axiom: *axiom,
                    x: self.base.name(x).to_string(),
                    y: self.base.name(y).to_string(),
                });
            }
        }
        let found = self.find_defects(axioms, budget);
        self.enqueue_new(found)?;
        loop {
            let Some(next) = self.queue.pop_front() else {
                let found = self.find_defects(axioms, budget);
                if found.is_empty() {
                    break;
                }
                self.enqueue_new(found)?;
                continue;
            };
            if !self.is_defect(&next) {
                continue;
            }
            if self.steps >= max_steps {
                self.queue.push_front(next);
                break;
            }
            self.repair(&next)?;
            self.check_resolved()?;
            let found = self.find_defects(axioms, budget);
            self.enqueue_new(found)?;
        }
        let census = self.census(axioms, budget);
        let status = if census.total() == 0 { RepairStatus::Saturated } else { RepairStatus::Truncated };
        Ok(RepairRun { state: self, status, census })
    }

    pub fn worlds_added(&self) -> BTreeSet<World> {
        self.log
            .iter()
            .flat_map(|r| r.added.iter())
            .filter_map(|n| self.current.world(n))
            .collect()
    }
}

/// Lexicographically least (by world id) chain of exactly `len` steps from
/// `from` to `to`, endpoints included.
fn least_chain(model: &PointedModel, from: World, to: World, len: usize) -> Option<Vec<World>> {
    // can_reach[j] = worlds with a j-step path to `to`
    let preds = model.predecessors();
    let mut can_reach = vec![BTreeSet::from([to])];
    for j in 1..=len {
        let layer: BTreeSet<World> = can_reach[j - 1].iter().flat_map(|&w| preds[w].iter().copied()).collect();
        can_reach.push(layer);
    }
    if !can_reach[len].contains(&from) {
        return None;
    }
    let mut chain = vec![from];
    let mut at = from;
    for remaining in (0..len).rev() {
        at = model
            .sorted_successors(at)
            .into_iter()
            .find(|s| can_reach[remaining].contains(s))?;
        chain.push(at);
    }
    Some(chain)
}

/// Builds the base-identity state and runs the scheduler.
pub fn run_repair(base: &PointedModel, axioms: &AxiomSet, budget: usize, max_steps: usize) -> Result<RepairRun> {
    depth_map(base)?;
    if let Some((axiom, v)) = violates_any(base, axioms) {
        return Err(Error::BaseNotPhiFrame {
            axiom,
            x: base.name(v[0].0).to_string(),
            y: base.name(v[0].1).to_string(),
        });
    }
    RepairState::new(base)?.run(axioms, budget, max_steps)
}
