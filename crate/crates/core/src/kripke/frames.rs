use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{PointedModel, Relation, Valuation, World};
use crate::error::{Error, Result};
use crate::logic::{Axiom, AxiomSet};
use crate::morphism::{pull_back_unchecked, PMorphism};

/// `R^k`, with `R^0` the identity.
pub fn k_step(model: &PointedModel, k: usize) -> Relation {
    let step = Relation::of_model(model);
    let mut rel = Relation::identity(model.len());
    for _ in 0..k {
        rel = rel.compose(&step);
    }
    rel
}

/// Shortest-path distance from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthMap(Vec<usize>);

impl DepthMap {
    pub fn get(&self, w: World) -> usize {
        self.0[w]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max_depth(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl std::ops::Index<World> for DepthMap {
    type Output = usize;

    fn index(&self, w: World) -> &usize {
        &self.0[w]
    }
}

fn bfs(model: &PointedModel, start: World) -> Vec<Option<usize>> {
    let mut dist = vec![None; model.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap_or(0);
        for &y in model.successors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

pub fn reachable_from(model: &PointedModel, start: World) -> Vec<World> {
    bfs(model, start)
        .iter()
        .enumerate()
        .filter_map(|(w, d)| d.map(|_| w))
        .collect()
}

pub fn depth_map(model: &PointedModel) -> Result<DepthMap> {
    let dist = bfs(model, model.root());
    let mut depths = Vec::with_capacity(dist.len());
    for (w, d) in dist.into_iter().enumerate() {
        match d {
            Some(d) => depths.push(d),
            None => return Err(Error::NotRooted(model.name(w).to_string())),
        }
    }
    Ok(DepthMap(depths))
}

pub fn is_rooted(model: &PointedModel) -> bool {
    bfs(model, model.root()).iter().all(Option::is_some)
}

/// The submodel generated by `start`, rooted there. World ids are kept.
pub fn generated_submodel(model: &PointedModel, start: World) -> Result<PointedModel> {
    if !model.contains(start) {
        return Err(Error::UnknownWorld(format!("#{start}")));
    }
    let keep = reachable_from(model, start);
    let mut sub = PointedModel::singleton(model.name(start));
    let mut map = vec![None; model.len()];
    map[start] = Some(sub.root());
    for &w in &keep {
        if w != start {
            map[w] = Some(sub.add_world(model.name(w))?);
        }
    }
    for &x in &keep {
        for &y in model.successors(x) {
            if let (Some(a), Some(b)) = (map[x], map[y]) {
                sub.add_edge(a, b);
            }
        }
    }
    let mut valuation = Valuation::new();
    for (p, ws) in model.valuation() {
        valuation.insert(p.clone(), ws.iter().filter_map(|&w| map[w]).collect());
    }
    Ok(sub.with_valuation(valuation))
}

/// Pairs `(x, y)` with `x R^m y` but not `x R^n y`, sorted by world id.
pub fn check_axiom_condition(model: &PointedModel, axiom: &Axiom) -> Vec<(World, World)> {
    let step = Relation::of_model(model);
    let mut rel = Relation::identity(model.len());
    for _ in 0..axiom.m() {
        rel = rel.compose(&step);
        if rel.is_empty() {
            return Vec::new();
        }
    }
    let m_step = rel.clone();
    for _ in axiom.m()..axiom.n() {
        rel = rel.compose(&step);
    }
    let mut violations: Vec<(World, World)> =
        m_step.pairs().filter(|&(x, y)| !rel.contains(x, y)).collect();
    violations.sort_by(|a, b| {
        (model.name(a.0), model.name(a.1)).cmp(&(model.name(b.0), model.name(b.1)))
    });
    violations
}

/// First violated axiom with its violations, if any.
pub fn violates_any(model: &PointedModel, axioms: &AxiomSet) -> Option<(Axiom, Vec<(World, World)>)> {
    axioms.iter().find_map(|a| {
        let v = check_axiom_condition(model, a);
        (!v.is_empty()).then_some((*a, v))
    })
}

/// Adds self-loops at the sources of violations until every axiom holds.
///
/// A loop at `x` pads any `m`-path out of `x` to an `n`-path, so each round
/// fixes all current violations at `x`; at most `|W|` loops are ever added.
pub fn saturate_to_phi_frame(model: &PointedModel, axioms: &AxiomSet) -> PointedModel {
    let mut out = model.clone();
    loop {
        let sources: BTreeSet<World> = axioms
            .iter()
            .flat_map(|a| check_axiom_condition(&out, a))
            .map(|(x, _)| x)
            .collect();
        if sources.is_empty() {
            return out;
        }
        for x in sources {
            let added = out.add_edge(x, x);
            debug_assert!(added, "violation at a world that already loops");
        }
    }
}

fn unique_name(model: &PointedModel, wanted: String) -> String {
    if model.world(&wanted).is_none() {
        return wanted;
    }
    let mut counter = 0;
    model.fresh_name(&format!("{wanted}'"), &mut counter)
}

/// Tree of all root paths of length at most `bound`. A node is named by its
/// path (`r.a.b`) and maps to the path's last world; the valuation is pulled
/// back along that map.
///
/// The map is a pointed homomorphism that satisfies the back clause at every
/// node of depth below `bound`. Leaves at depth `bound` lose their
/// successors, so it is a p-morphism only when every path from the root
/// dies out within `bound` steps.
pub fn unravel(model: &PointedModel, bound: usize) -> PMorphism {
    let r = model.root();
    let mut tree = PointedModel::singleton(model.name(r));
    let mut map = vec![r];
    let mut frontier = vec![(tree.root(), model.name(r).to_string())];
    for _ in 0..bound {
        let mut next = Vec::new();
        for (node, path) in frontier {
            for &v in model.successors(map[node]) {
                let child_path = format!("{path}.{}", model.name(v));
                let child = tree
                    .add_world(unique_name(&tree, child_path.clone()))
                    .expect("unique name");
                map.push(v);
                tree.add_edge(node, child);
                next.push((child, child_path));
            }
        }
        frontier = next;
    }
    let valuation = pull_back_unchecked(model.valuation(), &map);
    PMorphism::new(tree.with_valuation(valuation), model.clone(), map)
}

/// Unravels the first `bound` levels and then hands over to the original
/// model: tree nodes at depth `bound - 1` point at the original successor
/// worlds, which keep their ids and edges. Tree nodes are named `@path`.
///
/// Unlike [`unravel`], the map is always a pointed p-morphism, and the tree
/// part is strictly graded (each tree edge raises depth by one). With
/// `bound == 0` the result is the model itself under the identity.
pub fn unravel_closed(model: &PointedModel, bound: usize) -> PMorphism {
    if bound == 0 {
        let id = model.worlds().collect();
        return PMorphism::new(model.clone(), model.clone(), id);
    }
    let r = model.root();
    let mut out = PointedModel::singleton(format!("@{}", model.name(r)));
    let mut map = vec![r];
    let mut frontier = vec![(out.root(), model.name(r).to_string())];
    let mut exits: Vec<(World, World)> = Vec::new();
    for level in 1..=bound {
        let mut next = Vec::new();
        for (node, path) in frontier {
            for &v in model.successors(map[node]) {
                if level == bound {
                    exits.push((node, v));
                    continue;
                }
                let child_path = format!("{path}.{}", model.name(v));
                let name = unique_name(&out, format!("@{child_path}"));
                let child = out.add_world(name).expect("unique name");
                map.push(v);
                out.add_edge(node, child);
                next.push((child, child_path));
            }
        }
        frontier = next;
    }

    // Original worlds reachable from the exit targets.
    let mut keep = vec![false; model.len()];
    let mut queue: VecDeque<World> = exits.iter().map(|&(_, v)| v).collect();
    while let Some(v) = queue.pop_front() {
        if std::mem::replace(&mut keep[v], true) {
            continue;
        }
        queue.extend(model.successors(v).iter().copied());
    }
    let mut placed = vec![None; model.len()];
    let mut taken: HashSet<String> = out.names().iter().cloned().collect();
    for v in model.worlds().filter(|&v| keep[v]) {
        let name = model.name(v).to_string();
        assert!(taken.insert(name.clone()), "tree node id collides with {name}");
        placed[v] = Some(out.add_world(name).expect("fresh id"));
        map.push(v);
    }
    for (node, v) in exits {
        out.add_edge(node, placed[v].expect("kept"));
    }
    for v in model.worlds().filter(|&v| keep[v]) {
        for &c in model.successors(v) {
            out.add_edge(placed[v].expect("kept"), placed[c].expect("kept"));
        }
    }
    let valuation = pull_back_unchecked(model.valuation(), &map);
    PMorphism::new(out.with_valuation(valuation), model.clone(), map)
}
