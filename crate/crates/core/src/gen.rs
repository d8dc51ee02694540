//! Instance generators: random rooted frames and formulas for randomized
//! checks, and exhaustive enumeration of small rooted frames.
//!
//! Exhaustive enumeration produces every rooted frame on `n` worlds up to
//! isomorphism, in a normal form where worlds are numbered in the order a
//! breadth-first search from world 0 (visiting successors by increasing
//! index) discovers them. Some isomorphic duplicates remain.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::kripke::PointedModel;
use crate::logic::{Axiom, AxiomSet, Formula};

pub fn world_name(i: usize) -> String {
    format!("w{i}")
}

/// Successor bitmasks, one per world.
pub type FrameMasks = Vec<u32>;

/// All normal-form rooted frames on exactly `n` worlds (`1 <= n <= 8`).
pub fn rooted_frame_masks(n: usize) -> Vec<FrameMasks> {
    assert!((1..=8).contains(&n), "frame size {n} out of range");
    let mut out = Vec::new();
    let mut masks = Vec::with_capacity(n);
    extend_frames(n, &mut masks, 1, &mut out);
    out
}

fn extend_frames(n: usize, masks: &mut Vec<u32>, discovered: usize, out: &mut Vec<FrameMasks>) {
    let i = masks.len();
    if i == n {
        if discovered == n {
            out.push(masks.clone());
        }
        return;
    }
    if i >= discovered {
        // world i is not reachable from the root
        return;
    }
    for fresh in 0..=(n - discovered) {
        let fresh_bits = ((1u32 << fresh) - 1) << discovered;
        for old in 0..(1u32 << discovered) {
            masks.push(old | fresh_bits);
            extend_frames(n, masks, discovered + fresh, out);
            masks.pop();
        }
    }
}

pub fn frame_from_masks(masks: &[u32]) -> PointedModel {
    let names: Vec<String> = (0..masks.len()).map(world_name).collect();
    let mut edges = Vec::new();
    for (x, &mask) in masks.iter().enumerate() {
        for y in 0..masks.len() {
            if mask & (1 << y) != 0 {
                edges.push((names[x].clone(), names[y].clone()));
            }
        }
    }
    PointedModel::from_parts(&names, &names[0], &edges, &[]).expect("well-formed masks")
}

/// Every normal-form rooted frame with at most `max_size` worlds, paired with
/// every valuation of `vars`.
pub fn all_rooted_models<'a>(max_size: usize, vars: &'a [&'a str]) -> impl Iterator<Item = PointedModel> + 'a {
    (1..=max_size).flat_map(move |n| {
        rooted_frame_masks(n).into_iter().flat_map(move |masks| {
            let frame = frame_from_masks(&masks);
            let bits = n * vars.len();
            (0..(1u64 << bits)).map(move |code| apply_valuation_code(&frame, vars, code))
        })
    })
}

/// Bit `v * n + w` of `code` says whether `vars[v]` holds at world `w`.
pub fn apply_valuation_code(frame: &PointedModel, vars: &[&str], code: u64) -> PointedModel {
    let n = frame.len();
    let mut model = frame.frame();
    for (v, p) in vars.iter().enumerate() {
        for w in 0..n {
            if code & (1 << (v * n + w)) != 0 {
                model.set_true(p, w);
            }
        }
    }
    model
}

/// A rooted frame on 1..=max_worlds worlds: a random spanning tree from the
/// root plus independent extra edges (loops included) with probability
/// `extra_edge_prob`.
pub fn random_rooted_frame<R: Rng>(rng: &mut R, max_worlds: usize, extra_edge_prob: f64) -> PointedModel {
    let n = rng.gen_range(1..=max_worlds);
    let mut masks = vec![0u32; n];
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        masks[parent] |= 1 << i;
    }
    for mask in masks.iter_mut() {
        for y in 0..n {
            if rng.gen_bool(extra_edge_prob) {
                *mask |= 1 << y;
            }
        }
    }
    frame_from_masks(&masks)
}

pub fn random_valuation<R: Rng>(rng: &mut R, frame: &PointedModel, vars: &[&str]) -> PointedModel {
    let bits = frame.len() * vars.len();
    let code = if bits == 0 { 0 } else { rng.gen_range(0..(1u64 << bits)) };
    apply_valuation_code(frame, vars, code)
}

pub fn density_axioms() -> Vec<Axiom> {
    [(2, 3), (2, 4), (3, 4)]
        .into_iter()
        .map(|(m, n)| Axiom::new(m, n).expect("valid"))
        .collect()
}

/// Nonempty subset of `{2>3, 2>4, 3>4}`.
pub fn random_axiom_set<R: Rng>(rng: &mut R) -> AxiomSet {
    let all = density_axioms();
    loop {
        let set: AxiomSet = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !set.is_empty() {
            return set;
        }
    }
}

/// Random formula with modal depth at most `max_md`.
pub fn random_formula<R: Rng>(rng: &mut R, max_md: usize, vars: &[&str]) -> Formula {
    random_formula_sized(rng, max_md, vars, 4)
}

fn random_formula_sized<R: Rng>(rng: &mut R, md: usize, vars: &[&str], size: usize) -> Formula {
    let atom = |rng: &mut R| {
        if vars.is_empty() || rng.gen_bool(0.1) {
            Formula::Falsum
        } else {
            Formula::prop(*vars.choose(rng).expect("nonempty"))
        }
    };
    if size == 0 {
        return atom(rng);
    }
    let choices = if md > 0 { 8 } else { 5 };
    match rng.gen_range(0..choices) {
        0 => atom(rng),
        1 => Formula::not(random_formula_sized(rng, md, vars, size - 1)),
        2 => Formula::or(
            random_formula_sized(rng, md, vars, size - 1),
            random_formula_sized(rng, md, vars, size - 1),
        ),
        3 => Formula::and(
            random_formula_sized(rng, md, vars, size - 1),
            random_formula_sized(rng, md, vars, size - 1),
        ),
        4 => Formula::implies(
            random_formula_sized(rng, md, vars, size - 1),
            random_formula_sized(rng, md, vars, size - 1),
        ),
        5 | 6 => Formula::diamond(random_formula_sized(rng, md - 1, vars, size - 1)),
        _ => Formula::boxed(random_formula_sized(rng, md - 1, vars, size - 1)),
    }
}

pub fn random_formulas<R: Rng>(rng: &mut R, count: usize, max_md: usize, vars: &[&str]) -> Vec<Formula> {
    (0..count).map(|_| random_formula(rng, max_md, vars)).collect()
}

/// A tree in which every edge goes from depth `d` to depth `d + 1`; the root
/// is `t0`. Each node above `height` gets up to `max_branch` children.
pub fn graded_tree<R: Rng>(rng: &mut R, height: usize, max_branch: usize) -> PointedModel {
    let mut tree = PointedModel::singleton("t0");
    let mut frontier = vec![tree.root()];
    let mut counter = 1;
    for _ in 0..height {
        let mut next = Vec::new();
        for node in frontier {
            for _ in 0..rng.gen_range(0..=max_branch) {
                let child = tree.add_world(format!("t{counter}")).expect("fresh");
                counter += 1;
                tree.add_edge(node, child);
                next.push(child);
            }
        }
        frontier = next;
    }
    tree
}

#[cfg(test)]
pub fn arb_formula(depth: u32, vars: &[&str]) -> impl proptest::strategy::Strategy<Value = Formula> {
    use proptest::prelude::*;
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let leaf = prop_oneof![
        Just(Formula::Falsum),
        proptest::sample::select(names).prop_map(Formula::Prop),
    ];
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::diamond),
            inner.clone().prop_map(Formula::boxed),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}
