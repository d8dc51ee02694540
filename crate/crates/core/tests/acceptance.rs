//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.
//!
//! Each suite also returns a textual report of what it checked (no timing
//! data). The determinism criterion reruns the other suites under the same
//! seed and compares those reports byte for byte. The seed comes from
//! `DENSIFY_SEED` (default 1).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use densify::bisim::{classes_mod_k_bisim, full_bisim, k_bisim_table};
use densify::filtration::{build_filtration, FiltrationResult};
use densify::gen;
use densify::kripke::{
    check_axiom_condition, depth_map, saturate_to_phi_frame, unravel_closed, PointedModel, World,
};
use densify::logic::{model_check, parse_formula, Axiom, AxiomSet, Formula};
use densify::morphism::{pullback_valuation, verify_pmorphism};
use densify::oracle::sat_oracle;
use densify::pipeline::{run_pipeline, Outcome, PipelineOptions};
use densify::repair::{run_repair, ConditionScope, Defect, RepairState, RepairStatus};

struct Verdict {
    passed: bool,
    summary: String,
    /// Deterministic record of the run, compared across reruns.
    report: String,
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn(u64) -> Verdict,
}

fn seed() -> u64 {
    std::env::var("DENSIFY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(1)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn names(m: &PointedModel, ws: impl IntoIterator<Item = World>) -> Vec<String> {
    ws.into_iter().map(|w| m.name(w).to_string()).collect()
}

fn edge_set(m: &PointedModel) -> BTreeSet<(World, World)> {
    m.edges().collect()
}

/// A saturated base with a random valuation over `p`, plus its axioms.
fn random_base(rng: &mut ChaCha8Rng, max_worlds: usize) -> (PointedModel, AxiomSet) {
    let axioms = gen::random_axiom_set(rng);
    let prob = rng.gen_range(0.1..0.5);
    let frame = gen::random_rooted_frame(rng, max_worlds, prob);
    let base = saturate_to_phi_frame(&frame, &axioms);
    (gen::random_valuation(rng, &base, &["p"]), axioms)
}

/// A closed unraveling of depth at most 3 of a random base, as repair state.
fn random_source(rng: &mut ChaCha8Rng) -> (RepairState, AxiomSet) {
    let (base, axioms) = random_base(rng, 5);
    let bound = rng.gen_range(0..=3);
    let state = RepairState::from_pmorphism(unravel_closed(&base, bound)).expect("closed unravelings verify");
    (state, axioms)
}

fn successor_repair(seed: u64) -> Verdict {
    let mut rng = rng_for(seed, 1);
    let mut report = String::new();
    let (mut done, mut failures, mut attempts) = (0, Vec::new(), 0);
    while done < 500 && attempts < 20_000 {
        attempts += 1;
        let (mut state, axioms) = random_source(&mut rng);
        let found: Vec<Defect> = state
            .find_defects(&axioms, 64)
            .into_iter()
            .filter(|d| matches!(d, Defect::Type2 { .. }))
            .collect();
        let Some(&Defect::Type2 { x, y }) = found.choose(&mut rng) else { continue };
        let before = state.current().clone();
        let d_before = depth_map(&before).unwrap();
        let old_succ_y: BTreeSet<World> = before.successors(y).clone();
        let image_y = state.map()[y];
        let u = match state.repair_type2(x, y) {
            Ok(u) => u,
            Err(e) => {
                failures.push(format!("instance {done}: {e}"));
                done += 1;
                continue;
            }
        };
        let after = state.current();
        let d_after = depth_map(after).unwrap();
        let mut problems = Vec::new();
        if !verify_pmorphism(after, state.base(), state.map()).is_empty() {
            problems.push("not a p-morphism");
        }
        if after.len() != before.len() + 1 || u != before.len() {
            problems.push("not exactly one new world");
        }
        if d_after[u] != d_after[x] + 1 {
            problems.push("new world at the wrong depth");
        }
        if before.worlds().any(|w| d_after[w] != d_before[w]) {
            problems.push("old depth moved");
        }
        let mut expected = edge_set(&before);
        expected.insert((x, u));
        expected.extend(old_succ_y.iter().map(|&c| (u, c)));
        if edge_set(after) != expected {
            problems.push("edges differ from the construction");
        }
        if state.map()[u] != image_y {
            problems.push("wrong image");
        }
        if !problems.is_empty() {
            failures.push(format!("instance {done}: {}", problems.join(", ")));
        }
        writeln!(
            report,
            "{done}: ({}, {}) +{} worlds={} edges={}",
            before.name(x),
            before.name(y),
            after.name(u),
            after.len(),
            after.edge_count()
        )
        .unwrap();
        done += 1;
    }
    writeln!(report, "failures: {failures:?}").unwrap();
    Verdict {
        passed: done >= 500 && failures.is_empty(),
        summary: format!("{} of {done} instances clean", done - failures.len()),
        report,
    }
}

fn chain_repair(seed: u64) -> Verdict {
    let mut rng = rng_for(seed, 2);
    let mut report = String::new();
    let (mut done, mut failures, mut attempts) = (0, Vec::new(), 0);
    let mut per_axiom = std::collections::BTreeMap::<String, usize>::new();
    while done < 500 && attempts < 20_000 {
        attempts += 1;
        let (mut state, axioms) = random_source(&mut rng);
        let found: Vec<Defect> = state
            .find_defects(&axioms, 64)
            .into_iter()
            .filter(|d| matches!(d, Defect::Type3 { .. }))
            .collect();
        let Some(&Defect::Type3 { x, z, axiom }) = found.choose(&mut rng) else { continue };
        let before = state.current().clone();
        let d_before = depth_map(&before).unwrap();
        let fresh = match state.repair_type3(x, z, &axiom) {
            Ok(fresh) => fresh,
            Err(e) => {
                failures.push(format!("instance {done}: {e}"));
                done += 1;
                continue;
            }
        };
        *per_axiom.entry(axiom.to_string()).or_default() += 1;
        let after = state.current();
        let d_after = depth_map(after).unwrap();
        let map = state.map();
        let base = state.base();
        let mut problems = Vec::new();
        if !verify_pmorphism(after, base, map).is_empty() {
            problems.push("not a p-morphism");
        }
        if fresh.len() != axiom.n() - 1 || after.len() != before.len() + axiom.n() - 1 {
            problems.push("wrong number of new worlds");
        }
        if fresh.iter().any(|&u| u < before.len()) {
            problems.push("reused an old world");
        }
        for (j, &u) in fresh.iter().enumerate() {
            if d_after[u] != d_after[x] + j + 1 {
                problems.push("new world at the wrong depth");
            }
        }
        if before.worlds().any(|w| d_after[w] != d_before[w]) {
            problems.push("old depth moved");
        }
        let mut chain = vec![x];
        chain.extend(&fresh);
        chain.push(z);
        if chain.windows(2).any(|p| !after.has_edge(p[0], p[1])) {
            problems.push("chain edges missing");
        }
        if chain.windows(2).any(|p| !base.has_edge(map[p[0]], map[p[1]])) {
            problems.push("chain image is not a base path");
        }
        if state.is_defect(&Defect::Type3 { x, z, axiom }) {
            problems.push("defect not resolved");
        }
        if !problems.is_empty() {
            failures.push(format!("instance {done}: {}", problems.join(", ")));
        }
        writeln!(
            report,
            "{done}: ({}, {}, {axiom}) +{:?} worlds={} edges={}",
            before.name(x),
            before.name(z),
            names(after, fresh.iter().copied()),
            after.len(),
            after.edge_count()
        )
        .unwrap();
        done += 1;
    }
    writeln!(report, "per axiom: {per_axiom:?}\nfailures: {failures:?}").unwrap();
    Verdict {
        passed: done >= 500 && failures.is_empty() && per_axiom.len() == 3,
        summary: format!("{} of {done} instances clean, per axiom {per_axiom:?}", done - failures.len()),
        report,
    }
}

fn pullback(seed: u64) -> Verdict {
    let mut rng = rng_for(seed, 3);
    let mut report = String::new();
    let mut failures = Vec::new();
    let mut formulas_checked = 0;
    for i in 0..200 {
        let vars: &[&str] = if rng.gen_bool(0.5) { &["p"] } else { &["p", "q"] };
        let f = if i % 2 == 0 {
            let prob = rng.gen_range(0.1..0.5);
            let frame = gen::random_rooted_frame(&mut rng, 4, prob);
            let base = gen::random_valuation(&mut rng, &frame, vars);
            unravel_closed(&base, rng.gen_range(0..=3))
        } else {
            let (base, axioms) = random_base(&mut rng, 4);
            let base = gen::random_valuation(&mut rng, &base, vars);
            let steps = rng.gen_range(1..=6);
            let run = run_repair(&base, &axioms, 3, steps).expect("saturated base");
            run.state.pmorphism()
        };
        if !f.verify().is_empty() {
            failures.push(format!("instance {i}: map does not verify"));
            continue;
        }
        let valuation = pullback_valuation(&f, f.target.valuation()).expect("verified");
        let source = f.source.clone().with_valuation(valuation);
        let target = &f.target;
        let cross = full_bisim(&source, target);
        let inner = full_bisim(&source, &source);
        let mut problems = BTreeSet::new();
        for y in source.worlds() {
            if !cross.contains(y, f.map[y]) {
                problems.insert("y not bisimilar to f(y)");
            }
            for y2 in source.worlds().filter(|&y2| f.map[y2] == f.map[y]) {
                if !inner.contains(y2, y) {
                    problems.insert("same image but not bisimilar");
                }
            }
        }
        for phi in gen::random_formulas(&mut rng, 50, 3, vars) {
            formulas_checked += 1;
            for y in source.worlds() {
                if model_check(&source, y, &phi).unwrap() != model_check(target, f.map[y], &phi).unwrap() {
                    problems.insert("formula disagreement");
                }
            }
        }
        if !problems.is_empty() {
            failures.push(format!("instance {i}: {problems:?}"));
        }
        writeln!(report, "{i}: source={} target={} bisim={}", source.len(), target.len(), cross.len()).unwrap();
    }
    writeln!(report, "failures: {failures:?}").unwrap();
    Verdict {
        passed: failures.is_empty() && formulas_checked >= 200 * 50,
        summary: format!("200 maps, {formulas_checked} formulas, {} failures", failures.len()),
        report,
    }
}

fn k_bisim_exhaustive(_seed: u64) -> Verdict {
    let vars_all = ["p", "q"];
    let var_sets: Vec<BTreeSet<String>> = vec![
        BTreeSet::new(),
        BTreeSet::from(["p".to_string()]),
        BTreeSet::from(["p".to_string(), "q".to_string()]),
    ];
    let (mut models, mut checks) = (0usize, 0usize);
    let mut failures = Vec::new();
    let mut class_histogram = std::collections::BTreeMap::<usize, usize>::new();
    for m in gen::all_rooted_models(3, &vars_all) {
        models += 1;
        let full = full_bisim(&m, &m);
        for vars in &var_sets {
            let table = k_bisim_table(&m, &m, vars, 4);
            for k in 0..=3 {
                checks += 1;
                let level = table.level(k);
                if !table.level(k + 1).is_subset(level) {
                    failures.push(format!("model {models}: ~{} not within ~{k}", k + 1));
                }
                if !full.is_subset(level) {
                    failures.push(format!("model {models}: bisimilarity not within ~{k}"));
                }
                let ws: Vec<World> = m.worlds().collect();
                let reflexive = ws.iter().all(|&x| level.contains(x, x));
                let symmetric = level.pairs().all(|(x, y)| level.contains(y, x));
                let transitive = level
                    .pairs()
                    .all(|(x, y)| ws.iter().all(|&z| !level.contains(y, z) || level.contains(x, z)));
                if !(reflexive && symmetric && transitive) {
                    failures.push(format!("model {models}: ~{k} is not an equivalence"));
                }
                // classes read off the table, against the refinement count
                let mut seen = vec![false; m.len()];
                let mut from_table = 0;
                for x in m.worlds() {
                    if !seen[x] {
                        from_table += 1;
                        for y in m.worlds().filter(|&y| level.contains(x, y)) {
                            seen[y] = true;
                        }
                    }
                }
                let reported = classes_mod_k_bisim(&m, vars, k).len();
                if from_table != reported || reported > m.len() {
                    failures.push(format!("model {models}: {from_table} classes vs reported {reported}"));
                }
                *class_histogram.entry(reported).or_default() += 1;
            }
        }
    }
    let report = format!("models={models} checks={checks} classes={class_histogram:?}\nfailures: {failures:?}\n");
    Verdict {
        passed: failures.is_empty(),
        summary: format!("{models} models, {checks} (model, X, k) checks, {} failures", failures.len()),
        report,
    }
}

struct Handcrafted {
    name: &'static str,
    worlds: &'static [&'static str],
    edges: &'static [(&'static str, &'static str)],
    valuation: &'static [(&'static str, &'static [&'static str])],
    phi: &'static str,
    axioms: &'static str,
    passes: bool,
}

const HANDCRAFTED: &[Handcrafted] = &[
    Handcrafted {
        name: "chain, propositional",
        worlds: &["r", "a", "b"],
        edges: &[("r", "a"), ("a", "b")],
        valuation: &[("p", &["b"])],
        phi: "p | ~p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "reflexive point, propositional",
        worlds: &["w"],
        edges: &[("w", "w")],
        valuation: &[("p", &["w"])],
        phi: "p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "fan, diamond",
        worlds: &["r", "a", "b", "c"],
        edges: &[("r", "a"), ("r", "b"), ("r", "c")],
        valuation: &[("p", &["a", "b"])],
        phi: "<>p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "fan, box",
        worlds: &["r", "a", "b", "c"],
        edges: &[("r", "a"), ("r", "b"), ("r", "c")],
        valuation: &[("p", &["a", "b"]), ("q", &["c"])],
        phi: "[]p | <>q",
        axioms: "2>3,2>4",
        passes: true,
    },
    Handcrafted {
        name: "lasso of length 2",
        worlds: &["r", "u", "v"],
        edges: &[("r", "u"), ("u", "v"), ("v", "v")],
        valuation: &[("p", &["v"])],
        phi: "<><>p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "lasso of length 1",
        worlds: &["r", "u"],
        edges: &[("r", "u"), ("u", "u")],
        valuation: &[("p", &["u"])],
        phi: "<>[]p",
        axioms: "2>3",
        passes: false,
    },
    Handcrafted {
        name: "lasso of length 1, shallow",
        worlds: &["r", "u"],
        edges: &[("r", "u"), ("u", "u")],
        valuation: &[("p", &["u"])],
        phi: "<>p & []p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "lasso of length 3, depth 3",
        worlds: &["r", "a", "b", "c"],
        edges: &[("r", "a"), ("a", "b"), ("b", "c"), ("c", "c")],
        valuation: &[("p", &["c"]), ("q", &["a"])],
        phi: "<><><>p & <>q",
        axioms: "3>4",
        passes: true,
    },
    Handcrafted {
        name: "two lassos",
        worlds: &["r", "a", "a2", "b", "b2"],
        edges: &[("r", "a"), ("a", "a2"), ("a2", "a2"), ("r", "b"), ("b", "b2"), ("b2", "b2")],
        valuation: &[("p", &["a2"]), ("q", &["b", "b2"])],
        phi: "<><>p & <>(q & <>q)",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "diamond with a looping bottom",
        worlds: &["r", "a", "b", "c"],
        edges: &[("r", "a"), ("r", "b"), ("a", "c"), ("b", "c"), ("c", "c")],
        valuation: &[("p", &["a", "c"])],
        phi: "<>(p & <>p) & <>~p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "height-2 tree under 3>4",
        worlds: &["r", "a", "b", "c", "d"],
        edges: &[("r", "a"), ("r", "b"), ("a", "c"), ("b", "d")],
        valuation: &[("p", &["c"]), ("q", &["b"])],
        phi: "<><><>p | <>(q & []~p)",
        axioms: "3>4",
        passes: true,
    },
    Handcrafted {
        name: "chain, one level",
        worlds: &["r", "a", "b"],
        edges: &[("r", "a"), ("a", "b")],
        valuation: &[("p", &["b"])],
        phi: "<>p",
        axioms: "2>3",
        passes: true,
    },
    Handcrafted {
        name: "chain, two levels",
        worlds: &["r", "a", "b"],
        edges: &[("r", "a"), ("a", "b")],
        valuation: &[("p", &["b"])],
        phi: "<><>p",
        axioms: "2>3",
        passes: false,
    },
    Handcrafted {
        name: "reflexive point, one level",
        worlds: &["w"],
        edges: &[("w", "w")],
        valuation: &[],
        phi: "<>p",
        axioms: "2>3",
        passes: false,
    },
];

impl Handcrafted {
    fn model(&self) -> PointedModel {
        let valuation: Vec<(&str, Vec<&str>)> = self.valuation.iter().map(|(p, ws)| (*p, ws.to_vec())).collect();
        let worlds: Vec<&str> = self.worlds.to_vec();
        PointedModel::from_parts(&worlds, self.worlds[0], self.edges, &valuation).expect("well-formed")
    }
}

/// Verifies one filtration; returns the problems found.
fn check_filtration(f: &FiltrationResult, axioms: &AxiomSet) -> Vec<String> {
    let mut problems: Vec<String> = f.verify(axioms).failed().iter().map(|s| s.to_string()).collect();
    let input_root = model_check(&f.input, f.input.root(), &f.phi).unwrap();
    let quotient_root = model_check(&f.quotient, f.root_class(), &f.phi).unwrap();
    if input_root && !quotient_root {
        problems.push("root satisfaction lost".into());
    }
    if f.k == 0 && (f.quotient.len() != 1 || f.quotient.edges().collect::<Vec<_>>() != vec![(0, 0)]) {
        problems.push("k = 0 quotient is not a single reflexive point".into());
    }
    problems
}

fn filtration_pool(seed: u64) -> (Vec<(String, FiltrationResult, AxiomSet)>, Vec<String>, String) {
    let mut rng = rng_for(seed, 5);
    let mut pool = Vec::new();
    let mut failures = Vec::new();
    let mut report = String::new();

    for h in HANDCRAFTED {
        let m = h.model();
        let phi = parse_formula(h.phi).unwrap();
        let axioms = AxiomSet::parse(h.axioms).unwrap();
        match build_filtration(&m, &phi, &axioms, ConditionScope::Bounded) {
            Ok(f) if h.passes => pool.push((format!("handcrafted {}", h.name), f, axioms)),
            Ok(_) => failures.push(format!("handcrafted {}: expected a precondition failure", h.name)),
            Err(e) if h.passes => failures.push(format!("handcrafted {}: {e}", h.name)),
            Err(e) => writeln!(report, "handcrafted {} rejected: {e}", h.name).unwrap(),
        }
    }

    for i in 0..150 {
        let axioms = gen::random_axiom_set(&mut rng);
        let min_m = axioms.iter().map(Axiom::m).min().unwrap();
        let height = rng.gen_range(0..min_m);
        let tree = gen::graded_tree(&mut rng, height, 3);
        let model = gen::random_valuation(&mut rng, &tree, &["p", "q"]);
        let depth = rng.gen_range(0..=3);
        let phi = gen::random_formula(&mut rng, depth, &["p", "q"]);
        match build_filtration(&model, &phi, &axioms, ConditionScope::Bounded) {
            Ok(f) => pool.push((format!("graded {i}"), f, axioms)),
            Err(e) => failures.push(format!("graded {i}: {e}")),
        }
    }

    let mut saturated = 0;
    for i in 0..300 {
        let (base, axioms) = random_base(&mut rng, 4);
        let base = gen::random_valuation(&mut rng, &base, &["p", "q"]);
        let depth = rng.gen_range(0..=3);
        let phi = gen::random_formula(&mut rng, depth, &["p", "q"]);
        let run = run_repair(&base, &axioms, phi.modal_depth(), 60).expect("saturated base");
        if run.status != RepairStatus::Saturated {
            continue;
        }
        saturated += 1;
        match build_filtration(run.state.current(), &phi, &axioms, ConditionScope::Bounded) {
            Ok(f) => pool.push((format!("repaired {i}"), f, axioms)),
            Err(e) => failures.push(format!("repaired {i}: {e}")),
        }
    }
    writeln!(report, "saturated repair outputs: {saturated}").unwrap();
    (pool, failures, report)
}

fn filtration(seed: u64) -> Verdict {
    let (pool, mut failures, mut report) = filtration_pool(seed);
    let mut by_source = std::collections::BTreeMap::<&str, usize>::new();
    let mut k0 = 0;
    for (label, f, axioms) in &pool {
        *by_source.entry(label.split(' ').next().unwrap()).or_default() += 1;
        k0 += usize::from(f.k == 0);
        let problems = check_filtration(f, axioms);
        if !problems.is_empty() {
            failures.push(format!("{label}: {problems:?}"));
        }
        writeln!(
            report,
            "{label}: k={} classes={} edges={} phi={}",
            f.k,
            f.quotient.len(),
            f.quotient.edge_count(),
            f.phi
        )
        .unwrap();
    }
    writeln!(report, "failures: {failures:?}").unwrap();
    let handcrafted = by_source.get("handcrafted").copied().unwrap_or(0);
    let repaired = by_source.get("repaired").copied().unwrap_or(0);
    Verdict {
        passed: failures.is_empty() && handcrafted >= 10 && repaired > 0 && k0 > 0,
        summary: format!("{} filtrations {by_source:?}, {k0} with k = 0, {} failures", pool.len(), failures.len()),
        report,
    }
}

fn mutation(seed: u64) -> Verdict {
    let (pool, _, _) = filtration_pool(seed);
    let mut rng = rng_for(seed, 6);
    let candidates: Vec<&(String, FiltrationResult, AxiomSet)> = pool
        .iter()
        .filter(|(_, f, axioms)| f.quotient.len() >= 2 && !f.vars.is_empty() && f.verify(axioms).is_clean())
        .collect();
    let chosen: Vec<_> = candidates.choose_multiple(&mut rng, 20).collect();
    let mut report = String::new();
    let mut silent = Vec::new();
    for (label, f, axioms) in &chosen {
        let classes = f.quotient.len();
        let p = f.vars.iter().collect::<Vec<_>>()[rng.gen_range(0..f.vars.len())].clone();

        let mut g = f.clone();
        let class = rng.gen_range(0..classes);
        g.corrupt_valuation(class, &p);
        let v = g.verify(axioms).failed();

        let mut g = f.clone();
        let (a, b) = (rng.gen_range(0..classes), rng.gen_range(0..classes));
        g.corrupt_edge(a, b);
        let r = g.verify(axioms).failed();

        let mut g = f.clone();
        let within: Vec<World> = f.input.worlds().filter(|&w| f.class_map[w].is_some()).collect();
        let w = *within.choose(&mut rng).unwrap();
        let old = f.class_map[w].unwrap();
        let target = (old + rng.gen_range(1..classes)) % classes;
        g.corrupt_class_map(w, target);
        let c = g.verify(axioms).failed();

        for (kind, caught) in [("valuation", &v), ("relation", &r), ("class map", &c)] {
            if caught.is_empty() {
                silent.push(format!("{label}: {kind} mutation accepted"));
            }
        }
        writeln!(report, "{label}: valuation@{class} -> {v:?}; edge ({a},{b}) -> {r:?}; move {w} to {target} -> {c:?}")
            .unwrap();
    }
    writeln!(report, "silent: {silent:?}").unwrap();
    Verdict {
        passed: chosen.len() == 20 && silent.is_empty(),
        summary: format!("{} filtrations x 3 mutations, {} accepted silently", chosen.len(), silent.len()),
        report,
    }
}

const CORPUS: [&str; 30] = [
    "p",
    "~p",
    "p & q",
    "p | ~q",
    "false",
    "p & ~p",
    "<>p",
    "[]p",
    "<>p & <>~p",
    "<>p & []~p",
    "<>~false & ~<><>~false",
    "<><>p",
    "[][]p & <>~p",
    "<>(p & <>q)",
    "<>[]p",
    "[]<>p",
    "<>p & []q & ~<>(p & q)",
    "p -> <>p",
    "~(p -> <><>p)",
    "<><>p & ~<>p",
    "[]false",
    "<>[]false",
    "<><>~false & []p",
    "<>(p & []false)",
    "~<>p & <><>p",
    "<>q & <>(p & ~q) & []<>~false",
    "[](p -> <>q) & <>p",
    "<>(p & <>~p) & [](<>p)",
    "[]p & <>~p",
    "<>(q | <>p) & [][]~p",
];

fn oracle(_seed: u64) -> Verdict {
    let axioms = AxiomSet::parse("2>3").unwrap();
    let a23 = Axiom::new(2, 3).unwrap();
    let mut report = String::new();
    let mut failures = Vec::new();
    let (mut models, mut all_ok) = (0, 0);
    for text in CORPUS {
        let phi: Formula = parse_formula(text).unwrap();
        assert!(phi.modal_depth() <= 2 && phi.prop_vars().len() <= 2, "{text}");
        let Some(m) = sat_oracle(&phi, &axioms, 4).unwrap() else {
            writeln!(report, "{text}: no model up to 4 worlds").unwrap();
            continue;
        };
        models += 1;
        if !check_axiom_condition(&m, &a23).is_empty() || !model_check(&m, m.root(), &phi).unwrap() {
            failures.push(format!("{text}: oracle model fails its own check"));
        }
        let mut line = format!("{text}: model {}w/{}e;", m.len(), m.edge_count());
        for (saturate, unravel) in [(false, false), (false, true)] {
            let options = PipelineOptions {
                saturate,
                unravel,
                budget: phi.modal_depth(),
                max_steps: 150,
                scope: ConditionScope::Bounded,
            };
            let run = run_pipeline(&m, &phi, &axioms, &options).unwrap();
            let status = match &run.report.outcome {
                Outcome::Ok => "ok",
                Outcome::Truncated => "truncated",
                Outcome::Violated(_) => "violated",
            };
            if let Outcome::Violated(w) = &run.report.outcome {
                failures.push(format!("{text}: pipeline violation {w}"));
            }
            if run.report.outcome == Outcome::Ok {
                all_ok += 1;
                let q = run.quotient.as_ref().expect("quotient of an all-ok run");
                if !check_axiom_condition(q, &a23).is_empty() || !model_check(q, q.root(), &phi).unwrap() {
                    failures.push(format!("{text}: all-ok quotient fails frame-check or satisfaction"));
                }
            }
            write!(line, " unravel={unravel}:{status}").unwrap();
        }
        writeln!(report, "{line}").unwrap();
    }
    writeln!(report, "failures: {failures:?}").unwrap();
    Verdict {
        passed: failures.is_empty() && models > 0,
        summary: format!("{} formulas, {models} oracle models, {all_ok} all-ok pipeline runs", CORPUS.len()),
        report,
    }
}

const SUITES: [Criterion; 7] = [
    Criterion { name: "successor-repair", limit: Some(Duration::from_secs(60)), run: successor_repair },
    Criterion { name: "chain-repair", limit: Some(Duration::from_secs(120)), run: chain_repair },
    Criterion { name: "pullback", limit: None, run: pullback },
    Criterion { name: "k-bisimulation", limit: Some(Duration::from_secs(120)), run: k_bisim_exhaustive },
    Criterion { name: "filtration", limit: None, run: filtration },
    Criterion { name: "mutation", limit: None, run: mutation },
    Criterion { name: "oracle", limit: Some(Duration::from_secs(300)), run: oracle },
];

fn main() {
    let seed = seed();
    println!("acceptance suite, seed {seed}");
    let mut all_passed = true;
    let mut reports = Vec::new();
    for c in &SUITES {
        let started = Instant::now();
        let verdict = (c.run)(seed);
        let elapsed = started.elapsed();
        let in_time = c.limit.is_none_or(|limit| elapsed < limit);
        let passed = verdict.passed && in_time;
        all_passed &= passed;
        let limit = c.limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "{} {}: {}; {:.1}s{limit}",
            if passed { "PASS" } else { "FAIL" },
            c.name,
            verdict.summary,
            elapsed.as_secs_f64()
        );
        if !verdict.passed {
            for line in verdict.report.lines().filter(|l| l.contains("failures") || l.contains("silent")) {
                println!("    {line}");
            }
        }
        reports.push(verdict.report);
    }

    let started = Instant::now();
    let differing: Vec<&str> = SUITES
        .iter()
        .zip(&reports)
        .filter(|(c, first)| (c.run)(seed).report != **first)
        .map(|(c, _)| c.name)
        .collect();
    let passed = differing.is_empty();
    all_passed &= passed;
    println!(
        "{} determinism: reran {} suites with seed {seed}, {} differing reports {differing:?}; {:.1}s",
        if passed { "PASS" } else { "FAIL" },
        SUITES.len(),
        differing.len(),
        started.elapsed().as_secs_f64()
    );

    if !all_passed {
        std::process::exit(1);
    }
}
