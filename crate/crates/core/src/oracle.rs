//! Brute-force satisfiability over small rooted frames.
//!
//! Frames come from the breadth-first normal form of [`crate::gen`]; frame
//! conditions and formulas are evaluated directly on successor bitmasks,
//! independently of [`crate::kripke`] and [`crate::logic::model_check`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gen::{apply_valuation_code, frame_from_masks, rooted_frame_masks};
use crate::kripke::PointedModel;
use crate::logic::{AxiomSet, Formula};

/// Largest frame size [`sat_oracle`] accepts.
pub const SAT_SIZE_CAP: usize = 5;

fn step(rel: &[u32], succ: &[u32]) -> Vec<u32> {
    rel.iter()
        .map(|&row| {
            (0..succ.len())
                .filter(|&y| row & (1 << y) != 0)
                .fold(0, |acc, y| acc | succ[y])
        })
        .collect()
}

fn power(succ: &[u32], k: usize) -> Vec<u32> {
    let mut rel: Vec<u32> = (0..succ.len()).map(|x| 1 << x).collect();
    for _ in 0..k {
        rel = step(&rel, succ);
    }
    rel
}

/// `x R^m y => x R^n y` for every axiom, on successor masks.
pub fn masks_satisfy(succ: &[u32], axioms: &AxiomSet) -> bool {
    axioms.iter().all(|a| {
        let rm = power(succ, a.m());
        let rn = power(succ, a.n());
        rm.iter().zip(&rn).all(|(m, n)| m & !n == 0)
    })
}

/// Extension of `f` as a world mask. `vals[i]` is the mask of `vars[i]`.
fn extension(succ: &[u32], f: &Formula, vars: &[String], vals: &[u32]) -> u32 {
    let all = if succ.len() == 32 { u32::MAX } else { (1u32 << succ.len()) - 1 };
    let pre = |target: u32| -> u32 {
        (0..succ.len()).filter(|&x| succ[x] & target != 0).fold(0, |acc, x| acc | (1 << x))
    };
    match f {
        Formula::Falsum => 0,
        Formula::Prop(p) => vars.iter().position(|v| v == p).map_or(0, |i| vals[i]),
        Formula::Not(a) => all & !extension(succ, a, vars, vals),
        Formula::Or(a, b) => extension(succ, a, vars, vals) | extension(succ, b, vars, vals),
        Formula::And(a, b) => extension(succ, a, vars, vals) & extension(succ, b, vars, vals),
        Formula::Implies(a, b) => (all & !extension(succ, a, vars, vals)) | extension(succ, b, vars, vals),
        Formula::Diamond(a) => pre(extension(succ, a, vars, vals)),
        Formula::Box(a) => all & !pre(all & !extension(succ, a, vars, vals)),
    }
}

/// First valuation code (over `vars`) making `phi` true at world 0.
fn satisfying_code(succ: &[u32], phi: &Formula, vars: &[String]) -> Option<u64> {
    let n = succ.len();
    let bits = n * vars.len();
    (0..(1u64 << bits)).find(|&code| {
        let vals: Vec<u32> = (0..vars.len())
            .map(|v| ((code >> (v * n)) & ((1u64 << n) - 1)) as u32)
            .collect();
        extension(succ, phi, vars, &vals) & 1 != 0
    })
}

/// The first model, in (size, frame, valuation) order, on a frame of at
/// most `max_size` worlds satisfying every axiom whose root satisfies
/// `phi`. Valuations range over `Prop(phi)` only. Sizes above
/// [`SAT_SIZE_CAP`] are refused.
pub fn sat_oracle(phi: &Formula, axioms: &AxiomSet, max_size: usize) -> Result<Option<PointedModel>> {
    if max_size > SAT_SIZE_CAP {
        return Err(Error::Precondition(format!(
            "oracle size {max_size} exceeds the cap of {SAT_SIZE_CAP}"
        )));
    }
    Ok(sat_oracle_uncapped(phi, axioms, max_size))
}

/// [`sat_oracle`] without the size guard (sizes up to 8).
pub fn sat_oracle_uncapped(phi: &Formula, axioms: &AxiomSet, max_size: usize) -> Option<PointedModel> {
    let vars: Vec<String> = phi.prop_vars().into_iter().collect();
    for n in 1..=max_size {
        let found = rooted_frame_masks(n).into_par_iter().find_map_first(|succ| {
            if !masks_satisfy(&succ, axioms) {
                return None;
            }
            satisfying_code(&succ, phi, &vars).map(|code| (succ, code))
        });
        if let Some((succ, code)) = found {
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            return Some(apply_valuation_code(&frame_from_masks(&succ), &names, code));
        }
    }
    None
}
