//! Formulas of the basic modal language, the density axioms, and Kripke
//! satisfaction.

mod axiom;
mod eval;
mod formula;
mod parser;

pub use axiom::{box_to_diamond, Axiom, AxiomSet};
pub use eval::{extension, model_check};
pub use formula::Formula;
pub use parser::parse_formula;
