//! Finite-model machinery for modal logics axiomatized by density-style
//! formulas `<>^m p -> <>^n p` with `n > m > 1`.
//!
//! The crate turns the constructive steps of a finite-model-property
//! argument into checked code:
//!
//! * [`logic`]: formulas, parsing, modal depth, Kripke satisfaction;
//! * [`kripke`]: pointed models, `R^k`, depth, the frame conditions
//!   `x R^m y => x R^n y`, saturation and unraveling;
//! * [`bisim`]: bisimilarity and the depth-indexed `~_k`;
//! * [`morphism`]: p-morphism certification and valuation pullback;
//! * [`repair`]: defect-driven repairs producing depth-graded models;
//! * [`filtration`]: the depth-stratified quotient and its verifiers;
//! * [`oracle`] and [`pipeline`]: brute-force satisfiability and the
//!   end-to-end run.

pub mod bisim;
pub mod error;
pub mod filtration;
pub mod gen;
pub mod io;
pub mod kripke;
pub mod logic;
pub mod morphism;
pub mod oracle;
pub mod pipeline;
pub mod repair;

pub use error::{Error, Result};
pub use kripke::{PointedModel, World};
pub use logic::{Axiom, AxiomSet, Formula};
