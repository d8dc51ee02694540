//! Depth-graded representations: defect detection, the two repair steps,
//! a bounded fair scheduler, and the checker for the resulting conditions.
//!
//! Starting from a p-morphism `f: (W_i, R_i, r) -> (W, R, r)` into a frame
//! satisfying the density conditions, each repair adds fresh worlds so that
//! a missing depth-graded successor (type 2) or depth-graded `n`-chain
//! (type 3) appears, while `f` stays a p-morphism and old depths stay put.

mod conditions;
mod defect;
mod state;

pub use conditions::{verify_bounded_conditions, ChainViolation, ConditionReport, ConditionScope, SuccessorViolation};
pub use defect::{graded_chain_targets, step_successors, Defect, DefectInfo};
pub use state::{run_repair, Census, CensusRow, RepairRun, RepairState, RepairStatus, StepRecord, FRESH_PREFIX};
