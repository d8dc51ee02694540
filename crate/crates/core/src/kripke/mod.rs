//! Frames and models: k-step relations, depth, rootedness, generated
//! submodels, the density frame conditions, and tree unraveling.

mod frames;
mod model;
mod relation;

pub use frames::{
    check_axiom_condition, depth_map, generated_submodel, is_rooted, k_step, reachable_from,
    saturate_to_phi_frame, unravel, unravel_closed, violates_any, DepthMap,
};
pub use model::{PointedModel, Valuation, World};
pub use relation::Relation;
