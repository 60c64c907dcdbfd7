//! ZX-diagrams, their tensor semantics and the rewrite rules.

mod diagram;
mod dot;
mod gadget;
pub mod random;
mod rules;
mod tensor;

pub use diagram::{
    canonical_phase, display_phase, is_zero_phase, Edge, Param, Slot, Vertex, VertexId, VertexKind,
    ZxDiagram,
};
pub use dot::to_dot;
pub use gadget::{
    adaptive_cnot_residual, adaptive_gadget, gadget_rewrites, gadget_target, translation_x,
    verify_adaptive_cnot, GadgetSetting,
};
pub use rules::{
    color_change, color_change_in_place, copy_in_place, copy_rule, fuse_in_place, fuse_spiders,
    insert_identity_in_place, remove_identity, remove_identity_in_place,
};
pub use tensor::{
    eval_tensor, proportional, proportionality_residual, proportionality_residual_above, Tensor,
    MAX_WIDTH, ZERO_TOL,
};
