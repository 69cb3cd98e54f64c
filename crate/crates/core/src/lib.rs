//! Exact invariants of reduced projective plane curves over the rationals.

pub mod curve;
pub mod exact;
pub mod fuzz;
pub mod git;
pub mod local;
pub mod ploski;
pub mod polar;
pub mod singular;
