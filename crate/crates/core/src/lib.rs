//! Existence, synthesis and zero-set bounds for equivariant maps between
//! representation spheres of p-tori `Z_p^k` and tori `T^k`.
//!
//! - [`exactalg`]: F_p subspaces in RREF, integer lattices in HNF.
//! - [`reps`]: weights, fixed-point sub-representations, isotropy subgroups.
//! - [`bounds`]: existence decisions and zero-set dimension bounds.
//! - [`synth`]: join-of-power-maps constructions and their evaluation.
//! - [`verify`]: numerical equivariance, zero sampling and dimension estimates.

pub mod bounds;
pub mod error;
pub mod exactalg;
pub mod reps;
pub mod synth;
pub mod verify;

pub use bounds::{
    decide_map_existence, global_bound, infinite_witness, parity_refine, refined_bounds,
    BoundReport, DecisionReport, Verdict,
};
pub use error::{Error, Result};
pub use reps::{parse_representation, GroupDescriptor, Problem, Representation, Subgroup, Weight};
pub use synth::{
    evaluate, projection_map, synthesize_equivariant, synthesize_partial, Point, SynthesizedMap,
};
pub use verify::{VerificationConfig, Status};
