//! Exact linear algebra over F_p and Z.

mod fp;
mod lattice;

pub use fp::{annihilator, mod_inverse, rref, span_of_subsets, FpSubspace, FpVector, Prime};
pub use lattice::{hnf, integer_orthogonal, saturate, IntLattice};
pub(crate) use lattice::dot;
