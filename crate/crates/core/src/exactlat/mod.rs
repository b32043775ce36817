//! Exact integer and rational linear algebra.
//!
//! Everything downstream — cone geometry, toric ideals, quasi-degree
//! arrangements, resonance verdicts — reduces to a handful of exact
//! primitives collected here:
//!
//! * [`IntMatrix`]: dense arbitrary-precision integer matrices;
//! * [`snf`] / [`hnf`]: Smith and Hermite normal forms with recorded
//!   unimodular transforms and inverses, deterministic pivot rule;
//! * [`kernel_lattice`]: saturated integer kernel of a matrix;
//! * [`saturate_with_diagonal`]: saturation of a column lattice together
//!   with the elementary divisors relating it to the original lattice;
//! * [`split_complement`]: a direct complement of a saturated sublattice;
//! * [`rational_solve`]: exact affine solving with kernel basis.
//!
//! No floating point anywhere; all canonical forms (Hermite bases, reduced
//! kernel vectors) are deterministic so reports serialized from them are
//! byte-stable.

mod lattice;
mod matrix;
mod snf;
mod solve;

pub use lattice::{
    kernel_lattice, positive_functional, primitive_vector, saturate_with_diagonal,
    split_complement, DiagonalSaturation, LatticeBasis,
};
pub use matrix::IntMatrix;
pub use snf::{det, hnf, snf, HnfResult, SnfResult};
pub use solve::{rational_rank, rational_solve, to_rational, RationalSolution};

use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the exact linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactLatError {
    /// Right-hand side length does not match the matrix row count.
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A lattice that was required to be saturated has a nontrivial
    /// elementary divisor.
    #[error("lattice is not saturated: elementary divisors {divisors:?}")]
    NotSaturated { divisors: Vec<BigInt> },
}
