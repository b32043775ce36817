//! Binomial polynomial arithmetic in the partial-derivative variables.
//!
//! Everything downstream of the lattice layer works inside the class of
//! *binomials* `d^a - d^b` (and bare monomials `d^a`): lattice ideals,
//! their saturations, and toric ideals are all generated by binomials,
//! and Buchberger's algorithm never leaves the class. The module
//! provides monomials, term orders, oriented binomials, a reduced
//! Groebner engine specialised to binomials, and toric-ideal
//! construction with per-variable saturation.
//!
//! Variables print as `d1, d2, ...` (one-based) to match the
//! partial-derivative reading `d_j`; internally indices are zero-based.

mod binomial;
mod groebner;
mod monomial;
mod order;
mod toric;

pub use binomial::Binomial;
pub use groebner::{buchberger, GroebnerBasis, Reduced, SPairDiscipline};
pub use monomial::Monomial;
pub use order::{TermOrder, TermOrderKind, TieBreak};
pub use toric::{a_degree_matches, saturate, toric_ideal_of_matrix};

use thiserror::Error;

/// Errors surfaced by the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The request leaves the supported binomial class or is otherwise
    /// ill-posed (zero binomial, out-of-range variable).
    #[error("unsupported input: {reason}")]
    UnsupportedInput { reason: String },
}
