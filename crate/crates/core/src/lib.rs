//! Exact-arithmetic analysis of GKZ hypergeometric systems.
//!
//! Input is an integer `d x n` matrix `A` whose columns generate a pointed
//! semigroup with `ZA = Z^d`, together with a rational parameter vector
//! `beta`. The crate computes, entirely in exact arithmetic:
//!
//! * the face lattice of the cone spanned by the columns ([`cone`]);
//! * the toric ideal `I_A` and initial ideals via a binomial Buchberger
//!   engine ([`polyring`]);
//! * standard pairs of monomial ideals and the quasi-degree arrangements
//!   of the toric quotients `S_A / <del^tau>` ([`stdpairs`]);
//! * resonance and strong resonance of `beta`, contiguity
//!   quasi-isomorphisms, and minimal escape shifts ([`resonance`]);
//! * the image data of a torus orbit under the border embedding, with the
//!   exponent list of the Laurent summands ([`border`]);
//! * the Euler operators and the Euler-Koszul complex presentation, with
//!   computer-algebra script export ([`ekpresent`]).
//!
//! All reported structures are canonical and deterministic: same input,
//! same bytes.

pub mod border;
pub mod cone;
pub mod ekpresent;
pub mod exactlat;
pub mod polyring;
pub mod resonance;
pub mod stdpairs;

pub use cone::GkzMatrix;
pub use exactlat::IntMatrix;
