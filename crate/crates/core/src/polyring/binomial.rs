//! Pure difference binomials `d^a - d^b` and bare monomials `d^a`.
//!
//! Every ideal handled by this crate is generated by such elements, and
//! the class is closed under S-polynomials and reduction: each step
//! replaces one term by one term, so coefficients stay in `{+1, -1}` and
//! no three-term polynomial can ever appear. Elements are stored oriented
//! (lead strictly larger than the tail in the ambient term order) and an
//! overall sign is immaterial for ideal membership, so it is normalized
//! away.

use super::monomial::Monomial;
use super::order::TermOrder;
use super::PolyError;
use std::cmp::Ordering;
use std::fmt;

/// An oriented binomial `lead - tail`, or a bare monomial when `tail` is
/// `None`. The orientation is relative to the term order of the basis the
/// element lives in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    lead: Monomial,
    tail: Option<Monomial>,
}

impl Binomial {
    /// Builds `a - b` oriented under `order`. Fails with
    /// `UnsupportedInput` when `a == b` (the zero polynomial is not an
    /// element).
    pub fn difference(order: &TermOrder, a: Monomial, b: Monomial) -> Result<Binomial, PolyError> {
        match order.compare(&a, &b) {
            Ordering::Greater => Ok(Binomial { lead: a, tail: Some(b) }),
            Ordering::Less => Ok(Binomial { lead: b, tail: Some(a) }),
            Ordering::Equal => Err(PolyError::UnsupportedInput {
                reason: format!("zero binomial {a} - {b}"),
            }),
        }
    }

    /// Builds the bare monomial `m`.
    pub fn monomial(m: Monomial) -> Binomial {
        Binomial { lead: m, tail: None }
    }

    /// Builds `lead - tail` trusting the caller's orientation. Only for
    /// transformations that provably preserve it: dividing both terms by
    /// a common monomial, or deleting a coordinate that is zero in both.
    pub(crate) fn difference_unchecked(lead: Monomial, tail: Monomial) -> Binomial {
        debug_assert_ne!(lead, tail, "zero binomial");
        Binomial { lead, tail: Some(tail) }
    }

    /// Builds `d^{u+} - d^{u-}` from an integer exponent vector, the
    /// binomial attached to a lattice element. Fails on the zero vector.
    pub fn from_lattice_vector(order: &TermOrder, u: &[num_bigint::BigInt]) -> Result<Binomial, PolyError> {
        use num_traits::{Signed, ToPrimitive, Zero};
        let part = |keep_positive: bool| -> Vec<u32> {
            u.iter()
                .map(|x| {
                    if x.is_positive() == keep_positive && !x.is_zero() {
                        x.abs().to_u32().expect("lattice exponent exceeds u32")
                    } else {
                        0
                    }
                })
                .collect()
        };
        Binomial::difference(order, Monomial::new(part(true)), Monomial::new(part(false)))
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn tail(&self) -> Option<&Monomial> {
        self.tail.as_ref()
    }

    pub fn is_monomial(&self) -> bool {
        self.tail.is_none()
    }

    /// Whether this is the constant 1, i.e. the whole ring.
    pub fn is_unit(&self) -> bool {
        self.tail.is_none() && self.lead.is_one()
    }

    /// Multiplies both terms by `m`.
    pub fn scale(&self, m: &Monomial) -> Binomial {
        Binomial {
            lead: self.lead.mul(m),
            tail: self.tail.as_ref().map(|t| t.mul(m)),
        }
    }

    pub(crate) fn reorient(self, order: &TermOrder) -> Result<Binomial, PolyError> {
        match self.tail {
            None => Ok(self),
            Some(t) => Binomial::difference(order, self.lead, t),
        }
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            None => write!(f, "{}", self.lead),
            Some(t) => write!(f, "{} - {}", self.lead, t),
        }
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
