//! Monomial term orders: lex, graded reverse lex, and weight orders with a
//! tiebreak.
//!
//! The weight kind covers the two special orders the rest of the crate
//! relies on:
//!
//! * saturation of a positively graded ideal by variable `j` uses the
//!   grading weights with a reverse-lex tiebreak in which `j` compares
//!   last, making `d_j` the cheapest variable inside every homogeneous
//!   component;
//! * elimination of an auxiliary variable `t` uses the unit weight on `t`
//!   (monomials containing `t` dominate all others) with a grevlex
//!   tiebreak.
//!
//! All weights are required to be nonnegative so that every weight order
//! here is a well-order.

use super::monomial::Monomial;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;

/// Tiebreak applied when weighted degrees agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TieBreak {
    Lex,
    GrevLex,
    /// Ungraded reverse lex on the variable sequence with variable `j`
    /// (0-based) moved to the last, i.e. cheapest, position. Only valid
    /// under strictly positive weights (each weight class is then finite,
    /// which restores well-foundedness); in exchange, a leading term
    /// divisible by `d_j` forces the whole weight-homogeneous binomial to
    /// be divisible by `d_j`, which is exactly what saturation by `d_j`
    /// needs.
    RevLexLast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrderKind {
    Lex,
    GrevLex,
    Weighted { weights: Vec<BigRational>, tie: TieBreak },
}

/// A monomial well-order on a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    nvars: usize,
    kind: TermOrderKind,
}

impl TermOrder {
    pub fn lex(nvars: usize) -> Self {
        TermOrder { nvars, kind: TermOrderKind::Lex }
    }

    pub fn grevlex(nvars: usize) -> Self {
        TermOrder { nvars, kind: TermOrderKind::GrevLex }
    }

    /// Weight order with tiebreak. Panics if a weight is negative (that
    /// would break well-foundedness) or, for the `RevLexLast` tiebreak, if
    /// any weight is zero (the ungraded tiebreak needs finite weight
    /// classes).
    pub fn weighted(weights: Vec<BigRational>, tie: TieBreak) -> Self {
        assert!(
            weights.iter().all(|w| w >= &BigRational::zero()),
            "term order weights must be nonnegative"
        );
        if let TieBreak::RevLexLast(j) = tie {
            assert!(j < weights.len(), "tiebreak variable out of range");
            assert!(
                weights.iter().all(|w| w > &BigRational::zero()),
                "RevLexLast tiebreak requires strictly positive weights"
            );
        }
        TermOrder { nvars: weights.len(), kind: TermOrderKind::Weighted { weights, tie } }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kind(&self) -> &TermOrderKind {
        &self.kind
    }

    /// Compares two monomials; `Greater` means `a` is the larger term.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars);
        debug_assert_eq!(b.nvars(), self.nvars);
        match &self.kind {
            TermOrderKind::Lex => lex_cmp(a, b),
            TermOrderKind::GrevLex => grevlex_cmp(a, b, None),
            TermOrderKind::Weighted { weights, tie } => {
                let wa: BigRational =
                    a.exps().iter().zip(weights).map(|(&e, w)| w * BigRational::from_integer(e.into())).sum();
                let wb: BigRational =
                    b.exps().iter().zip(weights).map(|(&e, w)| w * BigRational::from_integer(e.into())).sum();
                match wa.cmp(&wb) {
                    Ordering::Equal => match tie {
                        TieBreak::Lex => lex_cmp(a, b),
                        TieBreak::GrevLex => grevlex_cmp(a, b, None),
                        TieBreak::RevLexLast(j) => revlex_cmp(a, b, *j),
                    },
                    other => other,
                }
            }
        }
    }

    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps().iter().zip(b.exps()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Graded reverse lex on the standard variable sequence.
fn grevlex_cmp(a: &Monomial, b: &Monomial, last: Option<usize>) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    revlex_on_seq(a, b, last)
}

/// Ungraded reverse lex with variable `j` moved to the cheapest slot.
fn revlex_cmp(a: &Monomial, b: &Monomial, j: usize) -> Ordering {
    revlex_on_seq(a, b, Some(j))
}

/// `a > b` iff the last nonzero of `exps(a) - exps(b)`, read along the
/// variable sequence (with `last`, if any, moved to the end), is negative.
fn revlex_on_seq(a: &Monomial, b: &Monomial, last: Option<usize>) -> Ordering {
    let n = a.nvars();
    let seq: Vec<usize> = match last {
        None => (0..n).collect(),
        Some(j) => (0..n).filter(|&i| i != j).chain(std::iter::once(j)).collect(),
    };
    for &i in seq.iter().rev() {
        let (x, y) = (a.exp(i), b.exp(i));
        match x.cmp(&y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}
