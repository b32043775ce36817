//! Buchberger completion for binomial-plus-monomial ideals, with full
//! interreduction. The reduced basis for a fixed term order is unique, so
//! the S-pair processing discipline is a free parameter; exposing two
//! disciplines lets tests confirm the canonical output is
//! discipline-independent.

use super::binomial::Binomial;
use super::monomial::Monomial;
use super::order::TermOrder;
use std::collections::VecDeque;

/// How pending S-pairs are dequeued. The reduced result is identical
/// either way; only the work schedule differs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SPairDiscipline {
    /// Smallest lcm total degree first (ties by index); the default.
    MinDegree,
    /// First-in first-out.
    Fifo,
}

/// A reduced Groebner basis together with the order it is reduced
/// against. Elements are sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: TermOrder,
    elements: Vec<Binomial>,
}

/// A fully reduced element: zero, a monomial, or a binomial — always up
/// to an overall sign, which ideal membership does not see.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Zero,
    Element(Binomial),
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    /// Minimal generators of the initial ideal: the leading monomials of
    /// the reduced basis.
    pub fn initial_ideal(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lead().clone()).collect()
    }

    /// Whether the element reduces to zero, i.e. lies in the ideal.
    pub fn contains(&self, f: &Binomial) -> bool {
        matches!(self.normal_form(f), Reduced::Zero)
    }

    /// Normal form of a single monomial: either zero or a monomial (the
    /// coefficient +1 never changes, so no sign ambiguity here).
    pub fn normal_form_monomial(&self, m: &Monomial) -> Option<Monomial> {
        let mut cur = m.clone();
        'outer: loop {
            for g in &self.elements {
                if g.lead().divides(&cur) {
                    let q = g.lead().quotient_into(&cur);
                    match g.tail() {
                        None => return None,
                        Some(t) => {
                            cur = t.mul(&q);
                            continue 'outer;
                        }
                    }
                }
            }
            return Some(cur);
        }
    }

    /// Normal form of a binomial or monomial. Idempotent; the result is
    /// zero or a reduced element, up to overall sign.
    pub fn normal_form(&self, f: &Binomial) -> Reduced {
        let lead_nf = self.normal_form_monomial(f.lead());
        let tail_nf = f.tail().and_then(|t| self.normal_form_monomial(t));
        match (lead_nf, tail_nf) {
            (None, None) => Reduced::Zero,
            (Some(m), None) | (None, Some(m)) => Reduced::Element(Binomial::monomial(m)),
            (Some(a), Some(b)) => {
                if a == b {
                    Reduced::Zero
                } else {
                    Reduced::Element(
                        Binomial::difference(&self.order, a, b)
                            .expect("distinct monomials form a binomial"),
                    )
                }
            }
        }
    }
}

/// S-polynomial of two oriented elements, already knowing it will be a
/// binomial, monomial, or zero. `None` encodes zero.
fn s_poly(order: &TermOrder, f: &Binomial, g: &Binomial) -> Option<Binomial> {
    let lcm = f.lead().lcm(g.lead());
    let uf = f.lead().quotient_into(&lcm);
    let ug = g.lead().quotient_into(&lcm);
    // (lcm/lt f) f - (lcm/lt g) g; lead terms cancel.
    match (f.tail(), g.tail()) {
        (None, None) => None,
        (Some(t), None) => Some(Binomial::monomial(t.mul(&uf))),
        (None, Some(t)) => Some(Binomial::monomial(t.mul(&ug))),
        (Some(tf), Some(tg)) => {
            let a = tg.mul(&ug);
            let b = tf.mul(&uf);
            if a == b {
                None
            } else {
                Some(Binomial::difference(order, a, b).expect("distinct"))
            }
        }
    }
}

/// Full reduction of `f` by `basis` (leads and tails), in the engine's
/// internal sign-free convention.
fn reduce(order: &TermOrder, basis: &[Binomial], f: &Binomial) -> Option<Binomial> {
    let nf_mono = |m: &Monomial| -> Option<Monomial> {
        let mut cur = m.clone();
        'outer: loop {
            for g in basis {
                if g.lead().divides(&cur) {
                    let q = g.lead().quotient_into(&cur);
                    match g.tail() {
                        None => return None,
                        Some(t) => {
                            cur = t.mul(&q);
                            continue 'outer;
                        }
                    }
                }
            }
            return Some(cur);
        }
    };
    let a = nf_mono(f.lead());
    let b = f.tail().and_then(&nf_mono);
    match (a, b) {
        (None, None) => None,
        (Some(m), None) | (None, Some(m)) => Some(Binomial::monomial(m)),
        (Some(a), Some(b)) => {
            if a == b {
                None
            } else {
                Some(Binomial::difference(order, a, b).expect("distinct"))
            }
        }
    }
}

/// Buchberger completion followed by interreduction. The output is the
/// unique reduced Groebner basis of the ideal generated by `gens` under
/// `order`, independent of `discipline`.
pub fn buchberger(gens: &[Binomial], order: &TermOrder, discipline: SPairDiscipline) -> GroebnerBasis {
    let mut basis: Vec<Binomial> = Vec::new();
    for g in gens {
        if let Some(g) = reduce(order, &basis, &g.clone().reorient(order).expect("input binomial")) {
            basis.push(g);
        }
    }

    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let enqueue = |queue: &mut VecDeque<(usize, usize)>, basis: &[Binomial], k: usize| {
        for i in 0..k {
            // Two monomials have S-polynomial zero; coprime leads reduce
            // to zero by Buchberger's first criterion.
            if basis[i].is_monomial() && basis[k].is_monomial() {
                continue;
            }
            if basis[i].lead().is_coprime_with(basis[k].lead()) {
                continue;
            }
            queue.push_back((i, k));
        }
    };
    for k in 0..basis.len() {
        enqueue(&mut queue, &basis, k);
    }

    while !queue.is_empty() {
        let (i, j) = match discipline {
            SPairDiscipline::Fifo => queue.pop_front().unwrap(),
            SPairDiscipline::MinDegree => {
                let pos = (0..queue.len())
                    .min_by_key(|&p| {
                        let (i, j) = queue[p];
                        (basis[i].lead().lcm(basis[j].lead()).total_degree(), i, j)
                    })
                    .unwrap();
                queue.remove(pos).unwrap()
            }
        };
        let Some(s) = s_poly(order, &basis[i], &basis[j]) else {
            continue;
        };
        if let Some(r) = reduce(order, &basis, &s) {
            basis.push(r);
            enqueue(&mut queue, &basis, basis.len() - 1);
        }
    }

    GroebnerBasis { order: order.clone(), elements: interreduce(order, basis) }
}

/// Minimalizes leads, then tail-reduces to the canonical reduced basis.
fn interreduce(order: &TermOrder, mut basis: Vec<Binomial>) -> Vec<Binomial> {
    basis.sort_by(|a, b| order.compare(a.lead(), b.lead()).then_with(|| a.cmp(b)));
    basis.dedup();
    // A proper divisor is strictly smaller in any monomial order, so an
    // ascending scan keeps exactly the minimal leads.
    let mut minimal: Vec<Binomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lead().divides(g.lead())) {
            minimal.push(g);
        }
    }
    // Tail reduction to a fixpoint. Tails strictly decrease in the order,
    // so this terminates.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let g = minimal[i].clone();
            let Some(t) = g.tail() else {
                continue;
            };
            let others: Vec<Binomial> = minimal
                .iter()
                .enumerate()
                .filter_map(|(k, h)| (k != i).then(|| h.clone()))
                .collect();
            let gb_view = GroebnerBasis { order: order.clone(), elements: others };
            let new_tail = gb_view.normal_form_monomial(t);
            let replacement = match new_tail {
                None => Binomial::monomial(g.lead().clone()),
                Some(t2) => {
                    if &t2 == t {
                        continue;
                    }
                    Binomial::difference(order, g.lead().clone(), t2)
                        .expect("tail stays below lead")
                }
            };
            minimal[i] = replacement;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| order.compare(a.lead(), b.lead()).then_with(|| a.cmp(b)));
    minimal
}
