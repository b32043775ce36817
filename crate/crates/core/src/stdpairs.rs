//! Standard pairs of monomial ideals and quasi-degree arrangements.
//!
//! The graded pieces the resonance tests need are the *quasi-degrees* of
//! the quotients `S_A / <d^tau>`: the Zariski closure of the set of
//! `Z^d`-degrees where the quotient is nonzero. The closure is computed
//! combinatorially: the quotient has a monomial basis given by the
//! standard monomials of the initial ideal of `I_A + <d^tau>`, the
//! standard monomials decompose into finitely many translates
//! `root + N^sigma` (standard pairs), and each translate closes up to
//! the affine subspace `-A.root - span(sigma columns)` under the degree
//! convention. Canonicalizing the resulting arrangement makes it
//! independent of the term order used along the way.

use crate::cone::GkzMatrix;
use crate::exactlat::{rational_solve, saturate_with_diagonal, IntMatrix};
use crate::polyring::{buchberger, Binomial, Monomial, SPairDiscipline, TermOrder, TermOrderKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// The program-wide grading: `deg(d_j) = -a_j` and `deg(x_j) = +a_j`.
/// Every module consults this value instead of choosing signs locally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeConvention;

/// The single shared convention value.
pub const DEGREE_CONVENTION: DegreeConvention = DegreeConvention;

impl DegreeConvention {
    /// Degree of the derivative monomial `d^u`: `-A.u`.
    pub fn derivative_degree(&self, m: &IntMatrix, u: &Monomial) -> Vec<BigInt> {
        assert_eq!(u.nvars(), m.cols(), "monomial arity must match column count");
        (0..m.rows())
            .map(|i| -(0..m.cols()).map(|j| m.get(i, j) * BigInt::from(u.exp(j))).sum::<BigInt>())
            .collect()
    }

    /// Degree of the coordinate `x_j`: the column `+a_j`.
    pub fn variable_degree(&self, m: &IntMatrix, j: usize) -> Vec<BigInt> {
        m.col(j)
    }
}

/// A maximal free translate `root + N^free` inside the standard
/// monomials of a monomial ideal. The root has zero exponents on the
/// free variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StandardPair {
    root: Monomial,
    free: Vec<usize>,
}

impl StandardPair {
    pub fn root(&self) -> &Monomial {
        &self.root
    }

    /// Zero-based free-variable indices, ascending.
    pub fn free(&self) -> &[usize] {
        &self.free
    }
}

/// The standard-pair decomposition of the monomial ideal generated by
/// `mingens` in `nvars` variables: all maximal pairs `(root, sigma)`
/// whose translates `root + N^sigma` avoid the ideal. Their union is
/// exactly the set of standard monomials.
///
/// The search is bounded: a maximal pair's root exponent in a non-free
/// variable is strictly below the largest generator exponent in that
/// variable (otherwise the variable could be freed without meeting the
/// ideal), and a variable no generator uses is free in every maximal
/// pair. Maximality is also decided within the bound, because every
/// admissible pair extends to an in-bound admissible pair with the same
/// or larger cover.
pub fn standard_pairs(nvars: usize, mingens: &[Monomial]) -> Vec<StandardPair> {
    for g in mingens {
        assert_eq!(g.nvars(), nvars, "generator arity mismatch");
    }
    for (i, g) in mingens.iter().enumerate() {
        for (l, h) in mingens.iter().enumerate() {
            assert!(i == l || !g.divides(h), "generators must be pairwise non-divisible");
        }
    }
    if mingens.iter().any(Monomial::is_one) {
        return Vec::new(); // unit ideal: no standard monomials
    }

    let bound: Vec<u32> =
        (0..nvars).map(|i| mingens.iter().map(|g| g.exp(i)).max().unwrap_or(0)).collect();

    // A translate root + N^sigma avoids the ideal iff every generator
    // exceeds the root in some bound (non-sigma) variable.
    let admissible = |root: &[u32], free: &[bool]| {
        mingens.iter().all(|g| (0..nvars).any(|i| !free[i] && g.exp(i) > root[i]))
    };

    let mut pairs: Vec<(Vec<u32>, Vec<bool>)> = Vec::new();
    let mut root = vec![0u32; nvars];
    let mut free = vec![false; nvars];
    enumerate_pairs(0, &bound, &mut root, &mut free, &admissible, &mut pairs);

    // Keep the maximal covers: (a, sigma) lies inside (b, tau) iff
    // sigma is a subset of tau and the roots agree off tau.
    let covered = |a: &(Vec<u32>, Vec<bool>), b: &(Vec<u32>, Vec<bool>)| {
        a != b
            && (0..nvars).all(|i| !a.1[i] || b.1[i])
            && (0..nvars).all(|i| b.1[i] || a.0[i] == b.0[i])
    };
    let mut out: Vec<StandardPair> = pairs
        .iter()
        .filter(|p| !pairs.iter().any(|q| covered(p, q)))
        .map(|(root, free)| StandardPair {
            root: Monomial::new(root.clone()),
            free: (0..nvars).filter(|&i| free[i]).collect(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Enumerates all admissible (root, free) pairs with the root vanishing
/// on free variables and bounded elsewhere.
fn enumerate_pairs(
    i: usize,
    bound: &[u32],
    root: &mut Vec<u32>,
    free: &mut Vec<bool>,
    admissible: &impl Fn(&[u32], &[bool]) -> bool,
    out: &mut Vec<(Vec<u32>, Vec<bool>)>,
) {
    if i == bound.len() {
        if admissible(root, free) {
            out.push((root.clone(), free.clone()));
        }
        return;
    }
    free[i] = true;
    root[i] = 0;
    enumerate_pairs(i + 1, bound, root, free, admissible, out);
    free[i] = false;
    for e in 0..bound[i].max(1) {
        root[i] = e;
        enumerate_pairs(i + 1, bound, root, free, admissible, out);
    }
    root[i] = 0;
}

/// One piece of a quasi-degree arrangement: the affine subspace
/// `shift + span(columns)`. Canonical form: `columns` is closed (every
/// column inside the rational span is listed) and `shift` is the
/// canonical representative modulo the span lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QdegPiece {
    shift: Vec<BigInt>,
    span_columns: Vec<usize>,
}

impl QdegPiece {
    pub fn shift(&self) -> &[BigInt] {
        &self.shift
    }

    /// Zero-based column indices spanning the piece, ascending.
    pub fn span_columns(&self) -> &[usize] {
        &self.span_columns
    }
}

/// A finite union of affine subspace translates in degree space,
/// canonicalized: no piece lies inside another, pieces sorted by
/// (span size, columns, shift).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QdegArrangement {
    ambient: usize,
    pieces: Vec<QdegPiece>,
}

impl QdegArrangement {
    /// Ambient degree-space dimension `d`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[QdegPiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Builds an arrangement from raw (shift, span-columns) pieces,
    /// canonicalizing against `m`. Exposed for tests and callers that
    /// assemble arrangements directly.
    pub fn from_pieces(m: &IntMatrix, raw: Vec<(Vec<BigInt>, Vec<usize>)>) -> QdegArrangement {
        canonicalize_pieces(m, raw)
    }

    /// Membership of a rational point: the first piece (in canonical
    /// order) whose translate contains `v`, if any. Requires the
    /// defining matrix to resolve spans.
    pub fn member<'a>(&'a self, m: &IntMatrix, v: &[BigRational]) -> Option<&'a QdegPiece> {
        assert_eq!(v.len(), self.ambient, "point dimension mismatch");
        self.pieces.iter().find(|p| {
            let diff: Vec<BigRational> =
                v.iter().zip(&p.shift).map(|(a, b)| a - BigRational::from(b.clone())).collect();
            in_column_span(m, &p.span_columns, &diff)
        })
    }
}

/// Whether a rational vector lies in the rational span of the selected
/// columns.
fn in_column_span(m: &IntMatrix, columns: &[usize], v: &[BigRational]) -> bool {
    let sub = m.select_cols(columns);
    matches!(rational_solve(&sub, v), Ok(Some(_)))
}

/// Canonicalizes raw pieces: close each column set under the rational
/// span, reduce each shift modulo the span lattice, drop duplicates and
/// absorbed pieces, and sort.
fn canonicalize_pieces(m: &IntMatrix, raw: Vec<(Vec<BigInt>, Vec<usize>)>) -> QdegArrangement {
    let d = m.rows();
    let mut pieces: Vec<QdegPiece> = Vec::new();
    for (shift, cols) in raw {
        assert_eq!(shift.len(), d, "piece shift dimension mismatch");
        // Span closure: list every column inside the rational span.
        let closed: Vec<usize> = (0..m.cols())
            .filter(|&j| {
                cols.contains(&j) || {
                    let col: Vec<BigRational> =
                        m.col(j).into_iter().map(BigRational::from).collect();
                    in_column_span(m, &cols, &col)
                }
            })
            .collect();
        // Canonical shift: reduce modulo the saturated span lattice.
        let sat = saturate_with_diagonal(&m.select_cols(&closed));
        let shift = sat.saturation.reduce_mod(&shift);
        pieces.push(QdegPiece { shift, span_columns: closed });
    }
    pieces.sort();
    pieces.dedup();

    // Absorb a piece into any strictly larger piece whose span contains
    // it and whose translate matches.
    let absorbed: Vec<bool> = pieces
        .iter()
        .map(|p| {
            pieces.iter().any(|q| {
                p != q
                    && p.span_columns.iter().all(|j| q.span_columns.contains(j))
                    && {
                        let diff: Vec<BigRational> = p
                            .shift
                            .iter()
                            .zip(&q.shift)
                            .map(|(a, b)| BigRational::from(a - b))
                            .collect();
                        in_column_span(m, &q.span_columns, &diff)
                    }
            })
        })
        .collect();
    let mut pieces: Vec<QdegPiece> = pieces
        .into_iter()
        .zip(absorbed)
        .filter(|(_, dead)| !dead)
        .map(|(p, _)| p)
        .collect();
    pieces.sort_by(|a, b| {
        (a.span_columns.len(), &a.span_columns, &a.shift)
            .cmp(&(b.span_columns.len(), &b.span_columns, &b.shift))
    });
    QdegArrangement { ambient: d, pieces }
}

/// The quasi-degree arrangement of `S_A / <d^tau>`, where `d^tau` is the
/// product of the variables in `tau`. Empty `tau` gives the zero module
/// and the empty arrangement. The result is canonical and independent
/// of `order`.
pub fn qdeg_quotient(g: &GkzMatrix, tau: &[usize], order: &TermOrder) -> QdegArrangement {
    assert_eq!(order.nvars(), g.nvars(), "order arity must match column count");
    let mut tau: Vec<usize> = tau.to_vec();
    tau.sort_unstable();
    tau.dedup();
    for &j in &tau {
        assert!(j < g.nvars(), "tau index {j} out of range");
    }
    if tau.is_empty() {
        return QdegArrangement { ambient: g.dim(), pieces: Vec::new() };
    }
    if tau.len() == 1 && matches!(order.kind(), TermOrderKind::GrevLex) {
        return g.qdeg_singleton(tau[0]).clone();
    }
    qdeg_direct(g, &tau, order)
}

/// Uncached quasi-degree computation for sorted, deduplicated `tau`.
pub(crate) fn qdeg_direct(g: &GkzMatrix, tau: &[usize], order: &TermOrder) -> QdegArrangement {
    let n = g.nvars();
    let mut gens: Vec<Binomial> = g.toric_ideal(order).elements().to_vec();
    let tau_monomial =
        Monomial::new((0..n).map(|j| if tau.contains(&j) { 1 } else { 0 }).collect());
    gens.push(Binomial::monomial(tau_monomial));
    let gb = buchberger(&gens, order, SPairDiscipline::MinDegree);
    let mingens = gb.initial_ideal();
    let pairs = standard_pairs(n, &mingens);
    let raw: Vec<(Vec<BigInt>, Vec<usize>)> = pairs
        .iter()
        .map(|p| {
            (DEGREE_CONVENTION.derivative_degree(g.matrix(), p.root()), p.free().to_vec())
        })
        .collect();
    canonicalize_pieces(g.matrix(), raw)
}

/// A witness `x` in `N^n` with `A.x = u`, or `None` when `u` is outside
/// the semigroup. The positivity witness of the validated matrix bounds
/// every exponent, so the depth-first search terminates; trying small
/// exponents first makes the witness the lexicographically least one.
pub fn semigroup_member(g: &GkzMatrix, u: &[BigInt]) -> Option<Vec<u64>> {
    assert_eq!(u.len(), g.dim(), "degree dimension mismatch");
    let m = g.matrix();
    let h = g.positive_witness();
    let weight = |v: &[BigInt]| -> BigInt { v.iter().zip(h).map(|(a, b)| a * b).sum() };
    let col_weights: Vec<BigInt> = (0..g.nvars()).map(|j| weight(&m.col(j))).collect();

    fn search(
        m: &IntMatrix,
        col_weights: &[BigInt],
        weight: &impl Fn(&[BigInt]) -> BigInt,
        j: usize,
        remaining: &mut Vec<BigInt>,
        acc: &mut Vec<u64>,
    ) -> bool {
        let w = weight(remaining);
        if w.is_negative() {
            return false;
        }
        if j == m.cols() {
            return remaining.iter().all(Zero::is_zero);
        }
        use num_traits::ToPrimitive;
        let max = (&w / &col_weights[j]).to_u64().expect("semigroup search bound overflow");
        for e in 0..=max {
            if e > 0 {
                for i in 0..m.rows() {
                    let v = m.get(i, j).clone();
                    remaining[i] -= v;
                }
            }
            acc.push(e);
            if search(m, col_weights, weight, j + 1, remaining, acc) {
                return true;
            }
            acc.pop();
        }
        for i in 0..m.rows() {
            let v = m.get(i, j) * BigInt::from(max);
            remaining[i] += v;
        }
        false
    }

    let mut remaining = u.to_vec();
    let mut acc = Vec::new();
    let found = search(m, &col_weights, &weight, 0, &mut remaining, &mut acc);
    if found {
        Some(acc)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn running_example() -> GkzMatrix {
        GkzMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]])).unwrap()
    }

    fn pair_view(pairs: &[StandardPair]) -> Vec<(Vec<u32>, Vec<usize>)> {
        pairs.iter().map(|p| (p.root().exps().to_vec(), p.free().to_vec())).collect()
    }

    fn piece_view(arr: &QdegArrangement) -> Vec<(Vec<i64>, Vec<usize>)> {
        arr.pieces()
            .iter()
            .map(|p| {
                (
                    p.shift().iter().map(|x| i64::try_from(x).unwrap()).collect(),
                    p.span_columns().to_vec(),
                )
            })
            .collect()
    }

    #[test]
    fn zero_ideal_has_the_single_all_free_pair() {
        let pairs = standard_pairs(3, &[]);
        assert_eq!(pair_view(&pairs), vec![(vec![0, 0, 0], vec![0, 1, 2])]);
    }

    #[test]
    fn one_squarefree_generator_splits_into_two_pairs() {
        let pairs = standard_pairs(3, &[mono(&[1, 0, 1])]);
        assert_eq!(
            pair_view(&pairs),
            vec![(vec![0, 0, 0], vec![0, 1]), (vec![0, 0, 0], vec![1, 2])],
        );
    }

    #[test]
    fn one_variable_generator_frees_the_rest() {
        let pairs = standard_pairs(2, &[mono(&[1, 0])]);
        assert_eq!(pair_view(&pairs), vec![(vec![0, 0], vec![1])]);
    }

    #[test]
    fn unit_ideal_has_no_standard_pairs() {
        assert!(standard_pairs(2, &[Monomial::one(2)]).is_empty());
    }

    #[test]
    fn cover_is_exact_on_the_box() {
        let gens = vec![mono(&[2, 0, 1]), mono(&[0, 3, 0])];
        let pairs = standard_pairs(3, &gens);
        check_cover(3, &gens, &pairs);
    }

    /// Shared oracle: inside the bounding box, a monomial avoids the
    /// ideal iff some pair covers it.
    fn check_cover(nvars: usize, gens: &[Monomial], pairs: &[StandardPair]) {
        let b: u32 = 1 + gens.iter().flat_map(|g| g.exps().iter().copied()).max().unwrap_or(0);
        let mut point = vec![0u32; nvars];
        loop {
            let m = Monomial::new(point.clone());
            let in_ideal = gens.iter().any(|g| g.divides(&m));
            let covered = pairs.iter().any(|p| {
                (0..nvars).all(|i| {
                    p.free().contains(&i) || p.root().exp(i) == m.exp(i)
                })
            });
            assert_eq!(!in_ideal, covered, "cover mismatch at {m}");
            let mut i = 0;
            loop {
                if i == nvars {
                    return;
                }
                point[i] += 1;
                if point[i] <= b {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn qdeg_of_the_first_variable_quotient_is_one_axis() {
        let g = running_example();
        let arr = qdeg_quotient(&g, &[0], &TermOrder::grevlex(3));
        assert_eq!(piece_view(&arr), vec![(vec![0, 0], vec![2])]);
    }

    #[test]
    fn qdeg_of_the_middle_variable_quotient_is_both_axes() {
        let g = running_example();
        let arr = qdeg_quotient(&g, &[1], &TermOrder::grevlex(3));
        assert_eq!(piece_view(&arr), vec![(vec![0, 0], vec![0]), (vec![0, 0], vec![2])]);
    }

    #[test]
    fn qdeg_of_the_numerical_semigroup_quotient_is_two_points() {
        let g = GkzMatrix::new(IntMatrix::from_rows(&[vec![2, 3]])).unwrap();
        let arr = qdeg_quotient(&g, &[0], &TermOrder::grevlex(2));
        assert_eq!(piece_view(&arr), vec![(vec![-3], vec![]), (vec![0], vec![])]);
    }

    #[test]
    fn qdeg_of_the_empty_tau_is_empty() {
        let g = running_example();
        let arr = qdeg_quotient(&g, &[], &TermOrder::grevlex(3));
        assert!(arr.is_empty());
    }

    #[test]
    fn qdeg_is_identical_under_lex_and_grevlex() {
        let g = running_example();
        for j in 0..3 {
            let a = qdeg_quotient(&g, &[j], &TermOrder::grevlex(3));
            let b = qdeg_quotient(&g, &[j], &TermOrder::lex(3));
            assert_eq!(a, b, "tau = {{{j}}}");
        }
        let a = qdeg_quotient(&g, &[0, 1, 2], &TermOrder::grevlex(3));
        let b = qdeg_quotient(&g, &[0, 1, 2], &TermOrder::lex(3));
        assert_eq!(a, b);
    }

    #[test]
    fn full_tau_quotient_of_the_running_example() {
        // in(I_A + <d1*d2*d3>) = <d1*d3, d2^2>: four pairs, four pieces.
        // Shifts are canonical mod the span lattice: (-1,-1) + C.a_1
        // reduces to (0,-1) + C.a_1, and symmetrically for a_3.
        let g = running_example();
        let arr = qdeg_quotient(&g, &[0, 1, 2], &TermOrder::grevlex(3));
        assert_eq!(
            piece_view(&arr),
            vec![
                (vec![0, -1], vec![0]),
                (vec![0, 0], vec![0]),
                (vec![-1, 0], vec![2]),
                (vec![0, 0], vec![2]),
            ],
        );
    }

    #[test]
    fn membership_sees_points_on_and_off_pieces() {
        let g = running_example();
        let arr = qdeg_quotient(&g, &[1], &TermOrder::grevlex(3));
        let q = |a: (i64, i64)| {
            vec![
                BigRational::from(BigInt::from(a.0)),
                BigRational::from(BigInt::from(a.1)),
            ]
        };
        let m = g.matrix();
        // (5, 0) sits on the a_1-axis piece.
        let hit = arr.member(m, &q((5, 0))).unwrap();
        assert_eq!(hit.span_columns(), &[0]);
        // (0, 7/2) sits on the a_3-axis piece.
        let v = vec![
            BigRational::from(BigInt::zero()),
            BigRational::new(BigInt::from(7), BigInt::from(2)),
        ];
        assert_eq!(arr.member(m, &v).unwrap().span_columns(), &[2]);
        assert!(arr.member(m, &q((1, 2))).is_none());
        // The closure is the full line, so the positive side of the
        // a_1-axis is a member too.
        assert_eq!(arr.member(m, &q((1, 0))).unwrap().span_columns(), &[0]);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert!(arr.member(m, &[half.clone(), half]).is_none());
    }

    #[test]
    fn shifts_are_reduced_to_canonical_representatives() {
        // Shifts differing by a span vector collapse to one piece.
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        let arr = QdegArrangement::from_pieces(
            &m,
            vec![
                (vec![BigInt::from(3), BigInt::from(4)], vec![0]),
                (vec![BigInt::zero(), BigInt::from(4)], vec![0]),
            ],
        );
        assert_eq!(arr.pieces().len(), 1);
        assert_eq!(arr.pieces()[0].shift(), &[BigInt::zero(), BigInt::from(4)]);
    }

    #[test]
    fn absorbed_pieces_disappear() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        let arr = QdegArrangement::from_pieces(
            &m,
            vec![
                (vec![BigInt::from(2), BigInt::zero()], vec![]),
                (vec![BigInt::zero(), BigInt::zero()], vec![0]),
            ],
        );
        // The point (2,0) lies on the axis piece and is absorbed.
        assert_eq!(arr.pieces().len(), 1);
        assert_eq!(arr.pieces()[0].span_columns(), &[0]);
    }

    #[test]
    fn span_closure_lists_collinear_columns() {
        // Columns 0 and 2 are collinear; a piece spanned by one lists both.
        let m = IntMatrix::from_rows(&[vec![1, 0, 2], vec![0, 1, 0]]);
        let arr = QdegArrangement::from_pieces(
            &m,
            vec![(vec![BigInt::zero(), BigInt::zero()], vec![0])],
        );
        assert_eq!(arr.pieces()[0].span_columns(), &[0, 2]);
    }

    #[test]
    fn semigroup_membership_finds_lexicographically_least_witnesses() {
        let g = running_example();
        let at = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        assert_eq!(semigroup_member(&g, &at(1, 1)), Some(vec![0, 1, 0]));
        assert_eq!(semigroup_member(&g, &at(0, 0)), Some(vec![0, 0, 0]));
        assert_eq!(semigroup_member(&g, &at(-1, 0)), None);
        assert_eq!(semigroup_member(&g, &at(3, 1)), Some(vec![2, 1, 0]));
        assert_eq!(semigroup_member(&g, &at(0, 3)), Some(vec![0, 0, 3]));
    }

    #[test]
    fn numerical_semigroup_gaps_are_rejected() {
        let g = GkzMatrix::new(IntMatrix::from_rows(&[vec![2, 3]])).unwrap();
        assert_eq!(semigroup_member(&g, &[BigInt::one()]), None);
        assert_eq!(semigroup_member(&g, &[BigInt::from(7)]), Some(vec![2, 1]));
    }

    #[test]
    fn degree_convention_is_minus_a_u() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let deg = DEGREE_CONVENTION.derivative_degree(&m, &mono(&[1, 0, 1]));
        assert_eq!(deg, vec![BigInt::from(-1), BigInt::from(-1)]);
        assert_eq!(
            DEGREE_CONVENTION.variable_degree(&m, 1),
            vec![BigInt::one(), BigInt::one()],
        );
    }
}
