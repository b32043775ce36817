//! Parameter criteria: resonance, strong resonance, contiguity, and
//! minimal escape shifts.
//!
//! Everything here reduces to exact rational linear algebra against the
//! quasi-degree arrangements of [`crate::stdpairs`]:
//!
//! * `beta` is *strongly resonant via column j* when `-beta` lies in
//!   `k.a_j + qdeg(S_A/<d_j>)` for some integer level `k >= 1`; per
//!   arrangement piece the level is either free (the column lies in the
//!   piece span) or pinned by a linear solve;
//! * `beta` is *resonant* when it lies in `span(F) + Z^d` for a proper
//!   face `F`, decided through integrality of `w.beta` over a saturated
//!   basis `w` of the left kernel of the face columns;
//! * the minimal escape shifts ask for the least `k` making `beta`
//!   plus `k` times a column sum clear the relevant criterion; each
//!   piece contributes an exactly-described set of bad `k` (empty, one
//!   value, an arithmetic progression, or everything), and the least
//!   free `k` is read off with a certified stopping bound — no
//!   open-ended scanning.

use crate::cone::{Face, GkzMatrix};
use crate::exactlat::{kernel_lattice, rational_solve, IntMatrix};
use crate::polyring::TermOrder;
use crate::stdpairs::{qdeg_quotient, QdegPiece};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// Errors surfaced by the resonance layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResonanceError {
    /// A column index outside `0..n`.
    #[error("column index {j} out of range for {n} columns")]
    IndexOutOfRange { j: usize, n: usize },
    /// A feasible arrangement piece whose span makes the criterion hold
    /// for infinitely many levels at once; finite enumeration is
    /// impossible and the piece is reported instead.
    #[error("infinitely many levels are obstructed by the piece {piece:?}")]
    InfiniteFamily { piece: QdegPiece },
}

/// A certificate of strong resonance via one column: the level `k >= 1`
/// and the arrangement piece containing `-beta - k.a_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SResWitness {
    /// Zero-based column index.
    pub j: usize,
    /// The level, at least one.
    pub k: BigInt,
    /// The witnessing quasi-degree piece.
    pub piece: QdegPiece,
}

/// Aggregated parameter verdicts for one `beta`.
#[derive(Debug, Clone)]
pub struct ResonanceReport {
    pub beta: Vec<BigRational>,
    /// Per-column strong-resonance results, index = column.
    pub per_column: Vec<Option<SResWitness>>,
    /// Union over columns.
    pub strongly_resonant: bool,
    /// First proper face witnessing resonance, in face order.
    pub resonant_face: Option<Face>,
    pub resonant: bool,
    /// "isomorphic" exactly when no column is strongly resonant,
    /// otherwise "not isomorphic; witnesses j = .. (k=..), ..".
    pub isomorphism_verdict: String,
    /// Least `k` with `beta + k.(column sum)` not strongly resonant.
    pub minimal_shift_full: u64,
    /// Requested partial shifts, one entry per input subset.
    pub partial_shifts: Vec<(Vec<usize>, Result<u64, ResonanceError>)>,
}

/// How the level variable behaves on one arrangement piece.
enum LevelOutcome {
    /// The piece never meets the shifted line.
    Infeasible,
    /// The column direction lies in the piece span: every level works.
    AnyLevel,
    /// Exactly one rational level solves the membership.
    Unique(BigRational),
}

/// Solves `-beta - k.a_j - shift in span(piece)` for the level `k`.
fn piece_level(m: &IntMatrix, piece: &QdegPiece, beta: &[BigRational], j: usize) -> LevelOutcome {
    let d = m.rows();
    let a_j = IntMatrix::new(d, 1, m.col(j));
    let system = a_j.hstack(&m.select_cols(piece.span_columns()));
    let target: Vec<BigRational> = (0..d)
        .map(|i| -&beta[i] - BigRational::from(piece.shift()[i].clone()))
        .collect();
    match rational_solve(&system, &target).expect("shapes agree") {
        None => LevelOutcome::Infeasible,
        Some(sol) => {
            if sol.kernel.iter().any(|v| !v[0].is_zero()) {
                LevelOutcome::AnyLevel
            } else {
                LevelOutcome::Unique(sol.particular[0].clone())
            }
        }
    }
}

fn check_column(g: &GkzMatrix, j: usize) -> Result<(), ResonanceError> {
    if j >= g.nvars() {
        return Err(ResonanceError::IndexOutOfRange { j, n: g.nvars() });
    }
    Ok(())
}

fn check_beta(g: &GkzMatrix, beta: &[BigRational]) {
    assert_eq!(beta.len(), g.dim(), "parameter dimension must match row count");
}

/// Strong resonance via column `j`: `Some(witness)` iff `-beta` lies in
/// `k.a_j + qdeg(S_A/<d_j>)` for some integer `k >= 1`. The witness
/// carries the least such `k` (first piece in canonical order on ties).
pub fn sres_j(
    g: &GkzMatrix,
    beta: &[BigRational],
    j: usize,
) -> Result<Option<SResWitness>, ResonanceError> {
    check_column(g, j)?;
    check_beta(g, beta);
    let arr = qdeg_quotient(g, &[j], &TermOrder::grevlex(g.nvars()));
    let mut best: Option<SResWitness> = None;
    for piece in arr.pieces() {
        let k = match piece_level(g.matrix(), piece, beta, j) {
            LevelOutcome::Infeasible => continue,
            LevelOutcome::AnyLevel => BigInt::one(),
            LevelOutcome::Unique(k) => {
                if !k.is_integer() || k.to_integer() < BigInt::one() {
                    continue;
                }
                k.to_integer()
            }
        };
        if best.as_ref().map_or(true, |w| k < w.k) {
            best = Some(SResWitness { j, k, piece: piece.clone() });
        }
    }
    Ok(best)
}

/// Per-column strong resonance; the union verdict is `any(is_some)`.
pub fn sres(g: &GkzMatrix, beta: &[BigRational]) -> Vec<Option<SResWitness>> {
    (0..g.nvars())
        .map(|j| sres_j(g, beta, j).expect("column index in range"))
        .collect()
}

/// Resonance: the first proper face `F` (in face order) with
/// `beta in span(F) + Z^d`, decided by integrality of `w.beta` for a
/// saturated basis `w` of the integer left kernel of the face columns.
pub fn is_resonant(g: &GkzMatrix, beta: &[BigRational]) -> Option<Face> {
    check_beta(g, beta);
    for face in g.proper_faces() {
        let sub = g.matrix().select_cols(face.columns());
        let left_kernel = kernel_lattice(&sub.transpose());
        let all_integral = (0..left_kernel.rank()).all(|i| {
            let w = left_kernel.vector(i);
            let dot: BigRational =
                w.iter().zip(beta).map(|(a, b)| BigRational::from(a.clone()) * b).sum();
            dot.is_integer()
        });
        if all_integral {
            return Some(face.clone());
        }
    }
    None
}

/// Whether right multiplication by `d_j` is a quasi-isomorphism from the
/// `beta` system to the `beta + a_j` system: true iff `-beta - a_j` is
/// outside `qdeg(S_A/<d_j>)`.
pub fn contiguity_shift_qiso(
    g: &GkzMatrix,
    beta: &[BigRational],
    j: usize,
) -> Result<bool, ResonanceError> {
    check_column(g, j)?;
    check_beta(g, beta);
    let arr = qdeg_quotient(g, &[j], &TermOrder::grevlex(g.nvars()));
    let point: Vec<BigRational> = (0..g.dim())
        .map(|i| -&beta[i] - BigRational::from(g.matrix().get(i, j).clone()))
        .collect();
    Ok(arr.member(g.matrix(), &point).is_none())
}

/// All cokernel levels of the `d_j` contiguity map: the sorted set of
/// `k >= 0` with `-beta` in `(k+1).a_j + qdeg(S_A/<d_j>)`. Errors with
/// the offending piece when a feasible piece contains `a_j` in its span
/// (then every level is obstructed at once).
pub fn cokernel_levels(
    g: &GkzMatrix,
    beta: &[BigRational],
    j: usize,
) -> Result<Vec<BigInt>, ResonanceError> {
    check_column(g, j)?;
    check_beta(g, beta);
    let arr = qdeg_quotient(g, &[j], &TermOrder::grevlex(g.nvars()));
    let mut levels: BTreeSet<BigInt> = BTreeSet::new();
    for piece in arr.pieces() {
        match piece_level(g.matrix(), piece, beta, j) {
            LevelOutcome::Infeasible => {}
            LevelOutcome::AnyLevel => {
                return Err(ResonanceError::InfiniteFamily { piece: piece.clone() });
            }
            LevelOutcome::Unique(level) => {
                if level.is_integer() && level.to_integer() >= BigInt::one() {
                    levels.insert(level.to_integer() - BigInt::one());
                }
            }
        }
    }
    Ok(levels.into_iter().collect())
}

/// The set of shift values `k` obstructed by one piece, described
/// exactly.
enum BadShifts {
    Empty,
    /// Finitely many obstructed shifts, sorted.
    Finite(Vec<BigInt>),
    /// All `k >= min_k` with `k` congruent to a residue mod `modulus`.
    Progression { modulus: BigInt, residues: Vec<(BigInt, BigInt)> },
    All,
}

impl BadShifts {
    fn contains(&self, k: &BigInt) -> bool {
        match self {
            BadShifts::Empty => false,
            BadShifts::All => true,
            BadShifts::Finite(v) => v.contains(k),
            BadShifts::Progression { modulus, residues } => residues
                .iter()
                .any(|(r, min_k)| k >= min_k && (k - r).mod_floor(modulus).is_zero()),
        }
    }
}

/// The ratio `r` with `e = r.v`, if `e` is parallel to the nonzero
/// integer vector `v`.
fn parallel_ratio(e: &[BigRational], v: &[BigInt]) -> Option<BigRational> {
    let i = v.iter().position(|x| !x.is_zero()).expect("v nonzero");
    let r = &e[i] / BigRational::from(v[i].clone());
    let fits = e
        .iter()
        .zip(v)
        .all(|(ei, vi)| *ei == &r * BigRational::from(vi.clone()));
    if fits {
        Some(r)
    } else {
        None
    }
}

/// Primitive integer vector parallel to `v` (first nonzero entry made
/// positive) and the integer multiplier carrying it back to `v`.
fn primitive_and_scale(v: &[BigInt]) -> (Vec<BigInt>, BigInt) {
    let prim = crate::exactlat::primitive_vector(v);
    let i = prim.iter().position(|x| !x.is_zero()).expect("v nonzero");
    let scale = &v[i] / &prim[i];
    (prim, scale)
}

/// The exact set of shifts `k >= 0` for which some integer level
/// `k' >= 1` puts `e` on the piece: solves `e = k.p + k'.q` with the
/// stated sign constraints. `e` is the projected target, `p` the
/// projected shift direction, `q` the projected level direction.
fn bad_shifts(e: &[BigRational], p: &[BigInt], q: &[BigInt]) -> BadShifts {
    let p_zero = p.iter().all(Zero::is_zero);
    let q_zero = q.iter().all(Zero::is_zero);
    let e_zero = e.iter().all(Zero::is_zero);
    match (p_zero, q_zero) {
        (true, true) => {
            if e_zero {
                BadShifts::All
            } else {
                BadShifts::Empty
            }
        }
        (true, false) => match parallel_ratio(e, q) {
            Some(level) if level.is_integer() && level.to_integer() >= BigInt::one() => {
                BadShifts::All
            }
            _ => BadShifts::Empty,
        },
        (false, true) => match parallel_ratio(e, p) {
            Some(k) if k.is_integer() && !k.to_integer().is_negative() => {
                BadShifts::Finite(vec![k.to_integer()])
            }
            _ => BadShifts::Empty,
        },
        (false, false) => {
            let (prim, s) = primitive_and_scale(p);
            match parallel_ratio(&to_rationals(q), &prim) {
                None => {
                    // p and q independent: at most one (k, k') pair.
                    let sys = IntMatrix::new(p.len(), 2, {
                        let mut data = Vec::new();
                        for i in 0..p.len() {
                            data.push(p[i].clone());
                            data.push(q[i].clone());
                        }
                        data
                    });
                    match rational_solve(&sys, e).expect("shapes agree") {
                        None => BadShifts::Empty,
                        Some(s) => {
                            let k = &s.particular[0];
                            let level = &s.particular[1];
                            if k.is_integer()
                                && !k.to_integer().is_negative()
                                && level.is_integer()
                                && level.to_integer() >= BigInt::one()
                            {
                                BadShifts::Finite(vec![k.to_integer()])
                            } else {
                                BadShifts::Empty
                            }
                        }
                    }
                }
                Some(t_ratio) => {
                    // p = s.prim, q = t.prim; t is integral because
                    // prim is primitive and q has integer entries.
                    assert!(t_ratio.is_integer(), "primitive ratio must be integral");
                    let t = t_ratio.to_integer();
                    let c = match parallel_ratio(e, &prim) {
                        None => return BadShifts::Empty,
                        Some(c) => c,
                    };
                    // c = k.s + k'.t needs c integral.
                    if !c.is_integer() {
                        return BadShifts::Empty;
                    }
                    let c = c.to_integer();
                    congruence_shifts(&c, &s, &t)
                }
            }
        }
    }
}

fn to_rationals(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from).collect()
}

/// Shifts `k >= 0` admitting an integer `k' >= 1` with `c = k.s + k'.t`
/// (`s`, `t` nonzero). The congruence `k.s = c (mod t)` fixes the
/// residues; the sign pattern of `s`, `t` decides whether the level
/// constraint `k' >= 1` bounds `k` above (finite) or below
/// (progression).
fn congruence_shifts(c: &BigInt, s: &BigInt, t: &BigInt) -> BadShifts {
    let m = t.abs();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut r = BigInt::zero();
    while r < m {
        if (c - &r * s).mod_floor(&m).is_zero() {
            residues.push(r.clone());
        }
        r += 1;
    }
    if residues.is_empty() {
        return BadShifts::Empty;
    }
    // k' = (c - k.s)/t >= 1 <=> k.s.sign(t) <= (c - t).sign(t).
    let bound = BigRational::new(c - t, s.clone());
    let finite_side = (s * t).is_positive();
    if finite_side {
        // k <= bound: enumerate the finitely many valid shifts.
        let upper = bound.floor().to_integer();
        let mut out: Vec<BigInt> = Vec::new();
        for r in &residues {
            let mut k = r.clone();
            while k <= upper {
                out.push(k.clone());
                k += &m;
            }
        }
        if out.is_empty() {
            BadShifts::Empty
        } else {
            out.sort();
            BadShifts::Finite(out)
        }
    } else {
        // k >= bound: an upward progression for each residue.
        let lower = bound.ceil().to_integer().max(BigInt::zero());
        let arms: Vec<(BigInt, BigInt)> = residues
            .into_iter()
            .map(|r| {
                let offset = (&lower - &r).mod_floor(&m);
                let min_k = &lower + ((&m - offset).mod_floor(&m));
                (r, min_k)
            })
            .collect();
        BadShifts::Progression { modulus: m, residues: arms }
    }
}

/// Projected data of one piece: target, shift direction, and level
/// direction expressed in the left-kernel coordinates of the piece span.
fn project_piece(
    g: &GkzMatrix,
    piece: &QdegPiece,
    beta: &[BigRational],
    shift_dir: &[BigInt],
    level_dir: Option<usize>,
) -> (Vec<BigRational>, Vec<BigInt>, Vec<BigInt>) {
    let m = g.matrix();
    let sub = m.select_cols(piece.span_columns());
    let left_kernel = kernel_lattice(&sub.transpose());
    assert!(
        left_kernel.rank() > 0,
        "a quasi-degree piece cannot span all of degree space"
    );
    let mut e = Vec::new();
    let mut p = Vec::new();
    let mut q = Vec::new();
    for i in 0..left_kernel.rank() {
        let w = left_kernel.vector(i);
        let target: BigRational = w
            .iter()
            .zip(0..g.dim())
            .map(|(wi, r)| {
                BigRational::from(wi.clone())
                    * (-&beta[r] - BigRational::from(piece.shift()[r].clone()))
            })
            .sum();
        e.push(target);
        p.push(w.iter().zip(shift_dir).map(|(a, b)| a * b).sum::<BigInt>());
        q.push(match level_dir {
            Some(j) => w.iter().zip(m.col(j)).map(|(a, b)| a * b).sum::<BigInt>(),
            None => BigInt::zero(),
        });
    }
    (e, p, q)
}

/// Sum of all columns (the full shift direction).
fn column_sum(g: &GkzMatrix) -> Vec<BigInt> {
    (0..g.dim())
        .map(|i| (0..g.nvars()).map(|j| g.matrix().get(i, j).clone()).sum())
        .collect()
}

/// Sum of the selected columns.
fn column_subset_sum(g: &GkzMatrix, tau: &[usize]) -> Vec<BigInt> {
    (0..g.dim())
        .map(|i| tau.iter().map(|&j| g.matrix().get(i, j).clone()).sum())
        .collect()
}

/// The least `k >= 0` such that `beta + k.(sum of all columns)` is not
/// strongly resonant. Existence is a theorem (large multiples of the
/// column sum leave every obstruction); the per-piece bad-shift sets
/// certify the stopping bound, and the function panics if they were
/// ever to cover all of `N`, which no valid input can produce.
pub fn minimal_shift_full(g: &GkzMatrix, beta: &[BigRational]) -> u64 {
    check_beta(g, beta);
    let eps = column_sum(g);
    let mut sets: Vec<BadShifts> = Vec::new();
    for j in 0..g.nvars() {
        let arr = qdeg_quotient(g, &[j], &TermOrder::grevlex(g.nvars()));
        for piece in arr.pieces() {
            let (e, p, q) = project_piece(g, piece, beta, &eps, Some(j));
            match bad_shifts(&e, &p, &q) {
                BadShifts::Empty => {}
                BadShifts::All => panic!(
                    "no escape shift exists: piece {piece:?} of column {j} obstructs every k; \
                     this contradicts the escape theorem for pointed inputs"
                ),
                other => sets.push(other),
            }
        }
    }

    // Certified bound: beyond max-finite + max-progression-start + lcm
    // of moduli, coverage of every smaller k would force coverage of
    // all of N.
    let mut bound = BigInt::one();
    let mut lcm = BigInt::one();
    for set in &sets {
        match set {
            BadShifts::Finite(v) => {
                if let Some(max) = v.last() {
                    bound += max.max(&BigInt::zero());
                }
            }
            BadShifts::Progression { modulus, residues } => {
                lcm = lcm.lcm(modulus);
                if let Some(max) = residues.iter().map(|(_, min_k)| min_k).max() {
                    bound += max.max(&BigInt::zero());
                }
            }
            _ => unreachable!("filtered above"),
        }
    }
    bound += lcm;

    let mut k = BigInt::zero();
    while k <= bound {
        if !sets.iter().any(|s| s.contains(&k)) {
            return k.to_u64().expect("escape shift fits in u64");
        }
        k += 1;
    }
    panic!(
        "no escape shift up to the certified bound {bound}; \
         this contradicts the escape theorem for pointed inputs"
    );
}

/// The least `k >= 0` such that for every `m >= 0` the point
/// `-(beta + k.eps_tau) - m.eps_tau` avoids `qdeg(S_A/<d^tau>)`, where
/// `eps_tau` is the sum of the `tau` columns. Equivalently: one more
/// than the largest obstructed value of `s = k + m`, each piece pinning
/// at most one `s`. Errors with the piece when the obstruction is
/// `s`-independent (impossible for valid inputs; surfaced, not hidden).
pub fn minimal_shift_partial(
    g: &GkzMatrix,
    beta: &[BigRational],
    tau: &[usize],
) -> Result<u64, ResonanceError> {
    check_beta(g, beta);
    for &j in tau {
        check_column(g, j)?;
    }
    let mut tau: Vec<usize> = tau.to_vec();
    tau.sort_unstable();
    tau.dedup();
    let arr = qdeg_quotient(g, &tau, &TermOrder::grevlex(g.nvars()));
    let eps = column_subset_sum(g, &tau);
    let mut worst: Option<BigInt> = None;
    for piece in arr.pieces() {
        let (e, p, _) = project_piece(g, piece, beta, &eps, None);
        if p.iter().all(Zero::is_zero) {
            if e.iter().all(Zero::is_zero) {
                return Err(ResonanceError::InfiniteFamily { piece: piece.clone() });
            }
            continue;
        }
        if let Some(s) = parallel_ratio(&e, &p) {
            if s.is_integer() && !s.to_integer().is_negative() {
                let s = s.to_integer();
                if worst.as_ref().map_or(true, |w| s > *w) {
                    worst = Some(s);
                }
            }
        }
    }
    Ok(match worst {
        None => 0,
        Some(s) => (s + BigInt::one()).to_u64().expect("shift fits in u64"),
    })
}

/// Formats the isomorphism verdict from the per-column results.
fn verdict_string(per_column: &[Option<SResWitness>]) -> String {
    let witnesses: Vec<String> = per_column
        .iter()
        .flatten()
        .map(|w| format!("j = {} (k={})", w.j + 1, w.k))
        .collect();
    if witnesses.is_empty() {
        "isomorphic".to_string()
    } else {
        format!("not isomorphic; witnesses {}", witnesses.join(", "))
    }
}

/// Aggregates every parameter criterion for `beta`, with partial shifts
/// for each requested column subset.
pub fn verdict(g: &GkzMatrix, beta: &[BigRational], taus: &[Vec<usize>]) -> ResonanceReport {
    check_beta(g, beta);
    let per_column = sres(g, beta);
    let strongly_resonant = per_column.iter().any(Option::is_some);
    let resonant_face = is_resonant(g, beta);
    let resonant = resonant_face.is_some();
    let isomorphism_verdict = verdict_string(&per_column);
    let minimal = minimal_shift_full(g, beta);
    let partial_shifts = taus
        .iter()
        .map(|tau| (tau.clone(), minimal_shift_partial(g, beta, tau)))
        .collect();
    ResonanceReport {
        beta: beta.to_vec(),
        per_column,
        strongly_resonant,
        resonant_face,
        resonant,
        isomorphism_verdict,
        minimal_shift_full: minimal,
        partial_shifts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_example() -> GkzMatrix {
        GkzMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]])).unwrap()
    }

    fn coprime_row() -> GkzMatrix {
        GkzMatrix::new(IntMatrix::from_rows(&[vec![2, 3]])).unwrap()
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()
    }

    fn qr(pairs: &[(i64, i64)]) -> Vec<BigRational> {
        pairs
            .iter()
            .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect()
    }

    #[test]
    fn strong_resonance_witnesses_of_the_running_example() {
        let g = running_example();
        let beta = q(&[1, -1]);
        assert!(sres_j(&g, &beta, 0).unwrap().is_none());
        let w2 = sres_j(&g, &beta, 1).unwrap().unwrap();
        assert_eq!(w2.k, BigInt::one());
        assert_eq!(w2.piece.span_columns(), &[0]);
        let w3 = sres_j(&g, &beta, 2).unwrap().unwrap();
        assert_eq!(w3.k, BigInt::one());
        assert_eq!(w3.piece.span_columns(), &[0]);
    }

    #[test]
    fn off_arrangement_parameters_are_not_strongly_resonant() {
        let g = running_example();
        for j in 0..3 {
            assert!(sres_j(&g, &q(&[2, 0]), j).unwrap().is_none(), "j = {j}");
            assert!(sres_j(&g, &q(&[5, 5]), j).unwrap().is_none(), "j = {j}");
        }
    }

    #[test]
    fn fractional_parameters_miss_the_point_arrangement() {
        let g = coprime_row();
        let beta = qr(&[(1, 2)]);
        assert!(sres_j(&g, &beta, 0).unwrap().is_none());
        assert!(sres_j(&g, &beta, 1).unwrap().is_none());
    }

    #[test]
    fn index_out_of_range_is_reported() {
        let g = running_example();
        assert_eq!(
            sres_j(&g, &q(&[0, 0]), 3).unwrap_err(),
            ResonanceError::IndexOutOfRange { j: 3, n: 3 },
        );
    }

    #[test]
    fn resonance_witnesses_use_the_first_face_in_order() {
        let g = running_example();
        // Integer parameters are resonant via the origin face already.
        let w = is_resonant(&g, &q(&[1, -1])).unwrap();
        assert_eq!(w.columns(), &[] as &[usize]);
        // (1/2, 2) needs the a_1-axis face.
        let w = is_resonant(&g, &qr(&[(1, 2), (2, 1)])).unwrap();
        assert_eq!(w.columns(), &[0]);
        assert!(is_resonant(&g, &qr(&[(1, 2), (1, 3)])).is_none());
    }

    #[test]
    fn contiguity_quasi_isomorphism_matches_the_level_slice() {
        let g = running_example();
        assert!(!contiguity_shift_qiso(&g, &q(&[1, -1]), 1).unwrap());
        assert!(contiguity_shift_qiso(&g, &q(&[2, 0]), 1).unwrap());
        assert!(contiguity_shift_qiso(&g, &q(&[0, 0]), 0).unwrap());
    }

    #[test]
    fn cokernel_levels_of_the_running_example() {
        let g = running_example();
        let beta = q(&[1, -1]);
        assert_eq!(cokernel_levels(&g, &beta, 1).unwrap(), vec![BigInt::zero()]);
        assert_eq!(cokernel_levels(&g, &beta, 2).unwrap(), vec![BigInt::zero()]);
        for j in 0..3 {
            assert!(cokernel_levels(&g, &q(&[2, 0]), j).unwrap().is_empty());
        }
    }

    #[test]
    fn minimal_full_shifts_of_the_running_example() {
        let g = running_example();
        assert_eq!(minimal_shift_full(&g, &q(&[1, -1])), 1);
        assert_eq!(minimal_shift_full(&g, &q(&[2, 0])), 0);
        assert_eq!(minimal_shift_full(&g, &q(&[-3, -3])), 2);
    }

    #[test]
    fn minimal_partial_shifts_of_the_running_example() {
        let g = running_example();
        let beta = q(&[1, -1]);
        assert_eq!(minimal_shift_partial(&g, &beta, &[1]).unwrap(), 2);
        assert_eq!(minimal_shift_partial(&g, &beta, &[0, 1, 2]).unwrap(), 2);
        assert_eq!(minimal_shift_partial(&g, &beta, &[0]).unwrap(), 0);
        assert_eq!(minimal_shift_partial(&g, &beta, &[]).unwrap(), 0);
    }

    #[test]
    fn verdict_strings_follow_the_witness_list() {
        let g = running_example();
        let r = verdict(&g, &q(&[1, -1]), &[]);
        assert_eq!(
            r.isomorphism_verdict,
            "not isomorphic; witnesses j = 2 (k=1), j = 3 (k=1)",
        );
        assert!(r.strongly_resonant);
        assert!(r.resonant);
        assert_eq!(r.minimal_shift_full, 1);

        let r = verdict(&g, &q(&[2, 0]), &[]);
        assert_eq!(r.isomorphism_verdict, "isomorphic");
        assert!(!r.strongly_resonant);

        let r = verdict(&g, &qr(&[(1, 2), (1, 3)]), &[]);
        assert_eq!(r.isomorphism_verdict, "isomorphic");
        assert!(!r.resonant);
    }

    #[test]
    fn union_verdict_is_the_or_of_columns() {
        let g = running_example();
        for b1 in -3..=3 {
            for b2 in -3..=3 {
                let beta = q(&[b1, b2]);
                let r = verdict(&g, &beta, &[]);
                let any = (0..3).any(|j| sres_j(&g, &beta, j).unwrap().is_some());
                assert_eq!(r.strongly_resonant, any, "beta = ({b1}, {b2})");
                assert_eq!(r.isomorphism_verdict == "isomorphic", !any);
            }
        }
    }

    #[test]
    fn escape_shift_is_minimal_on_a_grid() {
        let g = running_example();
        let eps = column_sum(&g);
        for b1 in -4..=4 {
            for b2 in -4..=4 {
                let beta = q(&[b1, b2]);
                let k = minimal_shift_full(&g, &beta);
                let shifted = |k: u64| -> Vec<BigRational> {
                    beta.iter()
                        .zip(&eps)
                        .map(|(b, e)| b + BigRational::from(e * BigInt::from(k)))
                        .collect()
                };
                assert!(
                    sres(&g, &shifted(k)).iter().all(Option::is_none),
                    "beta = ({b1},{b2}): k_min does not escape"
                );
                if k > 0 {
                    assert!(
                        sres(&g, &shifted(k - 1)).iter().any(Option::is_some),
                        "beta = ({b1},{b2}): k_min - 1 already escapes"
                    );
                }
            }
        }
    }

    #[test]
    fn partial_shift_clears_every_later_slice() {
        // Direct check of the defining property for tau = {2}.
        let g = running_example();
        let beta = q(&[1, -1]);
        let tau = vec![1usize];
        let k = minimal_shift_partial(&g, &beta, &tau).unwrap();
        let arr = qdeg_quotient(&g, &tau, &TermOrder::grevlex(3));
        let eps = column_subset_sum(&g, &tau);
        let point = |s: i64| -> Vec<BigRational> {
            beta.iter()
                .zip(&eps)
                .map(|(b, e)| -b - BigRational::from(e * BigInt::from(s)))
                .collect()
        };
        for s in 0..50i64 {
            let hit = arr.member(g.matrix(), &point(s)).is_some();
            if s >= k as i64 {
                assert!(!hit, "bad slice s = {s} at or beyond k_min = {k}");
            }
        }
        assert!(
            (0..k as i64).any(|s| arr.member(g.matrix(), &point(s)).is_some()),
            "k_min = {k} is not tight"
        );
    }
}
