//! Lattice bases: saturated kernels, saturations with diagonal data,
//! complements inside `Z^d`, and strictly positive functionals on column
//! families.

use super::matrix::IntMatrix;
use super::snf::{hnf, snf};
use super::ExactLatError;
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A basis of a sublattice of `Z^d`, stored as the columns of a `d x r`
/// matrix. The columns are always linearly independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: IntMatrix,
}

impl LatticeBasis {
    /// Wraps a matrix whose columns are the basis vectors. Panics if the
    /// columns are dependent.
    pub fn new(basis: IntMatrix) -> Self {
        let rank = snf(&basis).rank;
        assert_eq!(rank, basis.cols(), "basis columns must be independent");
        LatticeBasis { basis }
    }

    /// Dimension of the ambient `Z^d`.
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// The basis vectors as matrix columns.
    pub fn as_matrix(&self) -> &IntMatrix {
        &self.basis
    }

    /// Basis vector `i`.
    pub fn vector(&self, i: usize) -> Vec<BigInt> {
        self.basis.col(i)
    }

    /// Replaces the basis by the Hermite-canonical basis of the same
    /// lattice. Two `LatticeBasis` values compare equal after
    /// canonicalization iff they generate the same lattice.
    pub fn canonicalize(self) -> Self {
        let r = hnf(&self.basis);
        LatticeBasis { basis: r.h.select_cols(&(0..r.rank).collect::<Vec<_>>()) }
    }

    /// Canonical representative of `v + L`: the Hermite pivot structure is
    /// used to reduce `v` at each pivot row into `[0, pivot)`. Two integer
    /// vectors are congruent modulo the lattice iff they reduce to the same
    /// representative.
    pub fn reduce_mod(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient_dim(), "vector/lattice dimension mismatch");
        let r = hnf(&self.basis);
        let mut out = v.to_vec();
        // Forward order: later columns are zero above their pivot row, so
        // they cannot disturb rows already normalized.
        for c in 0..r.rank {
            let p = r.pivot_rows[c];
            let (q, _) = out[p].div_mod_floor(r.h.get(p, c));
            if q.is_zero() {
                continue;
            }
            for i in 0..out.len() {
                out[i] = &out[i] - &q * r.h.get(i, c);
            }
        }
        out
    }

    /// Whether the integer vector `v` lies in the lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce_mod(v).iter().all(Zero::is_zero)
    }
}

/// Saturated basis of the integer kernel `{x : Mx = 0}`. The lattice it
/// spans is `ker(M)` as a subgroup of `Z^n`, not a finite-index sublattice:
/// the last `n - rank` columns of the Smith transform `V` form a basis and
/// extend to a basis of `Z^n`.
pub fn kernel_lattice(m: &IntMatrix) -> LatticeBasis {
    let s = snf(m);
    let keep: Vec<usize> = (s.rank..m.cols()).collect();
    LatticeBasis::new(s.v.select_cols(&keep)).canonicalize()
}

/// Saturation of the column lattice of `F` inside `Z^d`, with diagonal
/// comparison data.
///
/// Writing `U F V = D` in Smith form with divisors `k_1 | ... | k_r`, the
/// first `r` columns `b_i` of `U^{-1}` form a basis of the saturation
/// `(QF) ∩ Z^d`, and the column lattice `ZF` itself is generated by the
/// stretched vectors `k_i * b_i`. The index of `ZF` in its saturation is
/// the product of the `k_i`.
#[derive(Clone, Debug)]
pub struct DiagonalSaturation {
    /// Basis of the saturated lattice `(Q-span of the columns) ∩ Z^d`.
    pub saturation: LatticeBasis,
    /// Diagonal divisors: `saturation` basis vector `i` scaled by `k[i]`
    /// generates the original column lattice.
    pub k: Vec<BigInt>,
    /// Index of the column lattice inside its saturation.
    pub index: BigInt,
}

/// Computes the saturation of the column lattice of `f` together with the
/// diagonal divisors relating it to the original lattice.
///
/// When all divisors are 1 the two lattices agree and the basis is
/// Hermite-canonicalized; otherwise the Smith-aligned basis is kept so the
/// divisor `k[i]` stays attached to basis vector `i`.
pub fn saturate_with_diagonal(f: &IntMatrix) -> DiagonalSaturation {
    let s = snf(f);
    let keep: Vec<usize> = (0..s.rank).collect();
    let basis = LatticeBasis::new(s.u_inv.select_cols(&keep));
    let k = s.divisors();
    let index: BigInt = k.iter().product();
    let saturation = if index.is_one() { basis.canonicalize() } else { basis };
    DiagonalSaturation { saturation, k, index }
}

/// A direct complement of a saturated lattice: `Z^d = L ⊕ C`.
///
/// Fails with `NotSaturated` when some elementary divisor of the basis
/// exceeds 1, because then no complement exists.
pub fn split_complement(l: &LatticeBasis) -> Result<LatticeBasis, ExactLatError> {
    let s = snf(l.as_matrix());
    let divisors = s.divisors();
    if divisors.iter().any(|d| !d.is_one()) {
        return Err(ExactLatError::NotSaturated { divisors });
    }
    let keep: Vec<usize> = (s.rank..l.ambient_dim()).collect();
    Ok(LatticeBasis::new(s.u_inv.select_cols(&keep)).canonicalize())
}

/// Divides an integer vector by the gcd of its entries (zero vector is
/// returned unchanged).
pub fn primitive_vector(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Searches for an integer functional `h` with `h . a_j > 0` for every
/// column `a_j` of `m`; `None` when no such functional exists, i.e. when
/// the positive hull of the columns is not a pointed cone (or some column
/// is zero).
///
/// When the columns span all of `Q^d`, candidate normals are read off the
/// rank-(d-1) column subsets: those are the only possible facet normals
/// of the hull, a signed candidate is kept when all columns lie on its
/// nonnegative side, and the sum of all kept candidates lands in the
/// relative interior of the dual cone. That sum is strictly positive on
/// every column exactly when the hull is pointed, so the final check is
/// both the feasibility test and the witness. Lower-dimensional column
/// families are first rewritten in coordinates on their saturated span,
/// solved there, and the functional is pulled back through an integer
/// left inverse of the span basis.
pub fn positive_functional(m: &IntMatrix) -> Option<Vec<BigInt>> {
    let d = m.rows();
    let n = m.cols();
    if n == 0 {
        // Vacuous: no columns to be positive on.
        return Some(vec![BigInt::one(); d]);
    }
    let rank = snf(m).rank;
    if rank < d {
        // Express the columns on a basis of their saturated span. The
        // coordinates are integral because each column lies in the span
        // lattice.
        let b = saturate_with_diagonal(m).saturation;
        let coords = span_coordinates(&b, m);
        let h_inner = positive_functional(&coords)?;
        // Left inverse P of the basis matrix: with U B V = [I; 0] in
        // Smith form, P = V * (first r rows of U) satisfies P B = I.
        let s = snf(b.as_matrix());
        let mut p = IntMatrix::zero(b.rank(), d);
        for i in 0..b.rank() {
            for j in 0..d {
                let mut acc = BigInt::zero();
                for k in 0..b.rank() {
                    acc += s.v.get(i, k) * s.u.get(k, j);
                }
                p.set(i, j, acc);
            }
        }
        let h = p.transpose().mul_vec(&h_inner);
        return Some(primitive_vector(&h));
    }

    let side = |h: &[BigInt], j: usize| -> BigInt {
        (0..d).map(|i| &h[i] * m.get(i, j)).sum()
    };
    let mut sum = vec![BigInt::zero(); d];
    let mut seen: std::collections::BTreeSet<Vec<BigInt>> = Default::default();
    for subset in (0..n).combinations(d - 1) {
        let sub = m.select_cols(&subset);
        let left_kernel = kernel_lattice(&sub.transpose());
        if left_kernel.rank() != 1 {
            continue;
        }
        let mut h = left_kernel.vector(0);
        let mut pos = true;
        let mut neg = true;
        for j in 0..n {
            let s = side(&h, j);
            if s.is_negative() {
                pos = false;
            }
            if s.is_positive() {
                neg = false;
            }
        }
        if !pos && !neg {
            continue;
        }
        if neg && !pos {
            for x in &mut h {
                *x = -&*x;
            }
        }
        if !seen.insert(h.clone()) {
            continue;
        }
        for i in 0..d {
            sum[i] += &h[i];
        }
    }
    if (0..n).all(|j| side(&sum, j).is_positive()) {
        Some(primitive_vector(&sum))
    } else {
        None
    }
}

/// Coordinates of the columns of `m` on the lattice basis `b`; panics if
/// a column is outside the spanned lattice.
fn span_coordinates(b: &LatticeBasis, m: &IntMatrix) -> IntMatrix {
    use super::solve::{rational_solve, to_rational};
    let mut out = IntMatrix::zero(b.rank(), m.cols());
    for j in 0..m.cols() {
        let rhs = to_rational(&m.col(j));
        let sol = rational_solve(b.as_matrix(), &rhs)
            .expect("dimension match")
            .expect("column lies in its own span");
        for i in 0..b.rank() {
            assert!(sol.particular[i].is_integer(), "column outside span lattice");
            out.set(i, j, sol.particular[i].to_integer());
        }
    }
    out
}
