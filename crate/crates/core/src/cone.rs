//! The validated input matrix and the face lattice of its cone.
//!
//! A usable input is an integer `d x n` matrix whose columns are
//! nonzero, generate `Z^d` as a lattice, and span a pointed cone.
//! [`GkzMatrix::new`] checks the three conditions in that order and
//! precomputes the full face lattice of the cone, each face carried as
//! the set of column indices lying on it together with a primitive
//! supporting normal (the zero vector for the cone itself).
//!
//! Faces of a cone spanned by finitely many vectors are themselves
//! spanned by the columns they contain, so a face is faithfully
//! represented by its column set. Facets are found through their
//! normals: every facet normal spans the kernel of some `(d-1)`-subset
//! of columns, so enumerating those kernels, keeping the one-sided ones,
//! and reading off their vanishing sets yields exactly the facets.
//! Every face is an intersection of facets, so closing the facet column
//! sets under intersection completes the lattice.

use crate::exactlat::{
    kernel_lattice, positive_functional, primitive_vector, rational_rank, rational_solve, snf,
    IntMatrix,
};
use crate::polyring::{toric_ideal_of_matrix, GroebnerBasis, TermOrder, TermOrderKind};
use crate::stdpairs::QdegArrangement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::sync::OnceLock;
use thiserror::Error;

/// Why a matrix is not a usable input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    /// Column `index` (zero-based) is the zero vector.
    #[error("column {index} is zero")]
    ZeroColumn { index: usize },
    /// The columns do not generate `Z^d`; carries the elementary
    /// divisors of the column lattice, padded with zeros when the rank
    /// falls short of `d`.
    #[error("columns do not generate the full lattice (elementary divisors {divisors:?})")]
    NotFullLattice { divisors: Vec<BigInt> },
    /// The cone contains a line; carries a primitive vector on one.
    #[error("cone is not pointed (contains the line through {line:?})")]
    NotPointed { line: Vec<BigInt> },
}

/// One face of the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    columns: Vec<usize>,
    dim: usize,
    normal: Vec<BigInt>,
}

impl Face {
    /// Zero-based indices of the columns on the face, ascending.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Dimension of the face: the rank of its columns.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// A primitive integer functional vanishing exactly on the face and
    /// positive on every other column. The zero vector for the cone
    /// itself.
    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }
}

/// A validated input matrix: nonzero columns, full column lattice,
/// pointed cone. Carries the face lattice and a positivity witness.
#[derive(Debug)]
pub struct GkzMatrix {
    matrix: IntMatrix,
    faces: Vec<Face>,
    positive_witness: Vec<BigInt>,
    toric: OnceLock<GroebnerBasis>,
    qdeg_j: Vec<OnceLock<QdegArrangement>>,
}

impl GkzMatrix {
    /// Validates `matrix` and precomputes the face lattice.
    pub fn new(matrix: IntMatrix) -> Result<GkzMatrix, ConeError> {
        let d = matrix.rows();
        let n = matrix.cols();
        for j in 0..n {
            if matrix.col(j).iter().all(|x| x.is_zero()) {
                return Err(ConeError::ZeroColumn { index: j });
            }
        }
        let s = snf(&matrix);
        let mut divisors = s.divisors();
        if s.rank < d || divisors.iter().any(|x| !x.is_one()) {
            divisors.resize(d, BigInt::zero());
            return Err(ConeError::NotFullLattice { divisors });
        }
        let positive_witness = match positive_functional(&matrix) {
            Some(h) => h,
            None => {
                let line = contained_line(&matrix)
                    .expect("a non-pointed cone of nonzero generators contains a generator line");
                return Err(ConeError::NotPointed { line });
            }
        };
        let faces = face_lattice(&matrix);
        let qdeg_j = (0..n).map(|_| OnceLock::new()).collect();
        Ok(GkzMatrix { matrix, faces, positive_witness, toric: OnceLock::new(), qdeg_j })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Number of rows `d`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of columns `n`.
    pub fn nvars(&self) -> usize {
        self.matrix.cols()
    }

    /// All faces, sorted by dimension then column set; the cone itself
    /// is last.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Faces other than the cone itself.
    pub fn proper_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim < self.matrix.rows())
    }

    /// The face whose column set is exactly `columns`, if one exists.
    pub fn face_by_columns(&self, columns: &[usize]) -> Option<&Face> {
        let mut want = columns.to_vec();
        want.sort_unstable();
        want.dedup();
        self.faces.iter().find(|f| f.columns == want)
    }

    /// The smallest face containing all of `columns`.
    pub fn closure_face(&self, columns: &[usize]) -> &Face {
        self.faces
            .iter()
            .filter(|f| columns.iter().all(|j| f.columns.contains(j)))
            .min_by_key(|f| (f.dim, f.columns.len()))
            .expect("the cone itself contains every column")
    }

    /// An integer functional strictly positive on every column; the
    /// pointedness witness.
    pub fn positive_witness(&self) -> &[BigInt] {
        &self.positive_witness
    }

    /// The toric ideal of the matrix as a reduced Groebner basis under
    /// `order`. The degree-graded default (grevlex) is computed once and
    /// cached.
    pub fn toric_ideal(&self, order: &TermOrder) -> GroebnerBasis {
        if matches!(order.kind(), TermOrderKind::GrevLex) {
            return self
                .toric
                .get_or_init(|| toric_ideal_of_matrix(&self.matrix, order))
                .clone();
        }
        toric_ideal_of_matrix(&self.matrix, order)
    }

    /// Cached quasi-degree arrangement of `S_A / <d_j>` under the
    /// degree-graded order; the hot path of every resonance test.
    pub(crate) fn qdeg_singleton(&self, j: usize) -> &QdegArrangement {
        self.qdeg_j[j].get_or_init(|| {
            crate::stdpairs::qdeg_direct(self, &[j], &TermOrder::grevlex(self.nvars()))
        })
    }
}

/// Decides `target` in the cone of the columns of `m`, returning the
/// coefficients of a nonnegative rational combination. Any cone member
/// is a nonnegative combination of linearly independent columns, so
/// searching independent subsets of size at most `rank` is complete.
pub fn nonneg_combination(m: &IntMatrix, target: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(target.len(), m.rows(), "target length must match row count");
    let n = m.cols();
    if target.iter().all(|x| x.is_zero()) {
        return Some(vec![BigRational::zero(); n]);
    }
    let max_size = m.rows().min(n);
    for size in 1..=max_size {
        for subset in combinations(n, size) {
            let sub = m.select_cols(&subset);
            let Ok(Some(sol)) = rational_solve(&sub, target) else {
                continue;
            };
            if !sol.kernel.is_empty() {
                continue; // dependent subset; a smaller one suffices
            }
            if sol.particular.iter().all(|x| !x.is_negative()) {
                let mut full = vec![BigRational::zero(); n];
                for (slot, &j) in subset.iter().enumerate() {
                    full[j] = sol.particular[slot].clone();
                }
                return Some(full);
            }
        }
    }
    None
}

/// All `size`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(size).collect()
}

/// A primitive vector on a line contained in the cone, if any. When the
/// cone is not pointed some generator's negative lies back in the cone.
fn contained_line(m: &IntMatrix) -> Option<Vec<BigInt>> {
    for j in 0..m.cols() {
        let neg: Vec<BigRational> =
            m.col(j).iter().map(|x| BigRational::from(-x.clone())).collect();
        if nonneg_combination(m, &neg).is_some() {
            return Some(primitive_vector(&m.col(j)));
        }
    }
    None
}

/// The face lattice of a full-dimensional pointed cone, sorted by
/// dimension then column set.
fn face_lattice(m: &IntMatrix) -> Vec<Face> {
    let d = m.rows();
    let n = m.cols();
    let all: Vec<usize> = (0..n).collect();
    if d == 0 {
        return vec![Face { columns: all, dim: 0, normal: Vec::new() }];
    }

    // Candidate facet normals: primitive kernels of (d-1)-subsets that
    // span a hyperplane, kept when all columns sit on one side.
    let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for subset in combinations(n, d - 1) {
        let sub = m.select_cols(&subset);
        let ker = kernel_lattice(&sub.transpose());
        if ker.rank() != 1 {
            continue;
        }
        let mut h = ker.vector(0);
        let sides: Vec<BigInt> = (0..n)
            .map(|j| (0..d).map(|i| &h[i] * m.get(i, j)).sum())
            .collect();
        if sides.iter().any(|s| s.is_positive()) && sides.iter().any(|s| s.is_negative()) {
            continue;
        }
        if sides.iter().all(|s| s.is_zero()) {
            continue;
        }
        if sides.iter().any(|s| s.is_negative()) {
            for x in &mut h {
                *x = -x.clone();
            }
        }
        normals.insert(primitive_vector(&h));
    }

    // Facets: vanishing sets of the supporting normals.
    let mut facet_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facet_normals: Vec<(Vec<usize>, Vec<BigInt>)> = Vec::new();
    for h in &normals {
        let cols: Vec<usize> = (0..n)
            .filter(|&j| (0..d).map(|i| &h[i] * m.get(i, j)).sum::<BigInt>().is_zero())
            .collect();
        if facet_sets.insert(cols.clone()) {
            facet_normals.push((cols, h.clone()));
        }
    }

    // Close under intersection, starting from the cone itself.
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert(all);
    let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
    while let Some(cur) = frontier.pop() {
        for (fcols, _) in &facet_normals {
            let inter: Vec<usize> =
                cur.iter().copied().filter(|j| fcols.contains(j)).collect();
            if sets.insert(inter.clone()) {
                frontier.push(inter);
            }
        }
    }

    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|columns| {
            let dim = rational_rank(&m.select_cols(&columns));
            let normal = if dim == d {
                vec![BigInt::zero(); d]
            } else {
                let mut sum = vec![BigInt::zero(); d];
                for (fcols, h) in &facet_normals {
                    if columns.iter().all(|j| fcols.contains(j)) {
                        for i in 0..d {
                            sum[i] += &h[i];
                        }
                    }
                }
                primitive_vector(&sum)
            };
            Face { columns, dim, normal }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.columns).cmp(&(b.dim, &b.columns)));
    faces
}
