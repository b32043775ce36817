//! Smith and Hermite normal forms with recorded unimodular transforms.
//!
//! `snf` computes `U * M * V = D` with `D` diagonal, nonnegative, and each
//! diagonal entry dividing the next. Pivot selection is fixed (smallest
//! nonzero absolute value, ties broken by lowest row then column index) so
//! the whole decomposition, including `U` and `V`, is deterministic.
//!
//! `hnf` computes the column-style Hermite normal form `H = M * V`: pivot
//! rows strictly increase column by column, pivot entries are positive,
//! entries to the left of a pivot lie in `[0, pivot)`, and zero columns are
//! pushed to the end. `H` with zero columns dropped is the canonical basis
//! of the column lattice of `M`, which is how lattices are compared for
//! equality throughout the crate.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Outcome of a Smith normal form computation: `u * m * v = d`.
///
/// `u_inv` and `v_inv` are maintained alongside so callers can read off
/// lattice bases (columns of `u_inv`) without inverting anything after the
/// fact.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Diagonal matrix, same shape as the input.
    pub d: IntMatrix,
    /// Left unimodular transform (`rows x rows`).
    pub u: IntMatrix,
    /// Right unimodular transform (`cols x cols`).
    pub v: IntMatrix,
    /// Inverse of `u`.
    pub u_inv: IntMatrix,
    /// Inverse of `v`.
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank` (the
    /// elementary divisors).
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Locates the entry of smallest nonzero absolute value in the trailing
/// submatrix starting at `(t, t)`, breaking ties by lowest row then column.
fn find_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m.get(bi, bj).abs() <= e.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form of `m` with transforms and their inverses.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op on `d` mirrors on `u`; the inverse op lands on `u_inv` as a
    // column op (and symmetrically for `v`).
    let mut rank = 0;
    'outer: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t) / d.get(t, t);
                let neg_q = -&q;
                d.add_row_multiple(i, t, &neg_q);
                u.add_row_multiple(i, t, &neg_q);
                u_inv.add_col_multiple(t, i, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j) / d.get(t, t);
                let neg_q = -&q;
                d.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                v_inv.add_row_multiple(t, j, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility fix-up: fold a row holding a non-divisible entry
            // into row t and resume elimination at the same t.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % &pivot).is_zero());
            if let Some((i, _)) = offender {
                let one = BigInt::one();
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                u_inv.add_col_multiple(i, t, &-&one);
                continue;
            }
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
                u_inv.negate_col(t);
            }
            rank = t + 1;
            break;
        }
    }
    SnfResult { d, u, v, u_inv, v_inv, rank }
}

/// Outcome of a Hermite normal form computation: `h = m * v`.
#[derive(Clone, Debug)]
pub struct HnfResult {
    /// Column-style Hermite form, same shape as the input.
    pub h: IntMatrix,
    /// Right unimodular transform (`cols x cols`).
    pub v: IntMatrix,
    /// Number of nonzero columns of `h`.
    pub rank: usize,
    /// Pivot row of each nonzero column, strictly increasing.
    pub pivot_rows: Vec<usize>,
}

/// Column-style Hermite normal form of `m` (column operations only, so the
/// column lattice is preserved exactly).
pub fn hnf(m: &IntMatrix) -> HnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    let mut pivot_rows = Vec::new();

    for i in 0..rows {
        if t == cols {
            break;
        }
        // Reduce the row-i entries of columns t.. to a single nonzero.
        loop {
            let mut best: Option<usize> = None;
            for j in t..cols {
                if h.get(i, j).is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h.get(i, b).abs() <= h.get(i, j).abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap_cols(t, b);
            v.swap_cols(t, b);
            let mut clean = true;
            for j in t + 1..cols {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let q = h.get(i, j) / h.get(i, t);
                let neg_q = -&q;
                h.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                if !h.get(i, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            if h.get(i, t).is_negative() {
                h.negate_col(t);
                v.negate_col(t);
            }
            // Reduce earlier columns so their row-i entries lie in
            // [0, pivot).
            for j in 0..t {
                let (q, _) = num_integer::Integer::div_mod_floor(h.get(i, j), h.get(i, t));
                let neg_q = -&q;
                h.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
            }
            pivot_rows.push(i);
            t += 1;
            break;
        }
    }
    HnfResult { h, v, rank: t, pivot_rows }
}

/// Determinant by the Bareiss fraction-free algorithm. Panics unless the
/// matrix is square.
pub fn det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let swap = (k + 1..n).find(|&i| !a.get(i, k).is_zero());
            match swap {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
        }
        for i in k + 1..n {
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let s = snf(m);
        // U * M * V = D.
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        // Recorded inverses really invert.
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        // Unimodularity.
        assert_eq!(det(&s.u).abs(), BigInt::one());
        assert_eq!(det(&s.v).abs(), BigInt::one());
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let divs = s.divisors();
        for w in divs.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain broken: {divs:?}");
        }
    }

    #[test]
    fn snf_of_the_running_example_matrix() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let s = snf(&m);
        check_snf(&m);
        assert_eq!(s.rank, 2);
        assert_eq!(s.divisors(), vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn snf_of_a_single_row_with_coprime_entries() {
        let m = IntMatrix::from_rows(&[vec![2, 3]]);
        let s = snf(&m);
        check_snf(&m);
        assert_eq!(s.rank, 1);
        assert_eq!(s.divisors(), vec![BigInt::one()]);
    }

    #[test]
    fn snf_detects_index_two_sublattice() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let s = snf(&m);
        check_snf(&m);
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn snf_of_empty_and_zero_matrices() {
        let e = IntMatrix::zero(0, 3);
        let s = snf(&e);
        assert_eq!(s.rank, 0);
        assert_eq!(s.v, IntMatrix::identity(3));
        let z = IntMatrix::zero(2, 2);
        assert_eq!(snf(&z).rank, 0);
    }

    #[test]
    fn hnf_canonicalizes_a_column_lattice() {
        // Columns (3,-2),(1,1) and (1,1),(4,-1) span the same lattice
        // (det -5 in both cases); their Hermite forms must agree.
        let a = IntMatrix::from_rows(&[vec![3, 1], vec![-2, 1]]);
        let b = IntMatrix::from_rows(&[vec![1, 4], vec![1, -1]]);
        let ha = hnf(&a);
        let hb = hnf(&b);
        assert_eq!(ha.h, hb.h);
        assert_eq!(a.mul(&ha.v), ha.h);
        assert_eq!(det(&ha.v).abs(), BigInt::one());
        assert_eq!(ha.rank, 2);
    }

    #[test]
    fn hnf_pushes_zero_columns_to_the_end() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 4]]);
        let r = hnf(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.h, IntMatrix::from_rows(&[vec![2, 0, 0]]));
    }

    #[test]
    fn bareiss_determinant_matches_cofactor_values() {
        let m = IntMatrix::from_rows(&[vec![2, 3, 1], vec![0, 1, -1], vec![4, 0, 2]]);
        assert_eq!(det(&m), BigInt::from(-12));
        assert_eq!(det(&IntMatrix::identity(4)), BigInt::one());
        assert_eq!(det(&IntMatrix::zero(2, 2)), BigInt::zero());
    }
}
