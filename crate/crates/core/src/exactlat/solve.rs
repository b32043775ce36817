//! Exact linear solving over the rationals.

use super::matrix::IntMatrix;
use super::ExactLatError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Full solution set of `M x = b`: one particular solution plus a basis of
/// the rational kernel. The solution set is `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    pub particular: Vec<BigRational>,
    pub kernel: Vec<Vec<BigRational>>,
}

/// Reduced row-echelon form of a rational matrix, in place. Returns the
/// pivot column of each nonzero row. Pivoting is deterministic: first
/// nonzero entry in column order.
pub(crate) fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let sub = &f * &rows[r][j];
                rows[i][j] = &rows[i][j] - sub;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Scales a rational vector so its first nonzero entry is 1. The zero
/// vector is returned unchanged.
fn normalize_leading(v: &mut [BigRational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = lead.recip();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

/// Solves `M x = b` exactly over the rationals.
///
/// Returns `Ok(None)` when the system is inconsistent. In the consistent
/// case the particular solution sets every free variable to zero and each
/// kernel basis vector is scaled to leading coefficient 1, so the output
/// is canonical. Fails with `DimensionMismatch` when `b` has the wrong
/// length.
pub fn rational_solve(
    m: &IntMatrix,
    b: &[BigRational],
) -> Result<Option<RationalSolution>, ExactLatError> {
    if b.len() != m.rows() {
        return Err(ExactLatError::DimensionMismatch { expected: m.rows(), got: b.len() });
    }
    let n = m.cols();
    let mut aug: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..n).map(|j| BigRational::from(m.get(i, j).clone())).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);

    // Inconsistent iff some pivot lands in the augmented column.
    if pivots.last() == Some(&n) {
        return Ok(None);
    }

    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut particular = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][n].clone();
    }
    let mut kernel = Vec::new();
    for f in 0..n {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -aug[r][f].clone();
        }
        normalize_leading(&mut v);
        kernel.push(v);
    }
    Ok(Some(RationalSolution { particular, kernel }))
}

/// Convenience: rational view of an integer vector.
pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from(x.clone())).collect()
}

/// Rank of an integer matrix over the rationals.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| BigRational::from(m.get(i, j).clone())).collect())
        .collect();
    rref(&mut rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn unique_solution_of_a_triangular_system() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let s = rational_solve(&m, &[q(1), q(-1)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q(2), q(-1)]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn underdetermined_system_exposes_kernel() {
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        let s = rational_solve(&m, &[q(0)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q(0), q(0)]);
        assert_eq!(s.kernel, vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn inconsistent_system_returns_none() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(rational_solve(&m, &[q(0), q(1)]).unwrap(), None);
    }

    #[test]
    fn wrong_rhs_length_is_a_dimension_mismatch() {
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        match rational_solve(&m, &[q(0), q(0)]) {
            Err(ExactLatError::DimensionMismatch { expected: 1, got: 2 }) => {}
            other => panic!("expected DimensionMismatch, got {other:?}"),
        }
    }

    #[test]
    fn solutions_satisfy_the_system() {
        let m = IntMatrix::from_rows(&[vec![2, 3, 1], vec![0, 1, -1]]);
        let b = [q(5), q(2)];
        let s = rational_solve(&m, &b).unwrap().unwrap();
        let check = |x: &[BigRational]| -> Vec<BigRational> {
            (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| BigRational::from(m.get(i, j).clone()) * &x[j])
                        .sum()
                })
                .collect()
        };
        assert_eq!(check(&s.particular), b.to_vec());
        for k in &s.kernel {
            assert!(check(k).iter().all(Zero::is_zero));
        }
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn zero_rows_accept_any_rhs_of_zero() {
        let m = IntMatrix::zero(0, 3);
        let s = rational_solve(&m, &[]).unwrap().unwrap();
        assert_eq!(s.particular.len(), 3);
        assert_eq!(s.kernel.len(), 3);
    }
}
