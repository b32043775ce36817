//! Dense integer matrices with arbitrary-precision entries.
//!
//! Row-major storage. Empty matrices (zero rows and/or zero columns) are
//! legal everywhere; they show up as kernels of injective maps and as the
//! `beta''` block of a full-dimensional face split.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// A `rows x cols` matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries. Panics if `data` has the
    /// wrong length.
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from machine-integer rows; convenient in tests and
    /// parsers. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// The `rows x cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// The `n x n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// The submatrix keeping `keep` columns, in the order given.
    pub fn select_cols(&self, keep: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * keep.len());
        for i in 0..self.rows {
            for &j in keep {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: keep.len(), data }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product. Panics on dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    if !add.is_zero() {
                        let cur = out.get(i, j) + add;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product. Panics on dimension mismatch.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Glues `other` to the right of `self`. Panics unless row counts match.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[a] += q * row[b]`.
    pub fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * self.get(b, j);
            let cur = self.get(a, j) + add;
            self.set(a, j, cur);
        }
    }

    /// `col[a] += q * col[b]`.
    pub fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * self.get(i, b);
            let cur = self.get(i, a) + add;
            self.set(i, a, cur);
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let cur = -self.get(a, j);
            self.set(a, j, cur);
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let cur = -self.get(i, a);
            self.set(i, a, cur);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}
