//! Monomials in the partial-derivative variables `d1, ..., dn`.

use std::fmt;

/// A monomial `d1^u1 * ... * dn^un`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The single variable `d_{j+1}` (0-based index `j`).
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[j] = 1;
        Monomial { exps }
    }

    /// The squarefree product of the variables in `support`.
    pub fn squarefree(nvars: usize, support: &[usize]) -> Self {
        let mut exps = vec![0; nvars];
        for &j in support {
            exps[j] = 1;
        }
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; requires `self.divides(other)`.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Divides out the full `d_{j+1}` content: returns `(m / d^k, k)` with
    /// `k` maximal.
    pub fn strip_var(&self, j: usize) -> (Monomial, u32) {
        let k = self.exps[j];
        let mut exps = self.exps.clone();
        exps[j] = 0;
        (Monomial { exps }, k)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&j| self.exps[j] > 0).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "d{}", j + 1)?;
            } else {
                write!(f, "d{}^{}", j + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
