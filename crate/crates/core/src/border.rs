//! Restriction to a face: lattice comparison data, component
//! parameters, and orbit strata.
//!
//! For a face `F` of the column cone, the restricted system decomposes
//! along the finite quotient of the saturated span of `F` by the column
//! lattice of `F`. [`border_image`] reports that comparison in exact
//! terms: a Smith-aligned basis of the saturated span with its diagonal
//! divisors `k_i`, a direct complement, the coordinates of `beta` in the
//! split, the nonvanishing test (integrality of the complement
//! coordinates), the component parameters `alpha` (one per residue
//! tuple), and the multiplicity of each exterior degree.
//!
//! [`orbit_stratification`] lists, for every face, the prime ideal of
//! the corresponding coordinate stratum: the toric relations of the face
//! columns together with the variables outside the face.

use crate::cone::{nonneg_combination, Face, GkzMatrix};
use crate::exactlat::{rational_solve, saturate_with_diagonal, split_complement};
use crate::polyring::{Binomial, Monomial, TermOrder};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Errors from the face-restriction layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BorderError {
    /// The given columns do not span a face: their cone is strictly
    /// smaller than the cone of the smallest face containing them.
    #[error("columns {columns:?} do not span a face of the column cone")]
    NotAFace { columns: Vec<usize> },
}

/// Exact comparison data for the restriction of a parameter to a face.
#[derive(Debug, Clone)]
pub struct BorderImageReport {
    /// Columns of the smallest face containing the given columns.
    pub face_columns: Vec<usize>,
    /// The given columns, sorted and deduplicated.
    pub given_columns: Vec<usize>,
    /// Rank of the face span.
    pub dim_f: usize,
    /// Smith-aligned basis of the saturated span, one vector per rank.
    pub qprime_basis: Vec<Vec<BigInt>>,
    /// Diagonal divisors: basis vector `i` scaled by `k_diagonal[i]`
    /// generates the column lattice of the given columns.
    pub k_diagonal: Vec<BigInt>,
    /// Product of the divisors: the index of the column lattice in its
    /// saturation.
    pub index: BigInt,
    /// Basis of a direct complement of the saturated span.
    pub qsecond_basis: Vec<Vec<BigInt>>,
    /// Coordinates of `beta` along `qprime_basis`.
    pub beta_prime: Vec<BigRational>,
    /// Coordinates of `beta` along `qsecond_basis`.
    pub beta_second: Vec<BigRational>,
    /// The restriction is nonzero exactly when every complement
    /// coordinate is an integer.
    pub nonzero: bool,
    /// Component parameters, one per residue tuple `r` in the box
    /// `prod [0, k_i)` in ascending lexicographic order:
    /// `alpha_i = (beta_prime_i - r_i) / k_i`. Empty when the
    /// restriction vanishes.
    pub alpha_list: Vec<Vec<BigRational>>,
    /// `(q, binomial(d - dim_f, q))` for each exterior degree `q`.
    pub multiplicities: Vec<(usize, BigInt)>,
    /// Variables outside the closure face: the polynomial directions of
    /// the restricted system.
    pub polynomial_vars: Vec<usize>,
}

/// One coordinate stratum of the column cone.
#[derive(Debug, Clone)]
pub struct OrbitStratum {
    pub face: Face,
    /// Groebner basis of the stratum's prime ideal: the face's toric
    /// relations plus the variables outside the face.
    pub prime_generators: Vec<Binomial>,
}

/// Computes the face-restriction comparison data of `beta` along the
/// face spanned by `columns`.
///
/// The columns need not be a face's full column set, but their cone must
/// equal the cone of the smallest face containing them; otherwise
/// [`BorderError::NotAFace`] is returned with the offending input.
pub fn border_image(
    g: &GkzMatrix,
    columns: &[usize],
    beta: &[BigRational],
) -> Result<BorderImageReport, BorderError> {
    let d = g.dim();
    assert_eq!(beta.len(), d, "parameter dimension must match row count");
    let mut given: Vec<usize> = columns.to_vec();
    given.sort_unstable();
    given.dedup();
    for &j in &given {
        assert!(j < g.nvars(), "column index {j} out of range");
    }

    let closure = g.closure_face(&given);
    let given_matrix = g.matrix().select_cols(&given);
    for &j in closure.columns() {
        let target: Vec<BigRational> =
            g.matrix().col(j).into_iter().map(BigRational::from).collect();
        if nonneg_combination(&given_matrix, &target).is_none() {
            return Err(BorderError::NotAFace { columns: given });
        }
    }

    let sat = saturate_with_diagonal(&given_matrix);
    let r = sat.saturation.rank();
    let complement = split_complement(&sat.saturation).expect("saturation is saturated");

    let split = sat.saturation.as_matrix().hstack(complement.as_matrix());
    let gamma = rational_solve(&split, beta)
        .expect("shapes agree")
        .expect("basis of the full lattice is invertible")
        .particular;
    let beta_prime = gamma[..r].to_vec();
    let beta_second = gamma[r..].to_vec();
    let nonzero = beta_second.iter().all(BigRational::is_integer);

    let alpha_list = if !nonzero {
        Vec::new()
    } else if r == 0 {
        vec![Vec::new()]
    } else {
        let boxes: Vec<Vec<u64>> = sat
            .k
            .iter()
            .map(|k| (0..k.to_u64().expect("divisor fits in u64")).collect())
            .collect();
        boxes
            .into_iter()
            .map(|b| b.into_iter())
            .multi_cartesian_product()
            .map(|residues| {
                residues
                    .iter()
                    .zip(&beta_prime)
                    .zip(&sat.k)
                    .map(|((&rem, bp), k)| {
                        (bp - BigRational::from(BigInt::from(rem)))
                            / BigRational::from(k.clone())
                    })
                    .collect()
            })
            .collect()
    };

    let multiplicities = (0..=d - r)
        .map(|q| (q, num_integer::binomial(BigInt::from(d - r), BigInt::from(q))))
        .collect();
    let polynomial_vars =
        (0..g.nvars()).filter(|j| !closure.columns().contains(j)).collect();

    Ok(BorderImageReport {
        face_columns: closure.columns().to_vec(),
        given_columns: given,
        dim_f: r,
        qprime_basis: (0..r).map(|i| sat.saturation.vector(i)).collect(),
        k_diagonal: sat.k,
        index: sat.index,
        qsecond_basis: (0..complement.rank()).map(|i| complement.vector(i)).collect(),
        beta_prime,
        beta_second,
        nonzero,
        alpha_list,
        multiplicities,
        polynomial_vars,
    })
}

/// The prime ideal of every coordinate stratum, one entry per face in
/// face order.
pub fn orbit_stratification(g: &GkzMatrix) -> Vec<OrbitStratum> {
    let n = g.nvars();
    let order = TermOrder::grevlex(n);
    g.faces()
        .iter()
        .map(|face| {
            let cols = face.columns();
            let mut gens: Vec<Binomial> = Vec::new();
            if !cols.is_empty() {
                let sub = g.matrix().select_cols(cols);
                let toric = crate::polyring::toric_ideal_of_matrix(&sub, &TermOrder::grevlex(cols.len()));
                for b in toric.elements() {
                    gens.push(inflate(b, cols, n, &order));
                }
            }
            for j in 0..n {
                if !cols.contains(&j) {
                    gens.push(Binomial::monomial(Monomial::var(n, j)));
                }
            }
            let monomial_vars: Vec<usize> = gens
                .iter()
                .filter(|b| b.is_monomial())
                .map(|b| {
                    let s = b.lead().support();
                    assert_eq!(s.len(), 1, "stratum monomials are single variables");
                    assert_eq!(b.lead().exp(s[0]), 1);
                    s[0]
                })
                .collect();
            let complement: Vec<usize> = (0..n).filter(|j| !cols.contains(j)).collect();
            assert_eq!(
                monomial_vars, complement,
                "stratum monomials must be exactly the non-face variables"
            );
            OrbitStratum { face: face.clone(), prime_generators: gens }
        })
        .collect()
}

/// Re-indexes a binomial in the face variables into the full variable
/// set, re-orienting under the full-ring order.
fn inflate(b: &Binomial, cols: &[usize], n: usize, order: &TermOrder) -> Binomial {
    let lift = |m: &Monomial| -> Monomial {
        let mut exps = vec![0u32; n];
        for (local, &global) in cols.iter().enumerate() {
            exps[global] = m.exp(local);
        }
        Monomial::new(exps)
    };
    match b.tail() {
        None => Binomial::monomial(lift(b.lead())),
        Some(t) => Binomial::difference(order, lift(b.lead()), lift(t))
            .expect("distinct monomials stay distinct under lifting"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::IntMatrix;
    use num_traits::One;

    fn running_example() -> GkzMatrix {
        GkzMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]])).unwrap()
    }

    fn coprime_row() -> GkzMatrix {
        GkzMatrix::new(IntMatrix::from_rows(&[vec![2, 3]])).unwrap()
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_axis_face_of_the_running_example() {
        let g = running_example();
        let r = border_image(&g, &[0], &q(&[1, -1])).unwrap();
        assert_eq!(r.face_columns, vec![0]);
        assert_eq!(r.dim_f, 1);
        assert_eq!(r.qprime_basis, vec![vec![BigInt::one(), BigInt::from(0)]]);
        assert_eq!(r.k_diagonal, vec![BigInt::one()]);
        assert_eq!(r.index, BigInt::one());
        assert_eq!(r.beta_prime, vec![rat(1, 1)]);
        assert_eq!(r.beta_second, vec![rat(-1, 1)]);
        assert!(r.nonzero);
        assert_eq!(r.alpha_list, vec![vec![rat(1, 1)]]);
        assert_eq!(
            r.multiplicities,
            vec![(0, BigInt::one()), (1, BigInt::one())],
        );
        assert_eq!(r.polynomial_vars, vec![1, 2]);
    }

    #[test]
    fn fractional_complement_coordinate_kills_the_restriction() {
        let g = running_example();
        let r = border_image(&g, &[0], &[rat(1, 1), rat(-1, 2)]).unwrap();
        assert_eq!(r.beta_second, vec![rat(-1, 2)]);
        assert!(!r.nonzero);
        assert!(r.alpha_list.is_empty());
    }

    #[test]
    fn full_face_restriction_returns_the_parameter_itself() {
        let g = running_example();
        let beta = vec![rat(1, 3), rat(-2, 1)];
        let r = border_image(&g, &[0, 1, 2], &beta).unwrap();
        assert_eq!(r.dim_f, 2);
        assert_eq!(r.index, BigInt::one());
        assert_eq!(
            r.qprime_basis,
            vec![
                vec![BigInt::one(), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::one()],
            ],
        );
        assert!(r.qsecond_basis.is_empty());
        assert!(r.nonzero);
        assert_eq!(r.alpha_list, vec![beta.clone()]);
        assert_eq!(r.multiplicities, vec![(0, BigInt::one())]);
        assert_eq!(r.polynomial_vars, Vec::<usize>::new());
    }

    #[test]
    fn empty_face_restriction_keeps_all_coordinates_in_the_complement() {
        let g = running_example();
        let r = border_image(&g, &[], &q(&[1, -1])).unwrap();
        assert_eq!(r.dim_f, 0);
        assert_eq!(r.index, BigInt::one());
        assert!(r.qprime_basis.is_empty());
        assert_eq!(r.beta_second, q(&[1, -1]));
        assert!(r.nonzero);
        assert_eq!(r.alpha_list, vec![Vec::<BigRational>::new()]);
        assert_eq!(r.polynomial_vars, vec![0, 1, 2]);
        assert!(!border_image(&g, &[], &[rat(1, 2), rat(0, 1)]).unwrap().nonzero);
    }

    #[test]
    fn interior_ray_is_rejected() {
        let g = running_example();
        assert_eq!(
            border_image(&g, &[1], &q(&[0, 0])).unwrap_err(),
            BorderError::NotAFace { columns: vec![1] },
        );
        assert_eq!(
            border_image(&g, &[0, 1], &q(&[0, 0])).unwrap_err(),
            BorderError::NotAFace { columns: vec![0, 1] },
        );
    }

    #[test]
    fn index_two_ray_of_the_coprime_row_splits_into_two_components() {
        let g = coprime_row();
        // The first column alone spans the ray: 3 = (3/2) * 2.
        let r = border_image(&g, &[0], &q(&[5])).unwrap();
        assert_eq!(r.face_columns, vec![0, 1]);
        assert_eq!(r.given_columns, vec![0]);
        assert_eq!(r.dim_f, 1);
        assert_eq!(r.k_diagonal, vec![BigInt::from(2)]);
        assert_eq!(r.index, BigInt::from(2));
        assert!(r.nonzero);
        assert_eq!(r.alpha_list, vec![vec![rat(5, 2)], vec![rat(2, 1)]]);
        assert_eq!(r.multiplicities, vec![(0, BigInt::one())]);
        assert_eq!(r.polynomial_vars, Vec::<usize>::new());
    }

    #[test]
    fn both_columns_of_the_coprime_row_generate_the_full_lattice() {
        let g = coprime_row();
        let r = border_image(&g, &[0, 1], &q(&[5])).unwrap();
        assert_eq!(r.k_diagonal, vec![BigInt::one()]);
        assert_eq!(r.index, BigInt::one());
        assert_eq!(r.alpha_list, vec![vec![rat(5, 1)]]);
    }

    #[test]
    fn strata_of_the_running_example() {
        let g = running_example();
        let strata = orbit_stratification(&g);
        assert_eq!(strata.len(), 4);
        let rendered: Vec<(Vec<usize>, Vec<String>)> = strata
            .iter()
            .map(|s| {
                (
                    s.face.columns().to_vec(),
                    s.prime_generators.iter().map(|b| b.to_string()).collect(),
                )
            })
            .collect();
        assert_eq!(
            rendered,
            vec![
                (vec![], vec!["d1".into(), "d2".into(), "d3".into()]),
                (vec![0], vec!["d2".into(), "d3".into()]),
                (vec![2], vec!["d1".into(), "d2".into()]),
                (vec![0, 1, 2], vec!["d1*d3 - d2".into()]),
            ],
        );
    }

    #[test]
    fn strata_of_the_coprime_row() {
        let g = coprime_row();
        let strata = orbit_stratification(&g);
        let rendered: Vec<(Vec<usize>, Vec<String>)> = strata
            .iter()
            .map(|s| {
                (
                    s.face.columns().to_vec(),
                    s.prime_generators.iter().map(|b| b.to_string()).collect(),
                )
            })
            .collect();
        assert_eq!(
            rendered,
            vec![
                (vec![], vec!["d1".into(), "d2".into()]),
                (vec![0, 1], vec!["d1^3 - d2^2".into()]),
            ],
        );
    }
}
