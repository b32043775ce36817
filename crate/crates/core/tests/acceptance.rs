//! Acceptance gate: one test per criterion, exact comparisons only.
//!
//! Each test prints a single `PASS criterion N` line on success (visible
//! with `--nocapture`); the harness line itself doubles as the pass/fail
//! record. Criterion 2 carries its own independent oracle, built from
//! nothing but semigroup enumeration, so the quasi-degree machinery is
//! cross-checked against a computation that shares no code with it.

use gkz_core::border::border_image;
use gkz_core::cone::GkzMatrix;
use gkz_core::ekpresent::{export_script, ExportPayload};
use gkz_core::exactlat::{det, hnf, snf, IntMatrix};
use gkz_core::polyring::{
    buchberger, toric_ideal_of_matrix, Binomial, Monomial, SPairDiscipline, TermOrder,
};
use gkz_core::resonance::{
    cokernel_levels, is_resonant, minimal_shift_full, sres, sres_j, verdict,
};
use gkz_core::stdpairs::{qdeg_quotient, standard_pairs};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn running_example() -> GkzMatrix {
    GkzMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]])).unwrap()
}

fn coprime_row() -> GkzMatrix {
    GkzMatrix::new(IntMatrix::from_rows(&[vec![2, 3]])).unwrap()
}

fn twisted_cubic() -> GkzMatrix {
    GkzMatrix::new(IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]])).unwrap()
}

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()
}

#[test]
fn criterion_1_running_example_end_to_end() {
    let g = running_example();

    // Toric ideal: exactly the single relation d1*d3 - d2.
    let toric = g.toric_ideal(&TermOrder::grevlex(3));
    let strings: Vec<String> = toric.elements().iter().map(|b| b.to_string()).collect();
    assert_eq!(strings, vec!["d1*d3 - d2"]);

    // Strong resonance at beta = (1, -1): columns 2 and 3 witness with
    // level 1, column 1 does not; (2, 0) is clean.
    let beta = q(&[1, -1]);
    let w = sres(&g, &beta);
    assert!(w[0].is_none());
    assert_eq!(w[1].as_ref().unwrap().k, BigInt::one());
    assert_eq!(w[2].as_ref().unwrap().k, BigInt::one());
    assert!(sres(&g, &q(&[2, 0])).iter().all(Option::is_none));

    // Exact verdict strings.
    let r = verdict(&g, &beta, &[]);
    assert_eq!(
        r.isomorphism_verdict,
        "not isomorphic; witnesses j = 2 (k=1), j = 3 (k=1)"
    );
    assert_eq!(verdict(&g, &q(&[2, 0]), &[]).isomorphism_verdict, "isomorphic");

    // Cokernel of the second contiguity map is concentrated in level 0.
    assert_eq!(cokernel_levels(&g, &beta, 1).unwrap(), vec![BigInt::zero()]);

    // Escape shift.
    assert_eq!(minimal_shift_full(&g, &beta), 1);

    // Face lattice: empty face, the two axis rays, the full cone.
    let faces: Vec<Vec<usize>> =
        g.faces().iter().map(|f| f.columns().to_vec()).collect();
    assert_eq!(faces, vec![vec![], vec![0], vec![2], vec![0, 1, 2]]);

    // Border image along the first axis.
    let b = border_image(&g, &[0], &beta).unwrap();
    assert_eq!(b.index, BigInt::one());
    assert_eq!(b.beta_second, q(&[-1]));
    assert!(b.nonzero);
    assert_eq!(b.alpha_list, vec![q(&[1])]);
    assert_eq!(b.multiplicities, vec![(0, BigInt::one()), (1, BigInt::one())]);

    println!("PASS criterion 1: running example end-to-end values all exact");
}

/// Independent oracle for criterion 2: decides strong resonance of an
/// integer parameter purely from semigroup enumeration.
///
/// Degrees of the quotient by the j-th variable are the negatives of
/// `NA \ (a_j + NA)`. Enumerating all semigroup elements with both
/// coordinates at most 60 lists that gap set exactly inside the box
/// (columns are componentwise nonnegative, so subtraction never leaves
/// the box). A point is in the Zariski closure of the gap degrees iff
/// it is one of them, or it lies on a line in a column direction
/// through at least 15 of them: the closure has fewer than 15
/// irreducible pieces, so 15 collinear points force two into one piece,
/// which must then be that very line. Levels k are scanned to 50, far
/// beyond any witness the [-5, 5]^2 grid can need; any truncation error
/// would surface as a mismatch and fail the test.
struct GapOracle {
    columns: Vec<(i64, i64)>,
    gap_degrees: Vec<Vec<(i64, i64)>>,
}

impl GapOracle {
    fn build(g: &GkzMatrix) -> GapOracle {
        let columns: Vec<(i64, i64)> = (0..g.nvars())
            .map(|j| {
                let c = g.matrix().col(j);
                (int(&c[0]), int(&c[1]))
            })
            .collect();
        let bound = 60i64;
        let mut semigroup: BTreeSet<(i64, i64)> = BTreeSet::new();
        // Depth-first over exponent space, pruned by the box.
        fn visit(
            u: &mut Vec<i64>,
            j: usize,
            columns: &[(i64, i64)],
            bound: i64,
            acc: (i64, i64),
            out: &mut BTreeSet<(i64, i64)>,
        ) {
            if acc.0 > bound || acc.1 > bound {
                return;
            }
            if j == columns.len() {
                out.insert(acc);
                return;
            }
            let mut acc_j = acc;
            loop {
                visit(u, j + 1, columns, bound, acc_j, out);
                acc_j = (acc_j.0 + columns[j].0, acc_j.1 + columns[j].1);
                if acc_j.0 > bound || acc_j.1 > bound {
                    break;
                }
                if columns[j] == (0, 0) {
                    break;
                }
            }
        }
        visit(&mut Vec::new(), 0, &columns, bound, (0, 0), &mut semigroup);
        let gap_degrees = columns
            .iter()
            .map(|a| {
                semigroup
                    .iter()
                    .filter(|&&x| !semigroup.contains(&(x.0 - a.0, x.1 - a.1)))
                    .map(|&(x, y)| (-x, -y))
                    .collect()
            })
            .collect();
        GapOracle { columns, gap_degrees }
    }

    /// Is `p` in the Zariski closure of the gap degrees of column `j`?
    fn in_closure(&self, j: usize, p: (i64, i64)) -> bool {
        let gaps = &self.gap_degrees[j];
        if gaps.contains(&p) {
            return true;
        }
        for &(cx, cy) in &self.columns {
            let on_line = gaps
                .iter()
                .filter(|&&(x, y)| (x - p.0) * cy == (y - p.1) * cx)
                .count();
            if on_line >= 15 {
                return true;
            }
        }
        false
    }

    fn strongly_resonant(&self, beta: (i64, i64)) -> bool {
        (0..self.columns.len()).any(|j| {
            (1..=50i64).any(|k| {
                let a = self.columns[j];
                self.in_closure(j, (-beta.0 - k * a.0, -beta.1 - k * a.1))
            })
        })
    }
}

fn int(x: &BigInt) -> i64 {
    num_traits::ToPrimitive::to_i64(x).expect("fits in i64")
}

#[test]
fn criterion_2_resonance_grid_matches_independent_oracle() {
    let g = running_example();
    let oracle = GapOracle::build(&g);
    for b1 in -5..=5i64 {
        for b2 in -5..=5i64 {
            let computed = sres(&g, &q(&[b1, b2])).iter().any(Option::is_some);
            let closed_form = b1 <= -1 || b2 <= -1;
            let from_oracle = oracle.strongly_resonant((b1, b2));
            assert_eq!(
                computed, closed_form,
                "closed form disagrees at ({b1}, {b2})"
            );
            assert_eq!(
                computed, from_oracle,
                "semigroup oracle disagrees at ({b1}, {b2})"
            );
        }
    }
    println!("PASS criterion 2: [-5,5]^2 grid matches closed form and semigroup oracle");
}

#[test]
fn criterion_3_coprime_row_splitting() {
    let g = coprime_row();

    let toric = g.toric_ideal(&TermOrder::grevlex(2));
    let strings: Vec<String> = toric.elements().iter().map(|b| b.to_string()).collect();
    assert_eq!(strings, vec!["d1^3 - d2^2"]);

    let b = border_image(&g, &[0], &q(&[5])).unwrap();
    assert_eq!(b.k_diagonal, vec![BigInt::from(2)]);
    assert_eq!(b.index, BigInt::from(2));
    assert_eq!(
        b.alpha_list,
        vec![
            vec![BigRational::new(BigInt::from(5), BigInt::from(2))],
            vec![BigRational::from(BigInt::from(2))],
        ]
    );

    // Quotient by the first variable: two isolated degrees -0 and -3.
    let arr = qdeg_quotient(&g, &[0], &TermOrder::grevlex(2));
    let pieces: Vec<(Vec<BigInt>, Vec<usize>)> = arr
        .pieces()
        .iter()
        .map(|p| (p.shift().to_vec(), p.span_columns().to_vec()))
        .collect();
    assert_eq!(
        pieces,
        vec![(vec![BigInt::from(-3)], vec![]), (vec![BigInt::from(0)], vec![])]
    );

    println!("PASS criterion 3: coprime row has index-2 splitting and point quasi-degrees");
}

#[test]
fn criterion_4_lattice_and_groebner_randomized_cross_checks() {
    // (a) 200 random Smith/Hermite factorizations, checked exactly.
    let mut r = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let rows = r.gen_range(1..=5);
        let cols = r.gen_range(1..=5);
        let data: Vec<BigInt> =
            (0..rows * cols).map(|_| BigInt::from(r.gen_range(-9i64..=9))).collect();
        let m = IntMatrix::new(rows, cols, data);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(det(&s.u).abs().is_one() && det(&s.v).abs().is_one());
        let divisors = s.divisors();
        for w in divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        let h = hnf(&m);
        assert_eq!(m.mul(&h.v), h.h);
        assert!(det(&h.v).abs().is_one());
    }

    // (b) 50 random lattice-basis ideals: both S-pair disciplines land
    // on the same reduced basis.
    let mut done = 0;
    while done < 50 {
        let n = r.gen_range(2..=5);
        let order = TermOrder::grevlex(n);
        let mut gens = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            let u: Vec<BigInt> =
                (0..n).map(|_| BigInt::from(r.gen_range(-4i64..=4))).collect();
            if !u.iter().all(Zero::is_zero) {
                gens.push(Binomial::from_lattice_vector(&order, &u).unwrap());
            }
        }
        if gens.is_empty() {
            continue;
        }
        done += 1;
        let a = buchberger(&gens, &order, SPairDiscipline::MinDegree);
        let b = buchberger(&gens, &order, SPairDiscipline::Fifo);
        let mut sa: Vec<String> = a.elements().iter().map(|x| x.to_string()).collect();
        let mut sb: Vec<String> = b.elements().iter().map(|x| x.to_string()).collect();
        sa.sort();
        sb.sort();
        assert_eq!(sa, sb);
    }

    // (c) 50 random monomial ideals: standard pairs cover exactly the
    // standard monomials.
    for _ in 0..50 {
        let n = r.gen_range(2..=5);
        let raw: Vec<Monomial> = (0..r.gen_range(1..=6))
            .map(|_| Monomial::new((0..n).map(|_| r.gen_range(0..=4u32)).collect()))
            .collect();
        let mut gens: Vec<Monomial> = Vec::new();
        for g in &raw {
            if raw.iter().any(|h| h != g && h.divides(g)) {
                continue;
            }
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let pairs = standard_pairs(n, &gens);
        let bound: u32 =
            1 + gens.iter().flat_map(|g| g.exps().iter().copied()).max().unwrap_or(0);
        let mut point = vec![0u32; n];
        'grid: loop {
            let m = Monomial::new(point.clone());
            let in_ideal = gens.iter().any(|g| g.divides(&m));
            let covered = pairs.iter().any(|p| {
                (0..n).all(|i| p.free().contains(&i) || p.root().exp(i) == m.exp(i))
            });
            assert_eq!(!in_ideal, covered, "cover mismatch at {m}");
            let mut i = 0;
            loop {
                if i == n {
                    break 'grid;
                }
                point[i] += 1;
                if point[i] <= bound {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }

    // (d) Quasi-degrees are order-independent on all three reference
    // matrices, for every singleton.
    for g in [running_example(), coprime_row(), twisted_cubic()] {
        let n = g.nvars();
        for j in 0..n {
            let a = qdeg_quotient(&g, &[j], &TermOrder::grevlex(n));
            let b = qdeg_quotient(&g, &[j], &TermOrder::lex(n));
            assert_eq!(a.pieces(), b.pieces(), "column {j} of {:?}", g.matrix());
        }
    }

    // (e) The twisted cubic needs exactly three quadric relations.
    let cubic = twisted_cubic();
    let toric = toric_ideal_of_matrix(cubic.matrix(), &TermOrder::grevlex(4));
    let strings: Vec<String> = toric.elements().iter().map(|b| b.to_string()).collect();
    assert_eq!(
        strings,
        vec!["d3^2 - d2*d4", "d2*d3 - d1*d4", "d2^2 - d1*d3"]
    );

    println!("PASS criterion 4: randomized lattice/Groebner/standard-pair cross-checks");
}

#[test]
fn criterion_5_verdicts_and_shifts_on_random_parameters() {
    let g = running_example();
    let eps: Vec<BigInt> =
        (0..2).map(|i| (0..3).map(|j| g.matrix().get(i, j).clone()).sum()).collect();
    let mut r = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..200 {
        let b1 = r.gen_range(-6i64..=6);
        let b2 = r.gen_range(-6i64..=6);
        let beta = q(&[b1, b2]);
        let report = verdict(&g, &beta, &[]);

        // The verdict string is exactly the union of the witnesses.
        let any = (0..3).any(|j| sres_j(&g, &beta, j).unwrap().is_some());
        assert_eq!(report.isomorphism_verdict == "isomorphic", !any);
        assert_eq!(report.strongly_resonant, any);

        // Strong resonance implies resonance (integer parameters are
        // always resonant via the empty face, so check a sharper form:
        // the witnessing face exists whenever a witness exists).
        if report.strongly_resonant {
            assert!(report.resonant, "strongly resonant but not resonant at ({b1}, {b2})");
            assert!(is_resonant(&g, &beta).is_some());
        }

        // Escape-shift minimality: k_min escapes, k_min - 1 does not.
        let k = report.minimal_shift_full;
        let shifted = |k: u64| -> Vec<BigRational> {
            beta.iter()
                .zip(&eps)
                .map(|(b, e)| b + BigRational::from(e * BigInt::from(k)))
                .collect()
        };
        assert!(
            sres(&g, &shifted(k)).iter().all(Option::is_none),
            "k_min = {k} fails to escape at ({b1}, {b2})"
        );
        if k > 0 {
            assert!(
                sres(&g, &shifted(k - 1)).iter().any(Option::is_some),
                "k_min = {k} is not minimal at ({b1}, {b2})"
            );
        }
    }
    println!("PASS criterion 5: 200 random parameters: verdicts, implication, minimality");
}

#[test]
fn criterion_6_contiguity_export_matches_the_golden_script() {
    let g = running_example();
    let beta = q(&[1, -1]);
    let script = export_script(
        &g,
        "macaulay2",
        &ExportPayload::Contiguity { beta: &beta, j: 1 },
    )
    .unwrap();
    // Byte-for-byte against the checked-in artifact. Nothing is
    // executed: the comparison is the whole check.
    let golden = include_str!("golden/running_example_contiguity.m2");
    assert_eq!(script, golden, "generated script drifted from the golden file");
    println!("PASS criterion 6: contiguity export is byte-identical to the golden script");
}
