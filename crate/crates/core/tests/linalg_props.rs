use factorsys::linalg::is_zero_vec;
use factorsys::{FieldElem, FieldSpec, Matrix};
use proptest::prelude::*;

fn gf7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

fn matrix(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_rows(
        field,
        cols,
        entries
            .chunks(cols)
            .take(rows)
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect(),
    )
}

/// Rank by counting nonzero minors of each size; independent of elimination.
fn rank_by_minors(m: &Matrix) -> usize {
    fn det(m: &[Vec<FieldElem>]) -> FieldElem {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = m[0][0].field().zero();
        for c in 0..n {
            let minor: Vec<Vec<FieldElem>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * &det(&minor);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let (r, c) = m.shape();
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<FieldElem>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant(entries in prop::collection::vec(0i64..7, 25)) {
        let m = matrix(gf7(), 5, 5, &entries);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_matches_minors(rows in 1usize..4, cols in 1usize..5, entries in prop::collection::vec(-3i64..4, 16)) {
        for field in [gf7(), FieldSpec::rationals()] {
            let m = matrix(field, rows, cols, &entries);
            prop_assert_eq!(m.rank(), rank_by_minors(&m));
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-4i64..5, 36)) {
        for field in [gf7(), FieldSpec::rationals()] {
            let m = matrix(field, rows, cols, &entries);
            let kernel = m.kernel_basis();
            prop_assert_eq!(kernel.len() + m.rank(), cols);
            for v in &kernel {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }
    }

    #[test]
    fn rational_sums_are_exact(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let q = FieldSpec::rationals();
        let frac = |n: i64, m: i64| &q.from_i64(n) * &q.from_i64(m).inv().unwrap();
        let direct = &frac(a, b) + &frac(c, d);
        let common = frac(a * d + c * b, b * d);
        prop_assert_eq!(direct.to_string(), common.to_string());
        prop_assert_eq!(q.parse(&direct.to_string()).unwrap(), direct);
    }

    #[test]
    fn inverse_is_two_sided(entries in prop::collection::vec(-5i64..6, 16)) {
        let m = matrix(FieldSpec::rationals(), 4, 4, &entries);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(m.field(), 4));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(m.field(), 4));
            }
            None => prop_assert!(m.rank() < 4),
        }
    }
}

#[test]
fn solve_affine_reproduces_rhs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for case in 0..1000 {
        let field = if case % 2 == 0 { gf7() } else { FieldSpec::rationals() };
        let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-3..4)).collect();
        let m = matrix(field, rows, cols, &entries);
        let x: Vec<FieldElem> = (0..cols).map(|_| field.from_i64(rng.gen_range(-5..6))).collect();
        let b = m.mul_vec(&x);
        let sol = m.solve_affine(&b).expect("b is in the image by construction");
        assert_eq!(m.mul_vec(&sol.particular), b, "case {case}");
        for v in &sol.kernel {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }
}

#[test]
fn inconsistent_system_has_no_solution() {
    let q = FieldSpec::rationals();
    let m = matrix(q, 2, 2, &[1, 1, 2, 2]);
    assert!(m.solve_affine(&[q.one(), q.zero()]).is_none());
}
