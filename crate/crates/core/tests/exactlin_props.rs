mod common;

use common::*;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use toric_lagrangian::exactlin::*;

fn small_matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(lo..=hi, rows * cols).prop_map(move |v| {
        let rs: Vec<Vec<Rational>> = v.chunks(cols.max(1)).take(rows).map(|c| c.iter().map(|&x| int(x)).collect()).collect();
        RatMatrix::from_rows(cols, &rs).unwrap()
    })
}

proptest! {
    #[test]
    fn solve_linear_solutions_are_exact(
        a in small_matrix(3, 4, -3, 3),
        rhs in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let rhs: Vec<Rational> = rhs.into_iter().map(int).collect();
        if let Some(x) = solve_linear(&a, &rhs) {
            prop_assert_eq!(a.mul_vec(&x), rhs);
        } else {
            // Inconsistent: the augmented matrix has larger rank.
            let mut rows = a.row_vecs();
            for (r, b) in rows.iter_mut().zip(&rhs) {
                r.push(b.clone());
            }
            prop_assert!(oracle_rank(&rows) > oracle_rank(&a.row_vecs()));
        }
    }

    #[test]
    fn rational_kernel_has_full_dimension(a in small_matrix(2, 5, -3, 3)) {
        let k = rational_kernel_basis(&a);
        prop_assert_eq!(k.len(), 5 - oracle_rank(&a.row_vecs()));
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            prop_assert_eq!(oracle_rank(&k), k.len());
        }
    }

    #[test]
    fn hnf_is_canonical_under_row_operations(
        rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 1..5),
        swap in (0usize..5, 0usize..5),
        add in (0usize..5, 0usize..5),
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let h = hnf(3, &big);
        prop_assert_eq!(&hnf(3, &h.basis), &h);

        let mut swapped = big.clone();
        let (i, j) = (swap.0 % big.len(), swap.1 % big.len());
        swapped.swap(i, j);
        prop_assert_eq!(&hnf(3, &swapped), &h);

        let mut added = big.clone();
        let (i, j) = (add.0 % big.len(), add.1 % big.len());
        if i != j {
            let src = added[j].clone();
            for (x, s) in added[i].iter_mut().zip(&src) {
                *x += s;
            }
        }
        prop_assert_eq!(&hnf(3, &added), &h);

        // Every input row lies in the lattice of the basis.
        for r in &big {
            prop_assert!(h.contains(r));
        }
    }

    #[test]
    fn dual_basis_pairs_to_identity(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 3)) {
        let b: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        match dual_lattice_basis(&b) {
            Ok(d) => {
                for (i, bi) in b.iter().enumerate() {
                    for (j, dj) in d.iter().enumerate() {
                        prop_assert_eq!(dot(bi, dj), int(i64::from(i == j)));
                    }
                }
            }
            Err(_) => prop_assert!(oracle_rank(&b) < 3),
        }
    }
}

#[test]
fn hnf_covolume_matches_determinant_gcd() {
    // For rows (2,0),(0,2),(1,1): gcd of 2x2 minors = gcd(4, 2, -2) = 2.
    let rows = vec![
        vec![BigInt::from(2), BigInt::from(0)],
        vec![BigInt::from(0), BigInt::from(2)],
        vec![BigInt::from(1), BigInt::from(1)],
    ];
    let minors_gcd = rows
        .iter()
        .tuple_combinations()
        .map(|(a, b)| (&a[0] * &b[1] - &a[1] * &b[0]).abs())
        .fold(BigInt::zero(), |g, d| num_integer::Integer::gcd(&g, &d));
    assert_eq!(hnf(2, &rows).covolume, Some(minors_gcd));
}

#[test]
fn integer_kernel_of_zero_sum_generates_brute_force_vectors() {
    let a = RatMatrix::from_i64(3, &[&[1, 1, 1]]);
    let k = integer_kernel_basis(&a);
    let mut seen = 0;
    for v in (0..3).map(|_| -3i64..=3).multi_cartesian_product() {
        if v.iter().sum::<i64>() == 0 {
            let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            assert!(k.contains(&big), "{v:?} not generated");
            seen += 1;
        }
    }
    assert_eq!(seen, 37);
}

/// 100 random 2×4 integer matrices: every integer kernel vector with
/// coordinates in [−5, 5] lies in the integer span of the returned basis.
#[test]
fn integer_kernel_is_saturated() {
    let mut r = rng(2024);
    for _ in 0..100 {
        let a: Vec<Vec<i64>> = (0..2).map(|_| (0..4).map(|_| r.random_range(-3..=3)).collect()).collect();
        let refs: Vec<&[i64]> = a.iter().map(|v| v.as_slice()).collect();
        let mat = RatMatrix::from_i64(4, &refs);
        let k = integer_kernel_basis(&mat);
        assert_eq!(k.rank(), 4 - oracle_rank(&mat.row_vecs()));
        for v in (0..4).map(|_| -5i64..=5).multi_cartesian_product() {
            let in_kernel = a.iter().all(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>() == 0);
            if in_kernel {
                let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                assert!(k.contains(&big), "{a:?}: {v:?} not in span");
            }
        }
    }
}

/// cone_feasible agrees with basic-solution enumeration on every system with
/// at most 4 columns and entries in {−2..2} (seeded sample of shapes).
#[test]
fn cone_feasibility_agrees_with_brute_force() {
    let mut r = rng(7);
    let mut feasible = 0;
    for _ in 0..3000 {
        let rows = r.random_range(1..=2);
        let cols = r.random_range(1..=4);
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.random_range(-2..=2)).collect()).collect();
        let rhs: Vec<Rational> = (0..rows).map(|_| int(r.random_range(-2..=2))).collect();
        let refs: Vec<&[i64]> = a.iter().map(|v| v.as_slice()).collect();
        let mat = RatMatrix::from_i64(cols, &refs);
        let got = cone_feasible(&mat, &rhs);
        let cols_q: Vec<Vec<Rational>> = (0..cols).map(|j| mat.column(j)).collect();
        let expected = oracle_in_cone(&cols_q, &rhs);
        assert_eq!(got.is_feasible(), expected, "{a:?} rhs {rhs:?}");
        if let Some(y) = got.witness {
            assert!(y.iter().all(|v| !v.is_negative()));
            assert_eq!(mat.mul_vec(&y), rhs);
            feasible += 1;
        }
    }
    assert!(feasible > 100);
}

#[test]
fn cone_feasibility_exhaustive_single_row() {
    for a in (0..3).map(|_| -2i64..=2).multi_cartesian_product() {
        for b in -2i64..=2 {
            let mat = RatMatrix::from_i64(3, &[&a]);
            let expected = b == 0 || a.iter().any(|&x| x != 0 && x.signum() == b.signum());
            assert_eq!(cone_feasible(&mat, &[int(b)]).is_feasible(), expected, "{a:?} {b}");
        }
    }
}
