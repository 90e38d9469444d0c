//! Test-only oracles and generators. The oracles here do not call into the
//! library's linear algebra so they can check it independently.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use toric_lagrangian::quadrics::{validate, QuadricSystem};

pub type Q = BigRational;

pub fn q(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Plain Gauss-Jordan on a dense `Vec<Vec<Q>>`. Returns the unique solution
/// of a square or overdetermined consistent system with independent
/// columns, `None` otherwise.
pub fn oracle_unique_solution(cols: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let rows = rhs.len();
    let n = cols.len();
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut piv_row = 0;
    for col in 0..n {
        let p = (piv_row..rows).find(|&i| !a[i][col].is_zero())?;
        a.swap(p, piv_row);
        let inv = a[piv_row][col].recip();
        for x in a[piv_row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != piv_row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let src = a[piv_row].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x = &*x - &f * s;
                }
            }
        }
        piv_row += 1;
    }
    if (piv_row..rows).any(|i| !a[i][n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

pub fn oracle_rank(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(p, r);
        for i in r + 1..a.len() {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[r][col];
                let src = a[r].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x = &*x - &f * s;
                }
            }
        }
        r += 1;
    }
    r
}

/// Cone membership by Carathéodory: `rhs` is a nonnegative combination of
/// `columns` iff it is a nonnegative combination of some linearly
/// independent subset, whose coefficients are then unique.
pub fn oracle_in_cone(columns: &[Vec<Q>], rhs: &[Q]) -> bool {
    if rhs.iter().all(Zero::is_zero) {
        return true;
    }
    let max = columns.len().min(rhs.len());
    for size in 1..=max {
        for subset in (0..columns.len()).combinations(size) {
            let cols: Vec<Vec<Q>> = subset.iter().map(|&i| columns[i].clone()).collect();
            if oracle_rank(&cols) < size {
                continue;
            }
            if let Some(y) = oracle_unique_solution(&cols, rhs) {
                if y.iter().all(|v| !v.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn columns(sys: &QuadricSystem) -> Vec<Vec<Q>> {
    (0..sys.m()).map(|k| sys.gamma(k)).collect()
}

/// Condition (b) straight from its definition: no subset of fewer than
/// `num_quadrics` columns has `rhs` in its cone.
pub fn oracle_condition_b(sys: &QuadricSystem) -> bool {
    let k = sys.num_quadrics();
    let cols = columns(sys);
    for size in 0..k {
        for subset in (0..sys.m()).combinations(size) {
            let sub: Vec<Vec<Q>> = subset.iter().map(|&i| cols[i].clone()).collect();
            if oracle_in_cone(&sub, sys.rhs()) {
                return false;
            }
        }
    }
    true
}

pub fn random_system(rng: &mut impl Rng, m: usize, k: usize, entries: &[i64]) -> QuadricSystem {
    let rows: Vec<Vec<Q>> =
        (0..k).map(|_| (0..m).map(|_| q(entries[rng.random_range(0..entries.len())])).collect()).collect();
    // rhs = Γ·y0 for a positive y0 keeps condition (a) satisfied.
    let y0: Vec<Q> = (0..m).map(|_| Q::new(rng.random_range(1..=4).into(), rng.random_range(1..=3).into())).collect();
    let rhs = rows.iter().map(|r| r.iter().zip(&y0).map(|(a, b)| a * b).sum()).collect();
    QuadricSystem::new(m, rows, rhs).unwrap()
}

/// A random system with `m ≤ max_m` that passes conditions (a)–(c).
pub fn random_validated_system(rng: &mut impl Rng, max_m: usize) -> QuadricSystem {
    loop {
        let m = rng.random_range(1..=max_m);
        let k = rng.random_range(0..=m.min(3));
        let sys = random_system(rng, m, k, &[-1, 0, 1, 2]);
        if validate(&sys).all_pass() {
            return sys;
        }
    }
}

pub fn random_rational(rng: &mut impl Rng) -> Q {
    Q::new(rng.random_range(-50..=50).into(), rng.random_range(1..=12).into())
}

/// Random product of elementary integer matrices (determinant ±1).
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<BigInt>> {
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    if n == 0 {
        return u;
    }
    for _ in 0..(3 * n + 2) {
        match rng.random_range(0..3) {
            0 if n > 1 => {
                let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
                if a != b {
                    let f = BigInt::from(rng.random_range(-2..=2));
                    let src = u[b].clone();
                    for (x, s) in u[a].iter_mut().zip(&src) {
                        *x += &f * s;
                    }
                }
            }
            1 if n > 1 => {
                let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
                u.swap(a, b);
            }
            _ => {
                let a = rng.random_range(0..n);
                for x in u[a].iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    u
}
