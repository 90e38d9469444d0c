//! Systems of Hermitian quadrics `Σ_k γ_jk |z_k|² = rhs_j` and the three
//! conditions (nonempty, nondegenerate, rational) that make their common zero
//! set a smooth manifold.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{
    cone_feasible, dual_lattice_basis, RatMatrix, Rational, ScaledLattice,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadricError {
    #[error("coefficient rows have {found} columns, expected m = {m}")]
    RowLength { m: usize, found: usize },
    #[error("{rows} coefficient rows but {rhs} right-hand sides")]
    RhsLength { rows: usize, rhs: usize },
    #[error("{quadrics} quadrics in C^{m}: at most m are allowed")]
    TooManyQuadrics { m: usize, quadrics: usize },
    #[error("cannot combine systems in C^{left} and C^{right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// The three conditions on a quadric system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// The right-hand side lies in the cone of the coefficient columns.
    A,
    /// The right-hand side lies in no cone of fewer than `num_quadrics` columns.
    B,
    /// The coefficient columns span a full-rank lattice.
    C,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "condition (a)",
            Condition::B => "condition (b)",
            Condition::C => "condition (c)",
        })
    }
}

/// `num_quadrics` Hermitian quadrics in `C^m` with exact rational data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricSystem {
    m: usize,
    coeffs: RatMatrix,
    rhs: Vec<Rational>,
}

impl QuadricSystem {
    pub fn new(m: usize, rows: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self, QuadricError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(QuadricError::RowLength { m, found: bad.len() });
        }
        if rows.len() != rhs.len() {
            return Err(QuadricError::RhsLength { rows: rows.len(), rhs: rhs.len() });
        }
        if rows.len() > m {
            return Err(QuadricError::TooManyQuadrics { m, quadrics: rows.len() });
        }
        let coeffs = RatMatrix::from_rows(m, &rows).expect("row lengths checked");
        Ok(QuadricSystem { m, coeffs, rhs })
    }

    /// Integer coefficients and right-hand side; convenient for tests and examples.
    pub fn from_i64(m: usize, rows: &[&[i64]], rhs: &[Rational]) -> Result<Self, QuadricError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::exactlin::int(v)).collect())
            .collect();
        Self::new(m, rows, rhs.to_vec())
    }

    /// The system with no equations; its zero set is all of `C^m`.
    pub fn empty(m: usize) -> Self {
        QuadricSystem { m, coeffs: RatMatrix::zeros(0, m), rhs: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_quadrics(&self) -> usize {
        self.coeffs.rows()
    }

    /// Dimension of the associated polyhedron, `m − num_quadrics`.
    pub fn n(&self) -> usize {
        self.m - self.num_quadrics()
    }

    pub fn is_empty(&self) -> bool {
        self.num_quadrics() == 0
    }

    pub fn coeffs(&self) -> &RatMatrix {
        &self.coeffs
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// The coefficient vector `γ_k` of coordinate `k` (a column).
    pub fn gamma(&self, k: usize) -> Vec<Rational> {
        self.coeffs.column(k)
    }

    /// Reorders the quadrics; `order[i]` is the old index of new row `i`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        QuadricSystem {
            m: self.m,
            coeffs: self.coeffs.select_rows(order),
            rhs: order.iter().map(|&i| self.rhs[i].clone()).collect(),
        }
    }

    /// True when `rhs` is a nonnegative combination of the columns in `subset`.
    pub fn rhs_in_cone_of(&self, subset: &[usize]) -> bool {
        cone_feasible(&self.coeffs.select_columns(subset), &self.rhs).is_feasible()
    }
}

/// Concatenates two systems in the same `C^m`: `gamma` rows first.
pub fn stack(gamma: &QuadricSystem, delta: &QuadricSystem) -> Result<QuadricSystem, QuadricError> {
    if gamma.m != delta.m {
        return Err(QuadricError::DimensionMismatch { left: gamma.m, right: delta.m });
    }
    let quadrics = gamma.num_quadrics() + delta.num_quadrics();
    if quadrics > gamma.m {
        return Err(QuadricError::TooManyQuadrics { m: gamma.m, quadrics });
    }
    let coeffs = gamma.coeffs.vstack(&delta.coeffs).expect("same m");
    let mut rhs = gamma.rhs.clone();
    rhs.extend(delta.rhs.iter().cloned());
    Ok(QuadricSystem { m: gamma.m, coeffs, rhs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionA {
    pub pass: bool,
    /// `y ≥ 0` with `coeffs·y = rhs`.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionB {
    pub pass: bool,
    /// Zero-based column indices whose cone already contains `rhs`.
    pub violating_subset: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionC {
    pub pass: bool,
    pub rank: usize,
    pub lattice: Option<LatticeData>,
}

/// The lattice `L` of the coefficient columns and the groups built from it:
/// the torus `R^k / L*` and its 2-torsion subgroup `(½L*)/L*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeData {
    pub lattice: ScaledLattice,
    pub dual_basis: Vec<Vec<Rational>>,
    pub torus_rank: usize,
    pub two_group_order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationVerdict {
    pub cond_a: ConditionA,
    pub cond_b: ConditionB,
    pub cond_c: ConditionC,
    /// Real dimension `m + n` of the quadric intersection, when all conditions hold.
    pub smooth_dim_z: Option<usize>,
}

impl ValidationVerdict {
    pub fn all_pass(&self) -> bool {
        self.smooth_dim_z.is_some()
    }

    pub fn failed_conditions(&self) -> Vec<Condition> {
        let mut out = Vec::new();
        if !self.cond_a.pass {
            out.push(Condition::A);
        }
        if !self.cond_b.pass {
            out.push(Condition::B);
        }
        if !self.cond_c.pass {
            out.push(Condition::C);
        }
        out
    }

    pub fn first_failure(&self) -> Option<Condition> {
        self.failed_conditions().into_iter().next()
    }
}

pub fn check_condition_a(sys: &QuadricSystem) -> ConditionA {
    let witness = cone_feasible(&sys.coeffs, &sys.rhs).witness;
    ConditionA { pass: witness.is_some(), witness }
}

/// Nondegeneracy: `rhs` must not lie in the cone of fewer than
/// `num_quadrics` coefficient columns.
///
/// Only subsets of size exactly `num_quadrics − 1` are tried. Cones grow
/// under inclusion and every smaller subset sits inside one of that size
/// (because `num_quadrics ≤ m`), so a smaller violating subset forces a
/// violating subset of size `num_quadrics − 1`.
pub fn check_condition_b(sys: &QuadricSystem) -> ConditionB {
    let k = sys.num_quadrics();
    if k == 0 {
        return ConditionB { pass: true, violating_subset: None };
    }
    if sys.rhs.iter().all(Zero::is_zero) {
        return ConditionB { pass: false, violating_subset: Some(Vec::new()) };
    }
    let violating = (0..sys.m).combinations(k - 1).find(|subset| sys.rhs_in_cone_of(subset));
    ConditionB { pass: violating.is_none(), violating_subset: violating }
}

pub fn check_condition_c(sys: &QuadricSystem) -> ConditionC {
    let k = sys.num_quadrics();
    let rank = sys.coeffs.rank();
    if rank != k {
        return ConditionC { pass: false, rank, lattice: None };
    }
    let columns: Vec<Vec<Rational>> = (0..sys.m).map(|j| sys.gamma(j)).collect();
    let lattice = ScaledLattice::generated_by(k, &columns);
    let dual_basis = dual_lattice_basis(&lattice.basis()).expect("full rank lattice has a dual");
    let data = LatticeData {
        lattice,
        dual_basis,
        torus_rank: k,
        two_group_order: BigUint::one() << k,
    };
    ConditionC { pass: true, rank, lattice: Some(data) }
}

pub fn validate(sys: &QuadricSystem) -> ValidationVerdict {
    let cond_a = check_condition_a(sys);
    let cond_b = check_condition_b(sys);
    let cond_c = check_condition_c(sys);
    let smooth_dim_z = (cond_a.pass && cond_b.pass && cond_c.pass).then(|| sys.m + sys.n());
    ValidationVerdict { cond_a, cond_b, cond_c, smooth_dim_z }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{dot, int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(
            QuadricSystem::from_i64(3, &[&[1, 1]], &ints(&[1])),
            Err(QuadricError::RowLength { m: 3, found: 2 })
        );
        assert_eq!(
            QuadricSystem::from_i64(2, &[&[1, 1]], &[]),
            Err(QuadricError::RhsLength { rows: 1, rhs: 0 })
        );
        assert!(matches!(
            QuadricSystem::from_i64(1, &[&[1], &[2]], &ints(&[1, 1])),
            Err(QuadricError::TooManyQuadrics { .. })
        ));
    }

    #[test]
    fn condition_a_examples() {
        let sphere = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &ints(&[1])).unwrap();
        assert!(check_condition_a(&sphere).pass);

        let negative = QuadricSystem::from_i64(2, &[&[1, 1]], &ints(&[-1])).unwrap();
        let a = check_condition_a(&negative);
        assert!(!a.pass);
        assert!(a.witness.is_none());

        assert!(check_condition_a(&QuadricSystem::empty(4)).pass);
    }

    #[test]
    fn condition_b_examples() {
        let ray = QuadricSystem::from_i64(2, &[&[1, 0], &[0, 1]], &ints(&[1, 0])).unwrap();
        let b = check_condition_b(&ray);
        assert!(!b.pass);
        assert_eq!(b.violating_subset, Some(vec![0]));

        let sphere = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &ints(&[1])).unwrap();
        assert!(check_condition_b(&sphere).pass);

        // γ_3 = (1, 1) is the right-hand side itself.
        let two = QuadricSystem::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]], &ints(&[1, 1])).unwrap();
        let b = check_condition_b(&two);
        assert!(!b.pass);
        assert_eq!(b.violating_subset, Some(vec![2]));

        let two = QuadricSystem::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]], &ints(&[2, 1])).unwrap();
        assert!(check_condition_b(&two).pass);
    }

    #[test]
    fn condition_b_zero_rhs_fails_with_empty_subset() {
        let sys = QuadricSystem::from_i64(2, &[&[1, -1]], &ints(&[0])).unwrap();
        let b = check_condition_b(&sys);
        assert!(!b.pass);
        assert_eq!(b.violating_subset, Some(vec![]));
        assert!(check_condition_b(&QuadricSystem::empty(2)).pass);
    }

    #[test]
    fn condition_c_examples() {
        let sphere = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &ints(&[1])).unwrap();
        let c = check_condition_c(&sphere);
        assert!(c.pass);
        let l = c.lattice.unwrap();
        assert_eq!(l.torus_rank, 1);
        assert_eq!(l.two_group_order, BigUint::from(2u8));

        let degenerate = QuadricSystem::from_i64(2, &[&[1, 1], &[1, 1]], &ints(&[1, 1])).unwrap();
        let c = check_condition_c(&degenerate);
        assert!(!c.pass);
        assert_eq!(c.rank, 1);

        let two = QuadricSystem::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]], &ints(&[1, 1])).unwrap();
        let l = check_condition_c(&two).lattice.unwrap();
        assert_eq!(l.lattice.basis(), vec![ints(&[1, 0]), ints(&[0, 1])]);
        assert_eq!(l.dual_basis, vec![ints(&[1, 0]), ints(&[0, 1])]);
        assert_eq!(l.two_group_order, BigUint::from(4u8));
    }

    #[test]
    fn rational_coefficients_give_a_scaled_lattice() {
        let sys = QuadricSystem::new(2, vec![vec![rat(1, 2), rat(3, 2)]], vec![int(1)]).unwrap();
        let l = check_condition_c(&sys).lattice.unwrap();
        assert_eq!(l.lattice.basis(), vec![vec![rat(1, 2)]]);
        assert_eq!(l.dual_basis, vec![vec![int(2)]]);
        assert_eq!(dot(&l.lattice.basis()[0], &l.dual_basis[0]), int(1));
    }

    #[test]
    fn validate_examples() {
        let sphere = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &ints(&[1])).unwrap();
        assert_eq!(validate(&sphere).smooth_dim_z, Some(5));

        let ray = QuadricSystem::from_i64(2, &[&[1, 0], &[0, 1]], &ints(&[1, 0])).unwrap();
        let v = validate(&ray);
        assert!(!v.cond_b.pass);
        assert_eq!(v.smooth_dim_z, None);
        assert_eq!(v.first_failure(), Some(Condition::B));

        let v = validate(&QuadricSystem::empty(2));
        assert_eq!(v.smooth_dim_z, Some(4));
        assert_eq!(v.cond_c.lattice.unwrap().two_group_order, BigUint::one());
    }

    #[test]
    fn stack_examples() {
        let g = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &ints(&[1])).unwrap();
        let d = QuadricSystem::new(3, vec![ints(&[1, 1, 0])], vec![rat(1, 2)]).unwrap();
        let s = stack(&g, &d).unwrap();
        assert_eq!(s.num_quadrics(), 2);
        assert_eq!(s.rhs(), &[int(1), rat(1, 2)]);
        assert_eq!(s.coeffs().rank(), 2);

        assert_eq!(stack(&QuadricSystem::empty(3), &d).unwrap(), d);
        assert_eq!(stack(&g, &QuadricSystem::empty(3)).unwrap(), g);
        assert!(matches!(
            stack(&g, &QuadricSystem::empty(2)),
            Err(QuadricError::DimensionMismatch { left: 3, right: 2 })
        ));
    }
}
