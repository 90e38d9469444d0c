//! Gale duality and the associated polyhedron
//! `P = {x ∈ R^n : ⟨a_i, x⟩ + b_i ≥ 0, i = 1..m}`.
//!
//! The vectors `a_i` are the rows of the transpose of a saturated integer
//! basis of `ker Γ`, so `y = A·x + b` parametrizes every solution of
//! `Γ·y = rhs` and `P` is the set of parameters giving `y ≥ 0`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{
    cone_feasible, dot, hnf, integer_kernel_basis, solve_linear, IntLatticeBasis, RatMatrix,
    Rational,
};
use crate::quadrics::{check_condition_a, check_condition_c, Condition, QuadricSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaleError {
    #[error("{0} fails; the Gale dual is undefined")]
    Condition(Condition),
    #[error("expected {expected} vectors of length {n}, found a vector of length {found}")]
    Shape { expected: usize, n: usize, found: usize },
    #[error("rebasing matrix is not unimodular")]
    NotUnimodular,
}

/// The Gale-dual configuration `a_1..a_m ∈ Z^n` with an offset `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleDual {
    pub n: usize,
    pub a_vectors: Vec<Vec<BigInt>>,
    pub b_offsets: Vec<Rational>,
    /// The lattice `Λ` spanned by the `a_i`, in HNF.
    pub lambda: IntLatticeBasis,
}

impl GaleDual {
    /// Builds a configuration from explicit normals and offsets.
    pub fn from_parts(
        n: usize,
        a_vectors: Vec<Vec<BigInt>>,
        b_offsets: Vec<Rational>,
    ) -> Result<Self, GaleError> {
        if let Some(bad) = a_vectors.iter().find(|a| a.len() != n) {
            return Err(GaleError::Shape { expected: a_vectors.len(), n, found: bad.len() });
        }
        if b_offsets.len() != a_vectors.len() {
            return Err(GaleError::Shape {
                expected: a_vectors.len(),
                n: b_offsets.len(),
                found: a_vectors.len(),
            });
        }
        let lambda = hnf(n, &a_vectors);
        Ok(GaleDual { n, a_vectors, b_offsets, lambda })
    }

    pub fn m(&self) -> usize {
        self.a_vectors.len()
    }

    /// The `m × n` matrix with rows `a_i`.
    pub fn a_matrix(&self) -> RatMatrix {
        RatMatrix::from_int_rows(self.n, &self.a_vectors).expect("a_i share length n")
    }

    /// `y = A·x + b`.
    pub fn to_y(&self, x: &[Rational]) -> Vec<Rational> {
        self.a_matrix()
            .mul_vec(x)
            .into_iter()
            .zip(&self.b_offsets)
            .map(|(ax, b)| ax + b)
            .collect()
    }

    /// Value of the `i`-th inequality `⟨a_i, x⟩ + b_i` at `x`.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        let a: Vec<Rational> =
            self.a_vectors[i].iter().map(|v| Rational::from_integer(v.clone())).collect();
        dot(&a, x) + &self.b_offsets[i]
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        (0..self.m()).all(|i| !self.slack(i, x).is_negative())
    }

    /// Replaces the kernel basis `K` by `U·K` for a unimodular `U`; each
    /// `a_i` becomes `U·a_i`. The polyhedron is mapped by `x ↦ U⁻ᵀ x`.
    pub fn rebase(&self, unimodular: &[Vec<BigInt>]) -> Result<Self, GaleError> {
        let u = RatMatrix::from_int_rows(self.n, unimodular)
            .map_err(|_| GaleError::NotUnimodular)?;
        if u.rows() != self.n || !u.determinant().abs().is_one() {
            return Err(GaleError::NotUnimodular);
        }
        let a_vectors = self
            .a_vectors
            .iter()
            .map(|a| {
                (0..self.n)
                    .map(|r| unimodular[r].iter().zip(a).map(|(u, v)| u * v).sum())
                    .collect()
            })
            .collect();
        Self::from_parts(self.n, a_vectors, self.b_offsets.clone())
    }

    /// Translates the polyhedron by `−shift`: `b ↦ b + A·shift`. The vector
    /// `A·shift` lies in `ker Γ`, so the quadric right-hand side is unchanged.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        let mut out = self.clone();
        out.b_offsets = self.to_y(shift);
        out
    }
}

/// Gale dual of a quadric system that satisfies conditions (a) and (c).
pub fn gale_dual(sys: &QuadricSystem) -> Result<GaleDual, GaleError> {
    if !check_condition_a(sys).pass {
        return Err(GaleError::Condition(Condition::A));
    }
    if !check_condition_c(sys).pass {
        return Err(GaleError::Condition(Condition::C));
    }
    let kernel = integer_kernel_basis(sys.coeffs());
    let n = kernel.rank();
    debug_assert_eq!(n, sys.n());
    let a_vectors: Vec<Vec<BigInt>> =
        (0..sys.m()).map(|i| kernel.basis.iter().map(|k| k[i].clone()).collect()).collect();
    let b_offsets = solve_linear(sys.coeffs(), sys.rhs()).expect("condition (a) gives a solution");
    GaleDual::from_parts(n, a_vectors, b_offsets)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rational>,
    /// Zero-based indices of the inequalities that are tight at `point`.
    pub active_set: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    pub gale: GaleDual,
    /// Sorted by active set.
    pub vertices: Vec<Vertex>,
    pub is_simple: bool,
    pub is_bounded: bool,
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        self.gale.n
    }
}

/// Enumerates the vertices of `P` exactly by solving every `n × n` subsystem
/// of tight inequalities and keeping the feasible solutions.
pub fn build_polyhedron(gd: &GaleDual) -> Polyhedron {
    let n = gd.n;
    let a = gd.a_matrix();
    let mut found: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    for subset in (0..gd.m()).combinations(n) {
        let sub = a.select_rows(&subset);
        if sub.determinant().is_zero() {
            continue;
        }
        let rhs: Vec<Rational> = subset.iter().map(|&i| -gd.b_offsets[i].clone()).collect();
        let x = solve_linear(&sub, &rhs).expect("invertible subsystem");
        if gd.contains(&x) {
            found.insert(x, ());
        }
    }
    let mut vertices: Vec<Vertex> = found
        .into_keys()
        .map(|point| {
            let active_set = (0..gd.m()).filter(|&i| gd.slack(i, &point).is_zero()).collect();
            Vertex { point, active_set }
        })
        .collect();
    vertices.sort_by(|u, v| u.active_set.cmp(&v.active_set));
    let is_simple = vertices.iter().all(|v| v.active_set.len() == n);
    let is_bounded = recession_cone_is_trivial(gd);
    Polyhedron { gale: gd.clone(), vertices, is_simple, is_bounded }
}

/// `{x : A·x ≥ 0} = {0}` for a full-column-rank `A` holds exactly when some
/// strictly positive `y` has `Aᵀ·y = 0`. Substituting `y = 1 + s` turns this
/// into cone membership: `Aᵀ·s = −Aᵀ·1` with `s ≥ 0`.
fn recession_cone_is_trivial(gd: &GaleDual) -> bool {
    if gd.n == 0 {
        return true;
    }
    let at = gd.a_matrix().transpose();
    if at.rank() < gd.n {
        // A line lies in the recession cone.
        return false;
    }
    let ones = vec![Rational::one(); gd.m()];
    let target: Vec<Rational> = at.mul_vec(&ones).into_iter().map(|v| -v).collect();
    cone_feasible(&at, &target).is_feasible()
}
