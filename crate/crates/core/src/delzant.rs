//! The Delzant test: at every vertex the tight normals must form a basis of
//! the lattice `Λ` spanned by all normals.
//!
//! `n` vectors of `Λ` form a basis exactly when the absolute value of their
//! determinant equals the covolume of `Λ` (their span has index `|det|/covol`),
//! so no per-vertex HNF is needed.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactlin::{RatMatrix, Rational};
use crate::gale::{build_polyhedron, gale_dual, Polyhedron};
use crate::quadrics::{validate, Condition, QuadricSystem, ValidationVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    /// More than `n` inequalities are tight.
    NonSimple,
    /// Simple vertex whose normals span a sublattice of index `ratio`.
    Determinant { abs_det: BigInt, ratio: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantFailure {
    pub point: Vec<Rational>,
    pub active_set: Vec<usize>,
    pub normals: Vec<Vec<BigInt>>,
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantVerdict {
    pub is_delzant: bool,
    pub failures: Vec<DelzantFailure>,
    pub lambda_covolume: BigInt,
    /// `|det|/covolume` for every simple vertex, in vertex order.
    pub vertex_ratios: Vec<Rational>,
}

pub fn check_delzant(p: &Polyhedron) -> DelzantVerdict {
    let gd = &p.gale;
    let n = gd.n;
    // Λ has rank n because the a_i come from a rank-n kernel; the fallback is
    // only reachable through hand-built configurations.
    let covolume = gd.lambda.covolume.clone().unwrap_or_else(BigInt::one);
    let mut failures = Vec::new();
    let mut vertex_ratios = Vec::new();
    for v in &p.vertices {
        let normals: Vec<Vec<BigInt>> =
            v.active_set.iter().map(|&i| gd.a_vectors[i].clone()).collect();
        if v.active_set.len() != n {
            failures.push(DelzantFailure {
                point: v.point.clone(),
                active_set: v.active_set.clone(),
                normals,
                kind: FailureKind::NonSimple,
            });
            continue;
        }
        let det = RatMatrix::from_int_rows(n, &normals).expect("normals in Z^n").determinant();
        let abs_det = det.abs().to_integer();
        let ratio = Rational::new(abs_det.clone(), covolume.clone());
        vertex_ratios.push(ratio.clone());
        if abs_det != covolume {
            failures.push(DelzantFailure {
                point: v.point.clone(),
                active_set: v.active_set.clone(),
                normals,
                kind: FailureKind::Determinant { abs_det, ratio },
            });
        }
    }
    DelzantVerdict {
        is_delzant: failures.is_empty(),
        failures,
        lambda_covolume: covolume,
        vertex_ratios,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{condition} fails")]
pub struct ValidationFailure {
    pub condition: Condition,
    pub verdict: Box<ValidationVerdict>,
}

/// Full embedding test for a quadric system: validation, Gale dual, vertex
/// enumeration and the Delzant check.
pub fn embedding_criterion(sys: &QuadricSystem) -> Result<(bool, DelzantVerdict), ValidationFailure> {
    let verdict = validate(sys);
    if let Some(condition) = verdict.first_failure() {
        return Err(ValidationFailure { condition, verdict: Box::new(verdict) });
    }
    let gd = gale_dual(sys).expect("validated system has a Gale dual");
    let d = check_delzant(&build_polyhedron(&gd));
    Ok((d.is_delzant, d))
}
