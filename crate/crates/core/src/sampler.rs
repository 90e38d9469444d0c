//! Numerical certificates for the Lagrangian and immersion properties.
//!
//! Points of the real intersection `R_Γ ∩ R_Δ` are drawn from the stacked
//! associated polyhedron, spread by the tori `T_Γ × T_Δ` through
//!
//! ```text
//! z_k = u_k · exp(2πi (⟨γ_k, φ_Γ⟩ + ⟨δ_k, φ_Δ⟩))
//! ```
//!
//! and the tangent space of the image in `C^m` is checked for isotropy under
//! `ω(v, w) = Σ_k Im(conj(v_k)·w_k)` and for full real rank.
//!
//! Randomness comes from `Xoshiro256PlusPlus` seeded with `seed_from_u64`, so
//! every batch is reproducible across platforms for a given seed.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_distr::Exp1;
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

use crate::construction::{build_construction, ConstructionFailure};
use crate::exactlin::Rational;
use crate::gale::{build_polyhedron, gale_dual};
use crate::quadrics::{stack, QuadricError, QuadricSystem};

/// Proposals tried for a single sample before giving up on the margin.
pub const MAX_PROPOSALS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error("stacked system does not validate; no real points to sample")]
    NotValidated,
    #[error("stacked polyhedron has no vertices")]
    NoVertices,
    #[error("no proposal out of {MAX_PROPOSALS} kept every y_k above the margin {margin}")]
    MarginUnachievable { margin: f64 },
    #[error("Jacobian of the real quadrics has rank {rank}, expected {expected}")]
    RankDefect { rank: usize, expected: usize },
    #[error("construction rejected: {}", .0.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidConstruction(Vec<ConstructionFailure>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest allowed `|ω(v, w)|` for unit-length frame vectors.
    pub tol_omega: f64,
    /// Smallest allowed `σ_min / σ_max` of the real frame matrix.
    pub tol_rank: f64,
    /// Every sampled `y_k` must be at least this large.
    pub margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tol_omega: 1e-8, tol_rank: 1e-8, margin: 1e-3 }
    }
}

/// A point of the real intersection before it is spread by the tori.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSample {
    /// Exact squared moduli; solves both quadric systems.
    pub y: Vec<Rational>,
    pub signs: Vec<i8>,
    pub phi_gamma: Vec<f64>,
    pub phi_delta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    pub u: Vec<f64>,
    pub y: Vec<Rational>,
    pub signs: Vec<i8>,
    pub phi_gamma: Vec<f64>,
    pub phi_delta: Vec<f64>,
    /// `ψ_k = 2π(⟨γ_k, φ_Γ⟩ + ⟨δ_k, φ_Δ⟩)`.
    pub psi: Vec<f64>,
    pub z: Vec<Complex64>,
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("finite rational")
}

fn float_rows(sys: &QuadricSystem) -> Vec<Vec<f64>> {
    sys.coeffs().row_vecs().iter().map(|r| r.iter().map(to_f64).collect()).collect()
}

/// Spreads a real point by the torus action.
pub fn lift_point(p: RealSample, gamma: &QuadricSystem, delta: &QuadricSystem) -> SamplePoint {
    let m = p.y.len();
    let g = float_rows(gamma);
    let d = float_rows(delta);
    let u: Vec<f64> =
        p.y.iter().zip(&p.signs).map(|(y, &s)| f64::from(s) * to_f64(y).max(0.0).sqrt()).collect();
    let psi: Vec<f64> = (0..m)
        .map(|k| {
            let tg: f64 = g.iter().zip(&p.phi_gamma).map(|(row, phi)| row[k] * phi).sum();
            let td: f64 = d.iter().zip(&p.phi_delta).map(|(row, phi)| row[k] * phi).sum();
            2.0 * PI * (tg + td)
        })
        .collect();
    let z = u.iter().zip(&psi).map(|(&uk, &pk)| Complex64::from_polar(1.0, pk) * uk).collect();
    SamplePoint { u, y: p.y, signs: p.signs, phi_gamma: p.phi_gamma, phi_delta: p.phi_delta, psi, z }
}

/// Seeded stream of interior points of `R_Γ ∩ R_Δ`.
pub struct PointSampler {
    gamma: QuadricSystem,
    delta: QuadricSystem,
    vertex_ys: Vec<Vec<Rational>>,
    margin: f64,
    rng: Xoshiro256PlusPlus,
}

impl PointSampler {
    pub fn new(
        gamma: &QuadricSystem,
        delta: &QuadricSystem,
        seed: u64,
        margin: f64,
    ) -> Result<Self, SamplerError> {
        let stacked = stack(gamma, delta)?;
        let gd = gale_dual(&stacked).map_err(|_| SamplerError::NotValidated)?;
        let p = build_polyhedron(&gd);
        if p.vertices.is_empty() {
            return Err(SamplerError::NoVertices);
        }
        let vertex_ys = p.vertices.iter().map(|v| gd.to_y(&v.point)).collect();
        Ok(PointSampler {
            gamma: gamma.clone(),
            delta: delta.clone(),
            vertex_ys,
            margin,
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
        })
    }

    /// Convex combination of the vertices with normalized exponential weights.
    /// The weights are converted to exact rationals, so `y` solves the stacked
    /// system exactly.
    fn propose_y(&mut self) -> Vec<Rational> {
        let weights: Vec<Rational> = self
            .vertex_ys
            .iter()
            .map(|_| {
                let w: f64 = self.rng.sample(Exp1);
                Rational::from_float(w).expect("exponential draws are finite")
            })
            .collect();
        let total: Rational = weights.iter().sum();
        let m = self.gamma.m();
        let mut y = vec![Rational::zero(); m];
        for (w, vy) in weights.iter().zip(&self.vertex_ys) {
            let w = w / &total;
            for (acc, v) in y.iter_mut().zip(vy) {
                *acc += &w * v;
            }
        }
        y
    }

    pub fn next_real(&mut self) -> Result<RealSample, SamplerError> {
        let m = self.gamma.m();
        for _ in 0..MAX_PROPOSALS {
            let y = self.propose_y();
            if y.iter().any(|v| to_f64(v) < self.margin) {
                continue;
            }
            let signs = (0..m).map(|_| if self.rng.random_bool(0.5) { 1 } else { -1 }).collect();
            let phi_gamma = (0..self.gamma.num_quadrics()).map(|_| self.rng.random()).collect();
            let phi_delta = (0..self.delta.num_quadrics()).map(|_| self.rng.random()).collect();
            return Ok(RealSample { y, signs, phi_gamma, phi_delta });
        }
        Err(SamplerError::MarginUnachievable { margin: self.margin })
    }

    pub fn next_point(&mut self) -> Result<SamplePoint, SamplerError> {
        let real = self.next_real()?;
        Ok(lift_point(real, &self.gamma, &self.delta))
    }
}

pub fn sample_points(
    gamma: &QuadricSystem,
    delta: &QuadricSystem,
    count: usize,
    seed: u64,
    margin: f64,
) -> Result<Vec<SamplePoint>, SamplerError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut sampler = PointSampler::new(gamma, delta, seed, margin)?;
    (0..count).map(|_| sampler.next_point()).collect()
}

/// Tangent vectors at a lifted point, real-stratum directions first, then
/// the `T_Γ` and `T_Δ` orbit directions.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentFrame {
    pub vectors: Vec<Vec<Complex64>>,
    pub real: usize,
    pub gamma_torus: usize,
    pub delta_torus: usize,
}

impl TangentFrame {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Differential of the lift at `p`.
///
/// Real directions are an orthonormal basis `t` of the kernel of the
/// Jacobian `[2 c_jk u_k]` of the stacked real quadrics, pushed forward as
/// `t_k·e^{iψ_k}`. A torus row `c_j` contributes `2πi c_jk z_k`.
pub fn tangent_frame(
    p: &SamplePoint,
    gamma: &QuadricSystem,
    delta: &QuadricSystem,
) -> Result<TangentFrame, SamplerError> {
    let m = p.u.len();
    let g = float_rows(gamma);
    let d = float_rows(delta);
    let rows: Vec<&Vec<f64>> = g.iter().chain(&d).collect();
    let k = rows.len();
    let expected_rank = k;

    let kernel: Vec<Vec<f64>> = if k == 0 {
        (0..m).map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    } else {
        let jac = DMatrix::from_fn(k, m, |j, c| 2.0 * rows[j][c] * p.u[c]);
        let gram = jac.transpose() * &jac;
        let eig = SymmetricEigen::new(gram);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let largest = eig.eigenvalues[order[m - 1]].abs();
        let kernel_dim = m - expected_rank;
        let smallest_kept = eig.eigenvalues[order[kernel_dim]];
        if largest == 0.0 || smallest_kept <= 1e-12 * largest {
            let rank = order.iter().filter(|&&i| eig.eigenvalues[i] > 1e-12 * largest).count();
            return Err(SamplerError::RankDefect { rank, expected: expected_rank });
        }
        order[..kernel_dim]
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect()
    };

    let mut vectors: Vec<Vec<Complex64>> = kernel
        .iter()
        .map(|t| (0..m).map(|c| Complex64::from_polar(1.0, p.psi[c]) * t[c]).collect())
        .collect();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    for row in g.iter().chain(&d) {
        vectors.push((0..m).map(|c| two_pi_i * row[c] * p.z[c]).collect());
    }
    Ok(TangentFrame {
        vectors,
        real: kernel.len(),
        gamma_torus: g.len(),
        delta_torus: d.len(),
    })
}

/// `ω(v, w) = Σ_k Im(conj(v_k)·w_k)`, the standard symplectic form on `C^m`.
pub fn symplectic_pairing(v: &[Complex64], w: &[Complex64]) -> f64 {
    v.iter().zip(w).map(|(a, b)| (a.conj() * b).im).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleCertificate {
    pub point: SamplePoint,
    pub frame: TangentFrame,
    pub max_symplectic_pairing: f64,
    pub min_singular_value_ratio: f64,
    pub lagrangian_pass: bool,
    pub immersion_pass: bool,
}

impl SampleCertificate {
    pub fn passes(&self) -> bool {
        self.lagrangian_pass && self.immersion_pass
    }
}

pub fn max_pairing(frame: &TangentFrame) -> f64 {
    let unit: Vec<Vec<Complex64>> = frame
        .vectors
        .iter()
        .map(|v| {
            let n = norm(v);
            if n > 0.0 {
                v.iter().map(|c| c / n).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 0..unit.len() {
        for j in i + 1..unit.len() {
            worst = worst.max(symplectic_pairing(&unit[i], &unit[j]).abs());
        }
    }
    worst
}

/// `σ_min / σ_max` of the real `2m × len` matrix whose columns are the frame
/// vectors split into real and imaginary parts.
pub fn singular_value_ratio(frame: &TangentFrame) -> f64 {
    if frame.is_empty() {
        return 1.0;
    }
    let m = frame.vectors[0].len();
    let mat = DMatrix::from_fn(2 * m, frame.len(), |r, c| {
        let z = frame.vectors[c][r % m];
        if r < m {
            z.re
        } else {
            z.im
        }
    });
    let sv = mat.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if max == 0.0 || frame.len() > 2 * m {
        0.0
    } else {
        min / max
    }
}

pub fn certify(p: SamplePoint, frame: TangentFrame, tol: &Tolerances) -> SampleCertificate {
    let max_symplectic_pairing = max_pairing(&frame);
    let min_singular_value_ratio = singular_value_ratio(&frame);
    SampleCertificate {
        lagrangian_pass: max_symplectic_pairing <= tol.tol_omega,
        immersion_pass: min_singular_value_ratio >= tol.tol_rank,
        point: p,
        frame,
        max_symplectic_pairing,
        min_singular_value_ratio,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchSummary {
    pub count: usize,
    pub passed: usize,
    pub pass_fraction: f64,
    pub worst_pairing: f64,
    pub worst_rank_ratio: f64,
}

/// Samples, lifts and certifies `count` points of a valid construction.
/// Samples whose Jacobian degenerates are dropped and redrawn.
pub fn verify_batch(
    gamma: &QuadricSystem,
    delta: &QuadricSystem,
    count: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<BatchSummary, SamplerError> {
    let rep = build_construction(gamma, delta)?;
    if !rep.is_valid() {
        return Err(SamplerError::InvalidConstruction(rep.failures));
    }
    if count == 0 {
        return Ok(BatchSummary {
            count: 0,
            passed: 0,
            pass_fraction: 1.0,
            worst_pairing: 0.0,
            worst_rank_ratio: 0.0,
        });
    }
    let mut sampler = PointSampler::new(gamma, delta, seed, tol.margin)?;
    let mut passed = 0;
    let mut worst_pairing = 0.0f64;
    let mut worst_rank_ratio = f64::INFINITY;
    let mut done = 0;
    let mut redraws = 0;
    while done < count {
        let p = sampler.next_point()?;
        let frame = match tangent_frame(&p, gamma, delta) {
            Ok(f) => f,
            Err(e @ SamplerError::RankDefect { .. }) => {
                redraws += 1;
                if redraws >= MAX_PROPOSALS {
                    return Err(e);
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        let cert = certify(p, frame, tol);
        worst_pairing = worst_pairing.max(cert.max_symplectic_pairing);
        worst_rank_ratio = worst_rank_ratio.min(cert.min_singular_value_ratio);
        if cert.passes() {
            passed += 1;
        }
        done += 1;
    }
    Ok(BatchSummary {
        count,
        passed,
        pass_fraction: passed as f64 / count as f64,
        worst_pairing,
        worst_rank_ratio,
    })
}
