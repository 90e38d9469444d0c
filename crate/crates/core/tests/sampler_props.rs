mod common;

use common::*;
use num_complex::Complex64;
use rand::Rng;
use toric_lagrangian::construction::build_construction;
use toric_lagrangian::exactlin::{int, rat};
use toric_lagrangian::quadrics::{stack, QuadricSystem};
use toric_lagrangian::sampler::*;

fn cp2() -> QuadricSystem {
    QuadricSystem::from_i64(3, &[&[1, 1, 1]], &[int(1)]).unwrap()
}

fn half_plane() -> QuadricSystem {
    QuadricSystem::new(3, vec![vec![int(1), int(1), int(0)]], vec![rat(1, 2)]).unwrap()
}

fn valid_pairs() -> Vec<(QuadricSystem, QuadricSystem)> {
    let mut out = vec![
        (QuadricSystem::empty(2), QuadricSystem::from_i64(2, &[&[1, 1]], &[int(1)]).unwrap()),
        (cp2(), half_plane()),
        (cp2(), QuadricSystem::empty(3)),
        (QuadricSystem::empty(3), cp2()),
        (
            QuadricSystem::from_i64(4, &[&[1, 1, 1, 1]], &[int(1)]).unwrap(),
            QuadricSystem::new(4, vec![vec![int(1), int(1), int(0), int(0)]], vec![rat(1, 2)]).unwrap(),
        ),
        (
            QuadricSystem::from_i64(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]], &[int(1), int(1)]).unwrap(),
            QuadricSystem::new(4, vec![vec![int(1), int(0), int(1), int(0)]], vec![rat(1, 2)]).unwrap(),
        ),
    ];
    out.retain(|(g, d)| build_construction(g, d).unwrap().is_valid());
    assert_eq!(out.len(), 6, "all fixture pairs should be valid");
    out
}

#[test]
fn sampled_y_solve_the_stacked_system_exactly() {
    for (i, (g, d)) in valid_pairs().iter().enumerate() {
        let s = stack(g, d).unwrap();
        for p in sample_points(g, d, 30, i as u64, 1e-3).unwrap() {
            assert_eq!(s.coeffs().mul_vec(&p.y), s.rhs());
        }
    }
}

#[test]
fn lifted_moduli_match_real_coordinates() {
    for (g, d) in valid_pairs() {
        for p in sample_points(&g, &d, 50, 9, 1e-3).unwrap() {
            for (z, u) in p.z.iter().zip(&p.u) {
                assert!((z.norm() - u.abs()).abs() <= 4.0 * f64::EPSILON * u.abs().max(f64::MIN_POSITIVE));
            }
        }
    }
}

#[test]
fn frame_has_m_vectors_for_every_sample() {
    for (g, d) in valid_pairs() {
        let m = g.m();
        let (n, ell) = (g.n(), d.n());
        for p in sample_points(&g, &d, 20, 4, 1e-3).unwrap() {
            let f = tangent_frame(&p, &g, &d).unwrap();
            assert_eq!(f.len(), m);
            assert_eq!((f.real, f.gamma_torus, f.delta_torus), (n + ell - m, m - n, m - ell));
        }
    }
}

fn stats(p: &SamplePoint, g: &QuadricSystem, d: &QuadricSystem) -> (f64, f64, TangentFrame) {
    let f = tangent_frame(p, g, d).unwrap();
    (max_pairing(&f), singular_value_ratio(&f), f)
}

#[test]
fn global_phase_shift_rotates_the_frame() {
    let mut r = rng(5);
    for (g, d) in valid_pairs() {
        for p in sample_points(&g, &d, 10, 2, 1e-3).unwrap() {
            let shift_g: Vec<f64> = p.phi_gamma.iter().map(|_| r.random()).collect();
            let shift_d: Vec<f64> = p.phi_delta.iter().map(|_| r.random()).collect();
            let moved = lift_point(
                RealSample {
                    y: p.y.clone(),
                    signs: p.signs.clone(),
                    phi_gamma: p.phi_gamma.iter().zip(&shift_g).map(|(a, b)| a + b).collect(),
                    phi_delta: p.phi_delta.iter().zip(&shift_d).map(|(a, b)| a + b).collect(),
                },
                &g,
                &d,
            );
            let (w0, s0, f0) = stats(&p, &g, &d);
            let (w1, s1, f1) = stats(&moved, &g, &d);
            assert!((w0 - w1).abs() < 1e-12);
            assert!((s0 - s1).abs() < 1e-12);
            // Each frame vector is rotated by the diagonal unitary z_k'/z_k.
            for (a, b) in f0.vectors.iter().zip(&f1.vectors) {
                for k in 0..a.len() {
                    let rot = Complex64::from_polar(1.0, moved.psi[k] - p.psi[k]);
                    assert!((a[k] * rot - b[k]).norm() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn sign_flips_preserve_certificates() {
    let tol = Tolerances::default();
    for (g, d) in valid_pairs() {
        for p in sample_points(&g, &d, 10, 3, 1e-3).unwrap() {
            let (w0, s0, _) = stats(&p, &g, &d);
            for k in 0..p.signs.len() {
                let mut signs = p.signs.clone();
                signs[k] = -signs[k];
                let flipped = lift_point(
                    RealSample { y: p.y.clone(), signs, phi_gamma: p.phi_gamma.clone(), phi_delta: p.phi_delta.clone() },
                    &g,
                    &d,
                );
                let f = tangent_frame(&flipped, &g, &d).unwrap();
                let (w1, s1) = (max_pairing(&f), singular_value_ratio(&f));
                assert!((w0 - w1).abs() < 1e-12);
                assert!((s0 - s1).abs() < 1e-12);
                assert!(certify(flipped, f, &tol).passes());
            }
        }
    }
}

#[test]
fn all_fixture_pairs_certify() {
    for (g, d) in valid_pairs() {
        let s = verify_batch(&g, &d, 60, 12, &Tolerances::default()).unwrap();
        assert_eq!(s.pass_fraction, 1.0, "{g:?} / {d:?}: {s:?}");
        assert!(s.worst_pairing <= 1e-10);
    }
}

/// With a second torus direction available, multiplying one torus vector by
/// i breaks isotropy at every sample.
#[test]
fn corrupted_torus_vector_is_detected_when_two_torus_directions_exist() {
    let (g, d) = (cp2(), half_plane());
    let tol = Tolerances::default();
    let pts = sample_points(&g, &d, 200, 1, 1e-3).unwrap();
    let detected = pts
        .into_iter()
        .filter(|p| {
            let mut f = tangent_frame(p, &g, &d).unwrap();
            let k = f.real;
            f.vectors[k] = f.vectors[k].iter().map(|c| c * Complex64::i()).collect();
            !certify(p.clone(), f, &tol).lagrangian_pass
        })
        .count();
    assert_eq!(detected, 200);
}

#[test]
fn batches_are_reproducible() {
    let tol = Tolerances::default();
    let a = verify_batch(&cp2(), &half_plane(), 40, 77, &tol).unwrap();
    let b = verify_batch(&cp2(), &half_plane(), 40, 77, &tol).unwrap();
    assert_eq!(a, b);
}
