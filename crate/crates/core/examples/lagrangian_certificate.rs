//! Sample points on the Lagrangian and certify isotropy and immersion.

use num_complex::Complex64;
use toric_lagrangian::exactlin::{int, rat};
use toric_lagrangian::quadrics::QuadricSystem;
use toric_lagrangian::sampler::*;

fn main() {
    let gamma = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &[int(1)]).unwrap();
    let delta = QuadricSystem::new(3, vec![vec![int(1), int(1), int(0)]], vec![rat(1, 2)]).unwrap();
    let tol = Tolerances::default();

    let p = sample_points(&gamma, &delta, 1, 7, tol.margin).unwrap().remove(0);
    let y: Vec<String> = p.y.iter().map(ToString::to_string).collect();
    println!("y = ({})  exact", y.join(", "));
    for (k, z) in p.z.iter().enumerate() {
        println!("  z_{} = {:.6} {:+.6}i", k + 1, z.re, z.im);
    }
    let f = tangent_frame(&p, &gamma, &delta).unwrap();
    println!("frame: {} real, {} gamma torus, {} delta torus", f.real, f.gamma_torus, f.delta_torus);
    let c = certify(p.clone(), f.clone(), &tol);
    println!("max |omega| = {:.2e}, sigma ratio = {:.4}", c.max_symplectic_pairing, c.min_singular_value_ratio);

    // Rotating one torus direction by i leaves the isotropic subspace.
    let mut bent = f;
    let k = bent.real;
    bent.vectors[k] = bent.vectors[k].iter().map(|c| c * Complex64::i()).collect();
    let c = certify(p, bent, &tol);
    println!("corrupted frame: lagrangian {} (max |omega| = {:.3})", c.lagrangian_pass, c.max_symplectic_pairing);

    let s = verify_batch(&gamma, &delta, 500, 1, &tol).unwrap();
    println!(
        "batch of {}: pass fraction {}, worst pairing {:.1e}, worst ratio {:.3}",
        s.count, s.pass_fraction, s.worst_pairing, s.worst_rank_ratio
    );
}
