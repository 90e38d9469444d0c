//! The Delzant test on projective spaces and on the weighted plane CP^2(1,1,2).

use toric_lagrangian::delzant::{embedding_criterion, FailureKind};
use toric_lagrangian::exactlin::int;
use toric_lagrangian::quadrics::QuadricSystem;

fn main() {
    for m in 2..=6 {
        let sys = QuadricSystem::from_i64(m, &[&vec![1; m]], &[int(1)]).unwrap();
        let (ok, v) = embedding_criterion(&sys).unwrap();
        println!("CP^{}: Delzant {ok}, {} vertices", m - 1, v.vertex_ratios.len());
    }

    let weighted = QuadricSystem::from_i64(3, &[&[1, 1, 2]], &[int(1)]).unwrap();
    let (ok, v) = embedding_criterion(&weighted).unwrap();
    println!("CP^2(1,1,2): Delzant {ok}");
    for f in &v.failures {
        if let FailureKind::Determinant { abs_det, ratio } = &f.kind {
            println!("  vertex {:?}: |det| = {abs_det}, |det|/covolume = {ratio}", f.active_set);
        }
    }

    // Condition failures are reported before any polyhedron is built.
    let bad = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &[int(0)]).unwrap();
    if let Err(e) = embedding_criterion(&bad) {
        println!("rhs 0: {e}");
    }
}
