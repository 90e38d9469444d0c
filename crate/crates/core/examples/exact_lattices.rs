//! Exact linear algebra and integer lattices.
//!
//! ```text
//! cargo run --example exact_lattices
//! ```

use num_bigint::BigInt;
use toric_lagrangian::exactlin::*;

fn main() {
    let a = RatMatrix::from_i64(4, &[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
    println!("A has rank {}", a.rank());

    let x = solve_linear(&a, &[int(1), rat(3, 2)]).unwrap();
    println!("canonical solution of A x = (1, 3/2): {}", fmt(&x));

    // The integer kernel is saturated: every integer solution of A v = 0 is
    // an integer combination of these rows.
    let k = integer_kernel_basis(&a);
    for v in &k.basis {
        println!("  kernel basis row {:?}", v.iter().map(BigInt::to_string).collect::<Vec<_>>());
    }

    let h = hnf(2, &[vec![4.into(), 2.into()], vec![2.into(), 4.into()], vec![0.into(), 6.into()]]);
    println!("HNF of (4,2),(2,4),(0,6): {:?}, covolume {:?}", h.basis, h.covolume);

    let lat = ScaledLattice::generated_by(2, &[vec![rat(1, 2), int(0)], vec![int(0), rat(1, 3)]]);
    let dual = dual_lattice_basis(&lat.basis()).unwrap();
    println!("lattice covolume {}, dual basis {:?}", lat.covolume().unwrap(), dual.iter().map(|r| fmt(r)).collect::<Vec<_>>());

    let cone = RatMatrix::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]]);
    for rhs in [[int(2), int(1)], [int(-1), int(1)]] {
        match cone_feasible(&cone, &rhs).witness {
            Some(y) => println!("{} is in the cone, y = {}", fmt(&rhs), fmt(&y)),
            None => println!("{} is not in the cone", fmt(&rhs)),
        }
    }
}

fn fmt(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
