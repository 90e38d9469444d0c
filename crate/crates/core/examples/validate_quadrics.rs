//! Conditions (a), (b) and (c) on a few small systems.

use toric_lagrangian::exactlin::{int, rat};
use toric_lagrangian::quadrics::{validate, QuadricSystem};

fn main() {
    let cases = [
        ("sphere |z|^2 = 1", QuadricSystem::from_i64(3, &[&[1, 1, 1]], &[int(1)]).unwrap()),
        ("empty level set", QuadricSystem::from_i64(3, &[&[1, 1, 1]], &[int(-1)]).unwrap()),
        // rhs equals the third column, so a single coordinate reaches it.
        ("singular", QuadricSystem::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]], &[int(1), int(1)]).unwrap()),
        ("smooth pair", QuadricSystem::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]], &[int(2), int(1)]).unwrap()),
        ("dependent rows", QuadricSystem::from_i64(3, &[&[1, 1, 1], &[2, 2, 2]], &[int(1), int(2)]).unwrap()),
        (
            "rational weights",
            QuadricSystem::new(2, vec![vec![rat(1, 2), rat(1, 3)]], vec![int(1)]).unwrap(),
        ),
    ];
    for (name, sys) in cases {
        let v = validate(&sys);
        print!("{name:>17}: (a) {} (b) {} (c) {}", v.cond_a.pass, v.cond_b.pass, v.cond_c.pass);
        if let Some(s) = &v.cond_b.violating_subset {
            print!("  rhs reached by columns {s:?}");
        }
        if let Some(d) = v.smooth_dim_z {
            print!("  dim Z = {d}");
        }
        if let Some(l) = &v.cond_c.lattice {
            print!("  torus rank {}, |D| = {}", l.torus_rank, l.two_group_order);
        }
        println!();
    }
}
