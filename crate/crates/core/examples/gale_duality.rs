//! Gale dual of a quadric system and the vertices of its polyhedron.

use toric_lagrangian::exactlin::int;
use toric_lagrangian::gale::{build_polyhedron, gale_dual};
use toric_lagrangian::quadrics::QuadricSystem;

fn main() {
    // Two independent spheres in C^4: the polyhedron is a square.
    let sys = QuadricSystem::from_i64(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]], &[int(1), int(2)]).unwrap();
    let gd = gale_dual(&sys).unwrap();
    println!("n = {}", gd.n);
    for (i, (a, b)) in gd.a_vectors.iter().zip(&gd.b_offsets).enumerate() {
        let a: Vec<String> = a.iter().map(ToString::to_string).collect();
        println!("  y_{} = <({}), x> + {b}", i + 1, a.join(", "));
    }

    let p = build_polyhedron(&gd);
    println!("simple: {}, bounded: {}", p.is_simple, p.is_bounded);
    for v in &p.vertices {
        let x: Vec<String> = v.point.iter().map(ToString::to_string).collect();
        let y: Vec<String> = gd.to_y(&v.point).iter().map(ToString::to_string).collect();
        println!("  vertex x = ({}), y = ({}), active {:?}", x.join(", "), y.join(", "), v.active_set);
    }

    let strip = QuadricSystem::from_i64(3, &[&[1, 1, 0]], &[int(1)]).unwrap();
    let p = build_polyhedron(&gale_dual(&strip).unwrap());
    println!("|z1|^2 + |z2|^2 = 1 in C^3: {} vertices, bounded {}", p.vertices.len(), p.is_bounded);
}
