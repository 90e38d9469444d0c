//! Full report for a Γ/Δ pair, plus a rejected pair.

use toric_lagrangian::construction::{build_construction, report_text};
use toric_lagrangian::exactlin::{int, rat};
use toric_lagrangian::quadrics::QuadricSystem;

fn main() {
    let gamma = QuadricSystem::from_i64(3, &[&[1, 1, 1]], &[int(1)]).unwrap();
    let delta = QuadricSystem::new(3, vec![vec![int(1), int(1), int(0)]], vec![rat(1, 2)]).unwrap();
    print!("{}", report_text(&build_construction(&gamma, &delta).unwrap()));

    println!();
    let weighted = QuadricSystem::from_i64(3, &[&[1, 1, 2]], &[int(1)]).unwrap();
    let rep = build_construction(&weighted, &delta).unwrap();
    print!("{}", report_text(&rep));
    assert!(!rep.is_valid());
}
