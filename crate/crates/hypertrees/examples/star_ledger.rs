//! Decompose 2-hypertrees into maximal stars and audit the exact counting
//! identity C(n,k-1) = l + sum(C_i) + (k-1)*sum(i*C_i).
//!
//! Run with: cargo run --example star_ledger

use hypertrees::constructions::{edge_maximal_matching_tree, edge_minimal_grid};
use hypertrees::designs::steiner_s23;
use hypertrees::stars::check_star_equation;

fn main() {
    let instances = [
        ("grid m=4 k=3", edge_minimal_grid(4, 3).unwrap()),
        ("matching tree n=8", edge_maximal_matching_tree(8).unwrap()),
        ("triple system n=9", steiner_s23(9).unwrap().hypergraph().clone()),
    ];
    for (name, h) in instances {
        println!("=== {name} ===");
        let ledger = check_star_equation(&h).unwrap();
        print!("{ledger}");
        assert!(ledger.holds());
        println!();
    }
}
