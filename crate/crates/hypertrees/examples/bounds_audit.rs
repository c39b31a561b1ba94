//! Evaluate every applicable edge-count bound against catalog instances,
//! in exact rational arithmetic.
//!
//! Run with: cargo run --example bounds_audit

use hypertrees::bounds::{audit, compute_flags, edge_ratio};
use hypertrees::constructions::{edge_maximal_matching_tree, edge_minimal_grid};
use hypertrees::hypergraph::Hypergraph;

fn tight_path(n: u32, k: usize) -> Hypergraph {
    let edges: Vec<Vec<u32>> = (1..=n - k as u32 + 1)
        .map(|i| (i..i + k as u32).collect())
        .collect();
    Hypergraph::new(k, n, edges).unwrap()
}

fn main() {
    let instances = [
        ("edge-minimal grid m=4", edge_minimal_grid(4, 3).unwrap()),
        ("edge-maximal matching tree n=8", edge_maximal_matching_tree(8).unwrap()),
        ("tight path on [9]", tight_path(9, 3)),
    ];
    for (name, h) in instances {
        let report = audit(&h, compute_flags(&h), name);
        print!("{report}");
        let ratio = edge_ratio(&h);
        println!(
            "edge ratio {}/{} ~ {:.4}\n",
            ratio.numer(),
            ratio.denom(),
            *ratio.numer() as f64 / *ratio.denom() as f64
        );
        assert!(report.passed());
    }
}
