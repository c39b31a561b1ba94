//! Glue copies of an edge-minimal hypertree along a Steiner triple system:
//! the edge-ratio m / C(n,2) is preserved exactly, and so is
//! edge-minimality.
//!
//! Run with: cargo run --example gluing

use hypertrees::bounds::edge_ratio;
use hypertrees::constructions::glue;
use hypertrees::designs::steiner_s23;
use hypertrees::hypergraph::Hypergraph;
use hypertrees::search::is_edge_minimal;

fn main() {
    let base = Hypergraph::new(3, 3, [[1u32, 2, 3]]).unwrap();
    let base_ratio = edge_ratio(&base);
    println!(
        "base: single 3-edge, ratio {}/{}",
        base_ratio.numer(),
        base_ratio.denom()
    );

    for n in [7u32, 9, 13, 15] {
        let steiner = steiner_s23(n).unwrap();
        let glued = glue(&base, &steiner).unwrap();
        let ratio = edge_ratio(&glued);
        println!(
            "glued along {} blocks of order {n}: {} edges, ratio {}/{}, edge-minimal={}",
            steiner.block_count(),
            glued.edge_count(),
            ratio.numer(),
            ratio.denom(),
            is_edge_minimal(&glued).unwrap().holds
        );
        assert_eq!(ratio, base_ratio);
    }
}
