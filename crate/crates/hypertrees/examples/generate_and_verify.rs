//! Build each hypergraph family, verify the hypertree predicates, and show
//! what a failure witness looks like.
//!
//! Run with: cargo run --example generate_and_verify

use hypertrees::constructions::{
    edge_maximal_matching_tree, edge_minimal_grid, four_uniform_from_doubling,
    labelled_partition_hypertree,
};
use hypertrees::hypergraph::Hypergraph;
use hypertrees::search::{
    is_edge_maximal, is_edge_minimal, is_hypertree, max_chain_length_semicycle_free,
};

fn describe(name: &str, h: &Hypergraph) {
    let hypertree = is_hypertree(h);
    print!(
        "{name}: k={} n={} m={} hypertree={}",
        h.k(),
        h.n(),
        h.edge_count(),
        hypertree.holds
    );
    if hypertree.holds {
        let longest = max_chain_length_semicycle_free(h, Some(4));
        print!(" longest-chain={longest}");
        print!(
            " edge-minimal={}",
            is_edge_minimal(h).unwrap().holds
        );
        print!(
            " edge-maximal={}",
            is_edge_maximal(h).unwrap().holds
        );
    }
    println!();
}

fn main() {
    describe("labelled-partition n=8 k=3", &labelled_partition_hypertree(8, 3).unwrap());
    describe("edge-minimal-grid m=4 k=3", &edge_minimal_grid(4, 3).unwrap());
    describe("edge-maximal-matching n=8", &edge_maximal_matching_tree(8).unwrap());
    describe("four-uniform-doubling m=3", &four_uniform_from_doubling(3));

    // a failing instance carries a replayable witness
    let broken = Hypergraph::new(3, 6, [[1u32, 2, 3], [4, 5, 6]]).unwrap();
    let verdict = is_hypertree(&broken);
    println!(
        "two disjoint edges: hypertree={} -> {}",
        verdict.holds,
        verdict.witness.expect("failure carries a witness")
    );

    // the .khg text format round-trips
    let grid = edge_minimal_grid(2, 3).unwrap();
    let text = grid.to_khg();
    print!("\nsmallest grid as .khg:\n{text}");
    assert_eq!(Hypergraph::from_khg(&text).unwrap(), grid);
}
