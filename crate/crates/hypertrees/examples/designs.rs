//! Factorizations and Steiner systems: the round-robin schedule, the
//! flow-based factorization of triples, and triple systems by doubling and
//! by the quasigroup constructions.
//!
//! Run with: cargo run --example designs

use hypertrees::designs::{
    baranyai_factorization, doubling_sts, round_robin_one_factorization, steiner_s23,
    verify_design,
};
use hypertrees::search::{is_hypertree, max_chain_length};

fn main() {
    let rounds = round_robin_one_factorization(6).unwrap();
    println!("round-robin on 6 players, {} rounds:", rounds.factor_count());
    for (i, matching) in rounds.factors().iter().enumerate() {
        let pairs: Vec<String> = matching.iter().map(|e| format!("{{{e}}}")).collect();
        println!("  round {}: {}", i + 1, pairs.join(" "));
    }

    let triples = baranyai_factorization(6, 3).unwrap();
    println!(
        "\nall 20 triples of [6] in {} balanced factors:",
        triples.factor_count()
    );
    for factor in triples.factors() {
        let blocks: Vec<String> = factor.iter().map(|e| format!("{{{e}}}")).collect();
        println!("  {}", blocks.join(" "));
    }

    for (label, sts) in [
        ("doubling order 7", doubling_sts(3)),
        ("doubling order 15", doubling_sts(4)),
        ("quasigroup order 9", steiner_s23(9).unwrap()),
        ("quasigroup order 13", steiner_s23(13).unwrap()),
    ] {
        let h = sts.hypergraph();
        println!(
            "\n{label}: {} blocks, pair-balanced={}, hypertree={}, longest chain {}",
            sts.block_count(),
            verify_design(h, 2, 1),
            is_hypertree(h).holds,
            max_chain_length(h, None)
        );
    }
}
