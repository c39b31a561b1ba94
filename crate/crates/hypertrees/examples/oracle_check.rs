//! Cross-check the optimized semicycle and pair-connectivity searches
//! against brute-force enumeration on a seeded random corpus.
//!
//! Run with: cargo run --example oracle_check

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypertrees::hypergraph::VertexId;
use hypertrees::search::{
    find_connecting_chain, find_semicycle, oracle_enumerate, random_hypergraph, OracleKind,
};

fn main() {
    let seed = 0;
    println!("seed {seed}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut semicycle_agreements = 0;
    let mut pair_agreements = 0;
    let instances = 60;
    for _ in 0..instances {
        let h = random_hypergraph(&mut rng, 3, 4, 7, 10);

        let optimized = find_semicycle(&h, None).is_some();
        let oracle = !oracle_enumerate(&h, OracleKind::Semicycles, h.n() as usize, None)
            .unwrap()
            .is_empty();
        assert_eq!(optimized, oracle, "semicycle disagreement on\n{}", h.to_khg());
        semicycle_agreements += 1;

        let chains = oracle_enumerate(&h, OracleKind::Chains, h.edge_count(), None).unwrap();
        for a in 1..=h.n() {
            for b in (a + 1)..=h.n() {
                let (u, v) = (VertexId::new(a), VertexId::new(b));
                let fast = find_connecting_chain(&h, u, v, None).unwrap().is_some();
                let slow = chains.iter().any(|c| c.contains(u) && c.contains(v));
                assert_eq!(fast, slow, "pair ({a},{b}) disagreement on\n{}", h.to_khg());
                pair_agreements += 1;
            }
        }
    }
    println!(
        "{instances} instances: {semicycle_agreements} semicycle verdicts and \
         {pair_agreements} pair verdicts all agree with the oracle"
    );
}
