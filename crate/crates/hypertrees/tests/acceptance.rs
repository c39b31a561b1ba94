//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every expected value is an exact integer or rational; runtime
//! limits are asserted where the criterion fixes one.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypertrees::bounds::{edge_ratio, evaluate_bound, BoundName, Rational};
use hypertrees::constructions::{
    edge_maximal_matching_tree, edge_minimal_grid, four_uniform_from_doubling,
    labelled_partition_hypertree,
};
use hypertrees::designs::{
    baranyai_factorization, doubling_sts, round_robin_one_factorization, steiner_s23,
    verify_design,
};
use hypertrees::hypergraph::{Edge, Hypergraph, VertexId, WalkSequence};
use hypertrees::partition::{build_partition, verify_partition};
use hypertrees::search::{
    find_connecting_chain, find_semicycle, is_edge_maximal, is_edge_minimal, is_hypertree,
    max_chain_length, max_chain_length_semicycle_free, oracle_enumerate, random_hypergraph,
    OracleKind,
};
use hypertrees::stars::check_star_equation;

fn pass(criterion: &str, detail: &str) {
    println!("criterion {criterion}: PASS ({detail})");
}

fn tight_path(n: u32, k: usize) -> Hypergraph {
    let edges: Vec<Vec<u32>> = (1..=n - k as u32 + 1)
        .map(|i| (i..i + k as u32).collect())
        .collect();
    Hypergraph::new(k, n, edges).unwrap()
}

fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[test]
fn criterion_01_partition_validity() {
    let start = Instant::now();
    let cases = [(3usize, 4u32), (3, 8), (3, 16), (4, 8), (4, 16)];
    for (k, n) in cases {
        let family = build_partition(n, k).unwrap();
        let report = verify_partition(&family, k).unwrap();
        assert!(report.passed(), "({k},{n}) failed:\n{report}");
        let bound = (n.ilog2() as u64).pow(k as u32 - 2);
        assert!(family.class_count() as u64 <= bound, "({k},{n})");
    }
    assert_eq!(build_partition(4, 3).unwrap().class_count(), 2);
    assert_eq!(build_partition(8, 3).unwrap().class_count(), 3);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    pass(
        "01 partition validity",
        &format!("5 parameter pairs, all checks, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_labelled_partition_instance() {
    let start = Instant::now();
    let h = labelled_partition_hypertree(8, 3).unwrap();
    assert_eq!(h.n(), 11);
    assert_eq!(h.edge_count(), 29);
    assert!(is_hypertree(&h).holds);
    // the edges of any chain share a vertex, so no chain exceeds k edges
    let longest = max_chain_length_semicycle_free(&h, Some(3));
    assert!(longest <= 3, "chain of {longest} edges found");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    pass(
        "02 labelled partition instance",
        &format!("11 vertices, 29 edges, hypertree, chains <= 3, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_star_equation_exact() {
    let catalog: Vec<(&str, Hypergraph)> = vec![
        ("grid m=2", edge_minimal_grid(2, 3).unwrap()),
        ("grid m=4", edge_minimal_grid(4, 3).unwrap()),
        ("matching tree n=4", edge_maximal_matching_tree(4).unwrap()),
        ("matching tree n=6", edge_maximal_matching_tree(6).unwrap()),
        ("matching tree n=8", edge_maximal_matching_tree(8).unwrap()),
        ("4-uniform doubling m=3", four_uniform_from_doubling(3)),
        ("triple system n=7", steiner_s23(7).unwrap().hypergraph().clone()),
        ("triple system n=9", steiner_s23(9).unwrap().hypergraph().clone()),
    ];
    for (name, h) in &catalog {
        let ledger = check_star_equation(h).unwrap();
        assert!(ledger.holds(), "{name}:\n{ledger}");
    }

    // star unions: pick up to three maximal stars of a catalog instance,
    // restrict to the support, and keep the unions that stay
    // chain-connected
    let decompositions: Vec<_> = catalog
        .iter()
        .map(|(name, h)| {
            (
                h,
                hypertrees::stars::decompose_stars(h).expect(name),
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 50 && attempts < 20_000 {
        attempts += 1;
        let (host, decomposition) =
            &decompositions[rand::Rng::random_range(&mut rng, 0..decompositions.len())];
        let take = rand::Rng::random_range(&mut rng, 1..=3usize.min(decomposition.stars.len()));
        let picked = rand::seq::index::sample(&mut rng, decomposition.stars.len(), take);
        let edges: Vec<Vec<u32>> = picked
            .iter()
            .flat_map(|i| decomposition.stars[i].edges.iter())
            .map(|e| e.vertices().iter().map(|v| v.get()).collect())
            .collect();
        let union = Hypergraph::new(host.k(), host.n(), edges).unwrap();
        let (sub, _) = union.restricted_to_support();
        if !is_hypertree(&sub).holds {
            continue;
        }
        let ledger = check_star_equation(&sub).unwrap();
        assert!(ledger.holds(), "star union failed:\n{ledger}");
        accepted += 1;
    }
    assert_eq!(accepted, 50, "only {accepted} unions in {attempts} attempts");
    pass(
        "03 star equation exact",
        "8 catalog instances and 50 star unions, zero tolerance",
    );
}

#[test]
fn criterion_04_edge_minimal_grid() {
    let start = Instant::now();
    let grid = edge_minimal_grid(4, 3).unwrap();
    assert_eq!(grid.n(), 16);
    assert_eq!(grid.edge_count(), 48);
    assert!(is_hypertree(&grid).holds);
    assert!(max_chain_length_semicycle_free(&grid, Some(2)) <= 2);
    assert!(is_edge_minimal(&grid).unwrap().holds);

    let refined = evaluate_bound(BoundName::TwoHypertreeRefined, 16, 3, None).unwrap();
    let generic = evaluate_bound(BoundName::LHypertreeUpper, 16, 3, Some(2)).unwrap();
    let conjectured =
        evaluate_bound(BoundName::EdgeMinimalConjecturedUpper, 16, 3, None).unwrap();
    assert_eq!(refined, ratio(58, 1));
    assert_eq!(generic, ratio(60, 1));
    assert_eq!(conjectured, ratio(60, 1));
    let m = Rational::from_integer(48);
    assert!(m <= refined && refined <= generic && generic <= conjectured);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    pass(
        "04 edge-minimal grid",
        &format!("n=16, 48 = C(4,2)*16/2 edges, edge-minimal 2-hypertree, 48<=58<=60, {elapsed:?}"),
    );
}

#[test]
fn criterion_05_doubling_and_four_uniform() {
    for (m, expected_blocks) in [(3u32, 7usize), (4, 35)] {
        let sts = doubling_sts(m);
        assert!(verify_design(sts.hypergraph(), 2, 1));
        assert_eq!(sts.block_count(), expected_blocks);
    }
    // the closed form, evaluated here independently of the builders
    let double_sum = |m: u32| -> u64 {
        let n = (1u64 << m) - 1;
        (1..m)
            .flat_map(|j| (1u64 << j..1u64 << (j + 1)).map(move |i| (i - (1 << j)) * (n - i)))
            .sum()
    };
    assert_eq!(double_sum(3), 8);
    assert_eq!(double_sum(4), 120);

    let mut ratios = Vec::new();
    for (m, expected_edges) in [(3u32, 8u64), (4, 120)] {
        let h = four_uniform_from_doubling(m);
        assert_eq!(h.edge_count() as u64, expected_edges);
        assert_eq!(h.edge_count() as u64, double_sum(m));
        assert!(is_hypertree(&h).holds);
        assert!(max_chain_length_semicycle_free(&h, Some(2)) <= 2);
        let triple_total = {
            let n = h.n() as i128;
            n * (n - 1) * (n - 2) / 6
        };
        ratios.push(ratio(h.edge_count() as i128, triple_total));
    }
    assert_eq!(ratios[0], ratio(8, 35));
    assert_eq!(ratios[1], ratio(120, 455));
    let limit = ratio(2, 7);
    assert!(ratios[0] < ratios[1] && ratios[1] < limit);
    pass(
        "05 doubling designs",
        "7 and 35 blocks; 8 and 120 edges; 8/35 < 120/455 < 2/7",
    );
}

#[test]
fn criterion_06_edge_maximal_matching_trees() {
    let start = Instant::now();
    for (n, expected) in [(4u32, 2usize), (6, 6), (8, 12)] {
        let tree = edge_maximal_matching_tree(n).unwrap();
        assert_eq!(tree.edge_count(), expected, "n = {n}");
        assert_eq!(tree.edge_count() as u64, (n as u64) * (n as u64 - 2) / 4);
        assert!(is_hypertree(&tree).holds, "n = {n}");
        assert!(is_edge_maximal(&tree).unwrap().holds, "n = {n}");
        let lower = evaluate_bound(BoundName::EdgeMaximalLower, n, 3, None).unwrap();
        assert!(Rational::from_integer(tree.edge_count() as i128) >= lower);
        if n == 8 {
            assert_eq!(lower, ratio(4, 1));
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    pass(
        "06 edge-maximal matching trees",
        &format!("2/6/12 edges, exhaustive maximality, 12 >= 4, {elapsed:?}"),
    );
}

#[test]
fn criterion_07_tight_path_is_minimal_and_tight() {
    let path = tight_path(9, 3);
    assert_eq!(path.edge_count(), 7);
    assert_eq!(
        evaluate_bound(BoundName::ChainLower, 9, 3, None).unwrap(),
        ratio(7, 1)
    );
    assert!(is_hypertree(&path).holds);
    assert!(is_edge_minimal(&path).unwrap().holds);
    pass(
        "07 tight path",
        "7 = 9 - 2 edges, edge-minimal hypertree, lower bound met with equality",
    );
}

#[test]
fn criterion_08_gluing_preserves_the_edge_ratio() {
    let single = Hypergraph::new(3, 3, [[1u32, 2, 3]]).unwrap();
    let base_ratio = edge_ratio(&single);
    assert_eq!(base_ratio, ratio(1, 3));
    for (n, expected) in [(7u32, 7usize), (9, 12)] {
        let steiner = steiner_s23(n).unwrap();
        let glued = hypertrees::constructions::glue(&single, &steiner).unwrap();
        assert_eq!(glued.edge_count(), expected);
        assert!(is_hypertree(&glued).holds);
        assert!(is_edge_minimal(&glued).unwrap().holds);
        assert_eq!(edge_ratio(&glued), base_ratio);
    }
    pass(
        "08 gluing",
        "7 and 12 edges, edge-minimal, edge ratio exactly 1/3",
    );
}

#[test]
fn criterion_09_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let instances = 200;
    for index in 0..instances {
        let h = random_hypergraph(&mut rng, 3, 4, 7, 10);
        let semis = oracle_enumerate(&h, OracleKind::Semicycles, h.n() as usize, None).unwrap();
        let optimized = find_semicycle(&h, None);
        assert_eq!(
            optimized.is_some(),
            !semis.is_empty(),
            "instance {index} semicycle verdict:\n{}",
            h.to_khg()
        );
        if let Some(s) = &optimized {
            assert!(h.is_semicycle_sequence(s), "instance {index}");
        }
        let chains = oracle_enumerate(&h, OracleKind::Chains, h.edge_count(), None).unwrap();
        for a in 1..=h.n() {
            for b in (a + 1)..=h.n() {
                let (u, v) = (VertexId::new(a), VertexId::new(b));
                let found = find_connecting_chain(&h, u, v, None).unwrap();
                let oracle = chains.iter().any(|c| c.contains(u) && c.contains(v));
                assert_eq!(
                    found.is_some(),
                    oracle,
                    "instance {index} pair ({a},{b}):\n{}",
                    h.to_khg()
                );
                if let Some(c) = found {
                    assert!(h.is_chain_sequence(&c), "instance {index}");
                    assert!(c.contains(u) && c.contains(v), "instance {index}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    pass(
        "09 oracle equivalence",
        &format!("{instances} seeded instances, every verdict and pair, {elapsed:?}"),
    );
}

#[test]
fn criterion_10_steiner_systems_are_one_hypertrees() {
    for (n, expected) in [(7u32, 7u64), (9, 12)] {
        let sts = steiner_s23(n).unwrap();
        let h = sts.hypergraph();
        assert_eq!(h.edge_count() as u64, expected);
        let pairs = (n as u64) * (n as u64 - 1) / 2;
        assert_eq!(expected, pairs / 3); // (1/k) C(n, k-1) at k = 3
        assert!(is_hypertree(h).holds);
        assert_eq!(max_chain_length(h, None), 1);
    }
    pass(
        "10 Steiner systems as 1-hypertrees",
        "orders 7 and 9, (1/3)C(n,2) blocks, longest chain 1",
    );
}

#[test]
fn criterion_11_baranyai_factorization() {
    let f = baranyai_factorization(6, 3).unwrap();
    assert_eq!(f.factor_count(), 10);
    let mut union: BTreeSet<Edge> = BTreeSet::new();
    for factor in f.factors() {
        assert_eq!(factor.len(), 2);
        let mut covered: BTreeSet<VertexId> = BTreeSet::new();
        for block in factor {
            assert_eq!(block.len(), 3);
            covered.extend(block.vertices().iter().copied());
            assert!(union.insert(block.clone()), "repeated block [{block}]");
        }
        assert_eq!(covered.len(), 6, "factor does not partition [6]");
    }
    assert_eq!(union.len(), 20); // all C(6,3) triples

    // pair case agrees with the round-robin schedule
    for m in [4u32, 6, 8] {
        let via_flow = baranyai_factorization(m, 2).unwrap();
        let via_rounds = round_robin_one_factorization(m).unwrap();
        assert_eq!(via_flow.factor_count(), via_rounds.factor_count());
        if m == 4 {
            // unique 1-factorization: identical factor sets
            let mut a: Vec<_> = via_flow.factors().to_vec();
            let mut b: Vec<_> = via_rounds.factors().to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
    pass(
        "11 Baranyai factorization",
        "10 factors of 2 triples, union all 20, round-robin cross-check at m=4,6,8",
    );
}

// supporting invariants exercised alongside the criteria

#[test]
fn matching_tree_stays_edge_maximal_at_order_ten() {
    let tree = edge_maximal_matching_tree(10).unwrap();
    assert_eq!(tree.edge_count(), 20);
    assert!(is_hypertree(&tree).holds);
    assert!(is_edge_maximal(&tree).unwrap().holds);
}

#[test]
fn chains_in_semicycle_free_hosts_are_non_self_intersecting() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    for _ in 0..120 {
        let h = random_hypergraph(&mut rng, 3, 4, 6, 8);
        if find_semicycle(&h, None).is_some() {
            continue;
        }
        checked += 1;
        let chains = oracle_enumerate(&h, OracleKind::Chains, h.edge_count(), None).unwrap();
        for c in chains {
            let distinct: BTreeSet<VertexId> = c.vertices().iter().copied().collect();
            assert_eq!(distinct.len(), c.len(), "self-intersecting chain {c}");
        }
    }
    assert!(checked > 10, "too few semicycle-free instances: {checked}");
}

#[test]
fn longest_chain_agrees_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..80 {
        let h = random_hypergraph(&mut rng, 3, 4, 6, 8);
        let chains = oracle_enumerate(&h, OracleKind::Chains, h.edge_count(), None).unwrap();
        let oracle_longest = chains
            .iter()
            .map(|c| c.len() + 1 - h.k())
            .max()
            .unwrap_or(0);
        assert_eq!(max_chain_length(&h, None), oracle_longest, "{}", h.to_khg());
    }
}

#[test]
fn witnesses_replay_against_their_instances() {
    let disjoint = Hypergraph::new(3, 6, [[1u32, 2, 3], [4, 5, 6]]).unwrap();
    let verdict = is_hypertree(&disjoint);
    assert!(verdict.witness.unwrap().replay(&disjoint));

    let k4 = Hypergraph::new(3, 4, [[1u32, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
    let verdict = is_hypertree(&k4);
    assert!(verdict.witness.unwrap().replay(&k4));

    let path = tight_path(5, 3);
    let verdict = is_edge_maximal(&path).unwrap();
    assert!(verdict.witness.unwrap().replay(&path));

    // a stale witness fails to replay after the instance changes
    let chain = WalkSequence::from_indices([1, 2, 3, 4]);
    assert!(hypertrees::Witness::Chain(chain.clone()).replay(&tight_path(5, 3)));
    assert!(!hypertrees::Witness::Chain(chain).replay(&disjoint));
}
