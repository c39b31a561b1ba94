//! Constructive design-theoretic ingredients: 1-factorizations of complete
//! graphs and complete uniform hypergraphs, Steiner triple systems, and a
//! design validity checker.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexId};
use crate::partition::write_khgpart;
use crate::util::binomial;

/// A 1-factorization: all r-subsets of `[m]` split into factors, each factor
/// a partition of `[m]` into m/r blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    m: u32,
    r: usize,
    factors: Vec<BTreeSet<Edge>>,
}

impl Factorization {
    /// Wraps and checks a factorization; all three invariants (each factor
    /// partitions the ground set, factors are disjoint, the union is every
    /// r-subset) are asserted for every generated instance.
    pub(crate) fn new(m: u32, r: usize, factors: Vec<BTreeSet<Edge>>) -> Factorization {
        let f = Factorization { m, r, factors };
        f.assert_valid();
        f
    }

    fn assert_valid(&self) {
        let m = self.m as u64;
        let r = self.r as u64;
        assert_eq!(
            self.factors.len() as u64,
            binomial(m, r) * r / m,
            "wrong factor count"
        );
        let mut all: BTreeSet<&Edge> = BTreeSet::new();
        for factor in &self.factors {
            assert_eq!(factor.len() as u64, m / r, "wrong block count in factor");
            let mut covered: BTreeSet<VertexId> = BTreeSet::new();
            for block in factor {
                assert_eq!(block.len(), self.r, "wrong block size");
                for &v in block.vertices() {
                    assert!(
                        v.get() >= 1 && v.get() <= self.m,
                        "block vertex out of range"
                    );
                    assert!(covered.insert(v), "blocks within a factor overlap");
                }
                assert!(all.insert(block), "factors share a block");
            }
            assert_eq!(covered.len() as u64, m, "factor does not cover [m]");
        }
        assert_eq!(
            all.len() as u64,
            binomial(m, r),
            "union must be all r-subsets"
        );
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn factors(&self) -> &[BTreeSet<Edge>] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Serializes in the family format, one class per factor.
    pub fn to_khgpart(&self) -> String {
        write_khgpart(self.m, self.r, &self.factors)
    }
}

/// An S(t, k, n) Steiner system: every t-subset of `[n]` lies in exactly one
/// block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SteinerSystem {
    t: usize,
    blocks: Hypergraph,
}

impl SteinerSystem {
    /// Validates the design property and the block count
    /// `C(n,t) / C(k,t)` before wrapping.
    pub fn new(t: usize, k: usize, n: u32, blocks: Hypergraph) -> Result<SteinerSystem> {
        if blocks.k() != k || blocks.n() != n {
            return Err(Error::BadParameter(format!(
                "blocks have parameters ({}, {}), expected ({k}, {n})",
                blocks.k(),
                blocks.n()
            )));
        }
        let expected = binomial(n as u64, t as u64) / binomial(k as u64, t as u64);
        if blocks.edge_count() as u64 != expected || !verify_design(&blocks, t, 1) {
            return Err(Error::NotADesign {
                t,
                n,
                k,
                lambda: 1,
            });
        }
        Ok(SteinerSystem { t, blocks })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.blocks.k()
    }

    pub fn n(&self) -> u32 {
        self.blocks.n()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.edge_count()
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.blocks
    }
}

/// True iff every t-subset of `[n]` is contained in exactly `lambda` edges.
pub fn verify_design(h: &Hypergraph, t: usize, lambda: u64) -> bool {
    assert!(t >= 1 && t < h.k(), "need 1 <= t < k");
    let mut counts: BTreeMap<Vec<VertexId>, u64> = BTreeMap::new();
    for e in h.edges() {
        for sub in e.vertices().iter().copied().combinations(t) {
            *counts.entry(sub).or_default() += 1;
        }
    }
    counts.values().all(|&c| c == lambda)
        && counts.len() as u64 == binomial(h.n() as u64, t as u64)
}

/// 1-factorization of the complete graph on `[m]` by the circle method:
/// vertex m stays fixed while the others rotate, giving m-1 perfect
/// matchings in a fixed round order.
pub fn round_robin_one_factorization(m: u32) -> Result<Factorization> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::OddGroundSet(m));
    }
    let wheel = (m - 1) as i64;
    let mut factors = Vec::new();
    for round in 0..wheel {
        let mut blocks = BTreeSet::new();
        blocks.insert(Edge::from_indices([round as u32 + 1, m]));
        for i in 1..=(m as i64 - 2) / 2 {
            let a = (round + i).rem_euclid(wheel) as u32 + 1;
            let b = (round - i).rem_euclid(wheel) as u32 + 1;
            blocks.insert(Edge::from_indices([a, b]));
        }
        factors.push(blocks);
    }
    Ok(Factorization::new(m, 2, factors))
}

/// 1-factorization of the complete r-uniform hypergraph on `[m]`, for r
/// dividing m.
///
/// Ground elements are added one at a time. Before element s+1 arrives,
/// every subset A of `{1..s}` occurs as a block with global multiplicity
/// `C(m-s, r-|A|)`; routing the choice of which block absorbs the new
/// element through an integral max-flow (factors on one side, block shapes
/// on the other, shape demands `C(m-s-1, r-|A|-1)`) keeps the invariant, so
/// after the last step every block is a full r-set and each r-set occurs
/// exactly once. The fractional flow that assigns each block weight
/// `(r-|A|)/(m-s)` is feasible, hence an integral assignment exists.
pub fn baranyai_factorization(m: u32, r: usize) -> Result<Factorization> {
    if r < 1 || r > m as usize {
        return Err(Error::BadParameter(format!(
            "block size {r} out of range 1..={m}"
        )));
    }
    if !(m as usize).is_multiple_of(r) {
        return Err(Error::NonDivisible { m, r });
    }
    if r == m as usize {
        let full: BTreeSet<Edge> = std::iter::once(Edge::from_indices(1..=m)).collect();
        return Ok(Factorization::new(m, r, vec![full]));
    }
    if r == 1 {
        let singletons: BTreeSet<Edge> = (1..=m).map(|v| Edge::from_indices([v])).collect();
        return Ok(Factorization::new(m, 1, vec![singletons]));
    }
    // desk-scale caps
    if r == 3 && m > 12 {
        return Err(Error::ResourceCap(format!(
            "triple factorization capped at ground sets of size 12, got {m}"
        )));
    }
    if r >= 4 {
        return Err(Error::ResourceCap(format!(
            "factorization with block size {r} is beyond the configured desk scale"
        )));
    }

    let m_us = m as usize;
    let blocks_per_factor = m_us / r;
    let factor_count = (binomial(m as u64, r as u64) * r as u64 / m as u64) as usize;
    let mut factors: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); blocks_per_factor]; factor_count];

    for s in 0..m_us {
        let x = (s + 1) as u32;
        let mut type_ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for factor in &factors {
            for block in factor {
                if block.len() < r && !type_ids.contains_key(block) {
                    let next = type_ids.len();
                    type_ids.insert(block.clone(), next);
                }
            }
        }
        let type_count = type_ids.len();
        let source = 0;
        let sink = 1 + factor_count + type_count;
        let mut net = flow::Network::new(sink + 1);
        let mut factor_choices: Vec<Vec<(usize, usize)>> = Vec::with_capacity(factor_count);
        for (i, factor) in factors.iter().enumerate() {
            net.add_edge(source, 1 + i, 1);
            let mut seen: BTreeSet<&Vec<u32>> = BTreeSet::new();
            let mut choices = Vec::new();
            for block in factor {
                if block.len() < r && seen.insert(block) {
                    let tid = type_ids[block];
                    let eid = net.add_edge(1 + i, 1 + factor_count + tid, 1);
                    choices.push((eid, tid));
                }
            }
            factor_choices.push(choices);
        }
        for (block, tid) in &type_ids {
            let demand = binomial((m_us - s - 1) as u64, (r - block.len() - 1) as u64) as i64;
            net.add_edge(1 + factor_count + tid, sink, demand);
        }
        let value = net.max_flow(source, sink);
        assert_eq!(value, factor_count as i64, "balanced assignment must exist");

        let mut shapes: Vec<Vec<u32>> = vec![Vec::new(); type_count];
        for (block, tid) in &type_ids {
            shapes[*tid] = block.clone();
        }
        for (i, choices) in factor_choices.iter().enumerate() {
            let (_, tid) = choices
                .iter()
                .find(|(eid, _)| net.residual(*eid) == 0)
                .expect("each factor extends exactly one block");
            let shape = &shapes[*tid];
            let pos = factors[i]
                .iter()
                .position(|b| b == shape)
                .expect("chosen shape present in factor");
            factors[i][pos].push(x); // x exceeds all current entries, stays sorted
        }
    }

    let mut factors: Vec<BTreeSet<Edge>> = factors
        .into_iter()
        .map(|f| f.into_iter().map(Edge::from_indices).collect())
        .collect();
    factors.sort();
    Ok(Factorization::new(m, r, factors))
}

/// Steiner triple system on `2^m - 1` vertices by doubling: group
/// `V_j = {v_i : 2^j <= i < 2^(j+1)}`, 1-factorize the complete graph on
/// each group, and give the i-th matching of each group the apex `v_i`
/// (exactly the earlier vertices serve as apexes).
pub fn doubling_sts(m: u32) -> SteinerSystem {
    assert!(m >= 2, "doubling needs at least two groups");
    let n = (1u32 << m) - 1;
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for j in 1..m {
        let group = 1u32 << j; // size of V_j and index of its first vertex
        let matchings = round_robin_one_factorization(group).expect("group sizes are even");
        for (i, factor) in matchings.factors().iter().enumerate() {
            let apex = i as u32 + 1;
            for pair in factor {
                let mut block: Vec<u32> =
                    pair.vertices().iter().map(|v| v.get() + group - 1).collect();
                block.push(apex);
                blocks.push(block);
            }
        }
    }
    let h = Hypergraph::new(3, n, blocks).expect("triples on [n]");
    SteinerSystem::new(2, 3, n, h).expect("doubling yields a Steiner triple system")
}

/// Steiner triple system of any admissible order n (1 or 3 mod 6), by the
/// quasigroup constructions of Bose (3 mod 6) and Skolem (1 mod 6).
pub fn steiner_s23(n: u32) -> Result<SteinerSystem> {
    if n < 3 || (n % 6 != 1 && n % 6 != 3) {
        return Err(Error::InadmissibleOrder(n));
    }
    let blocks = if n % 6 == 3 {
        bose_triples(n)
    } else {
        skolem_triples(n)
    };
    let h = Hypergraph::new(3, n, blocks)?;
    SteinerSystem::new(2, 3, n, h)
}

/// Order 6t+3: points Z_s x {0,1,2} with s = 2t+1, using the idempotent
/// commutative quasigroup x*y = (x+y)/2 mod s.
fn bose_triples(n: u32) -> Vec<Vec<u32>> {
    let s = n / 3;
    let point = |x: u32, level: u32| level * s + x + 1;
    let half = s.div_ceil(2); // inverse of 2 mod s (s odd)
    let mut blocks = Vec::new();
    for x in 0..s {
        blocks.push(vec![point(x, 0), point(x, 1), point(x, 2)]);
    }
    for x in 0..s {
        for y in (x + 1)..s {
            let z = (x + y) * half % s;
            for level in 0..3 {
                blocks.push(vec![point(x, level), point(y, level), point(z, (level + 1) % 3)]);
            }
        }
    }
    blocks
}

/// Order 6t+1: points Z_s x {0,1,2} plus one extra point, with s = 2t and a
/// half-idempotent commutative quasigroup obtained by relabelling addition
/// mod s so that x*x = x on the first t elements.
fn skolem_triples(n: u32) -> Vec<Vec<u32>> {
    let s = (n - 1) / 3;
    let t = s / 2;
    let point = |x: u32, level: u32| level * s + x + 1;
    let infinity = n;
    let relabel = |e: u32| if e.is_multiple_of(2) { e / 2 } else { t + (e - 1) / 2 };
    let star = |x: u32, y: u32| relabel((x + y) % s);
    let mut blocks = Vec::new();
    for x in 0..t {
        blocks.push(vec![point(x, 0), point(x, 1), point(x, 2)]);
        blocks.push(vec![infinity, point(t + x, 0), point(x, 1)]);
        blocks.push(vec![infinity, point(t + x, 1), point(x, 2)]);
        blocks.push(vec![infinity, point(t + x, 2), point(x, 0)]);
    }
    for x in 0..s {
        for y in (x + 1)..s {
            let z = star(x, y);
            for level in 0..3 {
                blocks.push(vec![point(x, level), point(y, level), point(z, (level + 1) % 3)]);
            }
        }
    }
    blocks
}

/// The complete matching `{1,2}, {3,4}, ...` as a 1-(n,2,1) design.
pub fn complete_matching(n: u32) -> Result<SteinerSystem> {
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::OddGroundSet(n));
    }
    let blocks: Vec<[u32; 2]> = (1..=n / 2).map(|i| [2 * i - 1, 2 * i]).collect();
    let h = Hypergraph::new(2, n, blocks)?;
    SteinerSystem::new(1, 2, n, h)
}

mod flow {
    //! Minimal max-flow on an adjacency edge list, reverse edges paired by
    //! index xor. BFS augmenting paths are enough at the sizes used here.

    use std::collections::VecDeque;

    pub struct Network {
        adj: Vec<Vec<usize>>,
        to: Vec<usize>,
        cap: Vec<i64>,
    }

    impl Network {
        pub fn new(nodes: usize) -> Network {
            Network {
                adj: vec![Vec::new(); nodes],
                to: Vec::new(),
                cap: Vec::new(),
            }
        }

        pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
            let id = self.to.len();
            self.to.push(to);
            self.cap.push(cap);
            self.adj[from].push(id);
            self.to.push(from);
            self.cap.push(0);
            self.adj[to].push(id + 1);
            id
        }

        /// Remaining capacity of a forward edge after `max_flow`.
        pub fn residual(&self, edge: usize) -> i64 {
            self.cap[edge]
        }

        pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
            let mut total = 0;
            loop {
                let mut parent: Vec<Option<usize>> = vec![None; self.adj.len()];
                let mut visited = vec![false; self.adj.len()];
                visited[source] = true;
                let mut queue = VecDeque::from([source]);
                while let Some(u) = queue.pop_front() {
                    for &e in &self.adj[u] {
                        let v = self.to[e];
                        if !visited[v] && self.cap[e] > 0 {
                            visited[v] = true;
                            parent[v] = Some(e);
                            queue.push_back(v);
                        }
                    }
                }
                if !visited[sink] {
                    return total;
                }
                let mut bottleneck = i64::MAX;
                let mut v = sink;
                while v != source {
                    let e = parent[v].expect("path exists");
                    bottleneck = bottleneck.min(self.cap[e]);
                    v = self.to[e ^ 1];
                }
                let mut v = sink;
                while v != source {
                    let e = parent[v].expect("path exists");
                    self.cap[e] -= bottleneck;
                    self.cap[e ^ 1] += bottleneck;
                    v = self.to[e ^ 1];
                }
                total += bottleneck;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{is_hypertree, max_chain_length};

    #[test]
    fn round_robin_small_cases() {
        let f = round_robin_one_factorization(2).unwrap();
        assert_eq!(f.factor_count(), 1);
        assert_eq!(f.factors()[0].len(), 1);

        let f = round_robin_one_factorization(4).unwrap();
        assert_eq!(f.factor_count(), 3);

        let f = round_robin_one_factorization(6).unwrap();
        assert_eq!(f.factor_count(), 5);
        assert!(f.factors().iter().all(|m| m.len() == 3));

        assert!(matches!(
            round_robin_one_factorization(5),
            Err(Error::OddGroundSet(5))
        ));
    }

    #[test]
    fn baranyai_trivial_and_small() {
        let f = baranyai_factorization(3, 3).unwrap();
        assert_eq!(f.factor_count(), 1);
        assert_eq!(f.factors()[0].len(), 1);

        let f = baranyai_factorization(6, 3).unwrap();
        assert_eq!(f.factor_count(), 10);
        assert!(f.factors().iter().all(|fac| fac.len() == 2));

        let f = baranyai_factorization(9, 3).unwrap();
        assert_eq!(f.factor_count(), 28);
    }

    #[test]
    fn baranyai_pairs_agree_with_round_robin_on_the_unique_case() {
        // the 1-factorization of the complete graph on 4 vertices is unique,
        // so the two algorithms must produce the same factor set
        let a = baranyai_factorization(4, 2).unwrap();
        let b = round_robin_one_factorization(4).unwrap();
        let mut fa: Vec<_> = a.factors().to_vec();
        let mut fb: Vec<_> = b.factors().to_vec();
        fa.sort();
        fb.sort();
        assert_eq!(fa, fb);

        // larger even orders: both are valid with the same factor count
        for m in [6u32, 8] {
            let a = baranyai_factorization(m, 2).unwrap();
            let b = round_robin_one_factorization(m).unwrap();
            assert_eq!(a.factor_count(), b.factor_count());
        }
    }

    #[test]
    fn baranyai_rejects_out_of_scope_parameters() {
        assert!(matches!(
            baranyai_factorization(7, 3),
            Err(Error::NonDivisible { .. })
        ));
        assert!(matches!(
            baranyai_factorization(15, 3),
            Err(Error::ResourceCap(_))
        ));
        assert!(matches!(
            baranyai_factorization(8, 4),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn doubling_block_counts() {
        assert_eq!(doubling_sts(2).block_count(), 1);
        let sts7 = doubling_sts(3);
        assert_eq!(sts7.block_count(), 7);
        assert!(sts7.hypergraph().contains_edge(&Edge::from_indices([1, 2, 3])));
        assert_eq!(doubling_sts(4).block_count(), 35);
    }

    #[test]
    fn doubling_blocks_have_one_apex_below_the_pair_group() {
        for m in [3u32, 4] {
            let sts = doubling_sts(m);
            for block in sts.hypergraph().edges() {
                let vs: Vec<u32> = block.vertices().iter().map(|v| v.get()).collect();
                let group = |x: u32| 31 - x.leading_zeros(); // floor(log2)
                assert_eq!(group(vs[1]), group(vs[2]), "pair must share a group: {vs:?}");
                assert!(vs[0] < (1 << group(vs[1])), "apex must precede the group: {vs:?}");
            }
        }
    }

    #[test]
    fn triple_system_orders() {
        assert_eq!(steiner_s23(3).unwrap().block_count(), 1);
        assert_eq!(steiner_s23(7).unwrap().block_count(), 7);
        assert_eq!(steiner_s23(9).unwrap().block_count(), 12);
        assert_eq!(steiner_s23(13).unwrap().block_count(), 26);
        assert_eq!(steiner_s23(15).unwrap().block_count(), 35);
        assert_eq!(steiner_s23(19).unwrap().block_count(), 57);
        assert_eq!(steiner_s23(21).unwrap().block_count(), 70);
        assert!(matches!(steiner_s23(8), Err(Error::InadmissibleOrder(8))));
        assert!(matches!(steiner_s23(11), Err(Error::InadmissibleOrder(11))));
    }

    #[test]
    fn steiner_systems_are_one_hypertrees() {
        for sts in [doubling_sts(3), steiner_s23(9).unwrap()] {
            let h = sts.hypergraph();
            assert!(is_hypertree(h).holds);
            assert_eq!(max_chain_length(h, None), 1);
        }
    }

    #[test]
    fn design_checker_examples() {
        assert!(verify_design(doubling_sts(3).hypergraph(), 2, 1));

        let matching = complete_matching(6).unwrap();
        assert!(verify_design(matching.hypergraph(), 1, 1));

        let star = Hypergraph::new(3, 4, [[1u32, 2, 3], [1, 2, 4]]).unwrap();
        assert!(!verify_design(&star, 2, 1));
    }
}
