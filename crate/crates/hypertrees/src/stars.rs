//! Star decomposition of 2-hypertrees and the exact star-count identity.
//!
//! In a 2-hypertree the maximal stars (edge sets sharing a common
//! (k-1)-element kernel) partition the edges. Counting the (k-1)-subsets of
//! the vertex set as uncovered, kernels, or non-kernels of a unique star
//! gives the identity
//! `C(n, k-1) = l + Σ_i C_i + (k-1) · Σ_i i·C_i`,
//! where `C_i` counts stars with i edges and `l` the uncovered subsets;
//! `Σ_i i·C_i` equals the edge count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::search::{is_hypertree, max_chain_length_semicycle_free};
use crate::util::binomial;

/// A maximal star: edges sharing the kernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Star {
    pub kernel: Edge,
    pub edges: BTreeSet<Edge>,
}

/// The unique decomposition of a 2-hypertree's edges into maximal stars.
#[derive(Clone, Debug)]
pub struct StarDecomposition {
    pub stars: Vec<Star>,
    /// `C_i`: number of stars with exactly i edges.
    pub profile: BTreeMap<usize, u64>,
    /// `l`: (k-1)-subsets of the vertex set covered by no edge.
    pub uncovered: u64,
    pub n: u32,
    pub k: usize,
    pub edge_count: u64,
}

/// Groups edges into components of the share-(k-1)-vertices relation and
/// verifies every component is a star. Kernels are the common intersection
/// for stars with at least two edges and the lexicographically smallest
/// (k-1)-subset for singletons. Errors with `Not2Hypertree` unless the
/// input is a hypertree with no chain longer than two edges; a non-star
/// component would contradict that and is reported as an anomaly.
pub fn decompose_stars(h: &Hypergraph) -> Result<StarDecomposition> {
    if !is_hypertree(h).holds {
        return Err(Error::Not2Hypertree);
    }
    if max_chain_length_semicycle_free(h, Some(2)) > 2 {
        return Err(Error::Not2Hypertree);
    }
    let k = h.k();
    let edges: Vec<&Edge> = h.edges().collect();

    // components under the adjacency |e ∩ f| = k-1
    let mut component: Vec<usize> = (0..edges.len()).collect();
    fn root(component: &mut [usize], mut x: usize) -> usize {
        while component[x] != x {
            component[x] = component[component[x]];
            x = component[x];
        }
        x
    }
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if edges[i].intersection_size(edges[j]) + 1 == k {
                let (a, b) = (root(&mut component, i), root(&mut component, j));
                component[a.max(b)] = a.min(b);
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<&Edge>> = BTreeMap::new();
    for (i, edge) in edges.iter().enumerate() {
        let r = root(&mut component, i);
        grouped.entry(r).or_default().push(*edge);
    }

    let mut stars = Vec::new();
    let mut kernels: BTreeSet<Edge> = BTreeSet::new();
    for members in grouped.values() {
        let kernel = if members.len() == 1 {
            // drop the largest vertex: the smallest (k-1)-subset
            Edge::new(members[0].vertices()[..k - 1].iter().copied())
        } else {
            let mut common = members[0].clone();
            for e in &members[1..] {
                common = common.intersection(e);
            }
            if common.len() != k - 1 {
                return Err(Error::DecompositionAnomaly(format!(
                    "component of {} edges has common intersection of size {}",
                    members.len(),
                    common.len()
                )));
            }
            common
        };
        if !members.iter().all(|e| kernel.is_subset_of(e)) {
            return Err(Error::DecompositionAnomaly(format!(
                "kernel [{kernel}] is not shared by its whole component"
            )));
        }
        if !kernels.insert(kernel.clone()) {
            return Err(Error::DecompositionAnomaly(format!(
                "two maximal stars share the kernel [{kernel}]"
            )));
        }
        stars.push(Star {
            kernel,
            edges: members.iter().map(|e| (*e).clone()).collect(),
        });
    }

    let mut profile: BTreeMap<usize, u64> = BTreeMap::new();
    for star in &stars {
        *profile.entry(star.edges.len()).or_default() += 1;
    }

    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    for e in h.edges() {
        for skip in 0..k {
            covered.insert(Edge::new(
                e.vertices()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v),
            ));
        }
    }
    let uncovered = binomial(h.n() as u64, k as u64 - 1) - covered.len() as u64;

    Ok(StarDecomposition {
        stars,
        profile,
        uncovered,
        n: h.n(),
        k,
        edge_count: h.edge_count() as u64,
    })
}

/// The two exact integer identities behind the star count, with every term
/// recorded for reporting.
#[derive(Clone, Debug)]
pub struct StarEquationLedger {
    /// Rows (i, C_i, i·C_i) for occurring star sizes.
    pub rows: Vec<(usize, u64, u64)>,
    pub star_count: u64,
    pub weighted_sum: u64,
    pub uncovered: u64,
    pub subset_total: u64,
    pub edge_count: u64,
    pub n: u32,
    pub k: usize,
}

impl StarEquationLedger {
    /// `C(n,k-1) = l + Σ C_i + (k-1)·Σ i·C_i`.
    pub fn counting_identity_holds(&self) -> bool {
        self.subset_total
            == self.uncovered + self.star_count + (self.k as u64 - 1) * self.weighted_sum
    }

    /// `Σ i·C_i = |E|`.
    pub fn edge_identity_holds(&self) -> bool {
        self.weighted_sum == self.edge_count
    }

    pub fn holds(&self) -> bool {
        self.counting_identity_holds() && self.edge_identity_holds()
    }
}

impl fmt::Display for StarEquationLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "star decomposition: n={} k={} |E|={}",
            self.n, self.k, self.edge_count
        )?;
        writeln!(f, "{:>6} {:>8} {:>8}", "i", "C_i", "i*C_i")?;
        for (i, count, weighted) in &self.rows {
            writeln!(f, "{i:>6} {count:>8} {weighted:>8}")?;
        }
        writeln!(
            f,
            "stars: {}   uncovered (k-1)-subsets: l = {}",
            self.star_count, self.uncovered
        )?;
        let rhs = self.uncovered + self.star_count + (self.k as u64 - 1) * self.weighted_sum;
        writeln!(
            f,
            "counting identity: C(n,k-1) = l + sum(C_i) + (k-1)*sum(i*C_i)"
        )?;
        writeln!(
            f,
            "  {} = {} + {} + {}*{} = {}  [{}]",
            self.subset_total,
            self.uncovered,
            self.star_count,
            self.k - 1,
            self.weighted_sum,
            rhs,
            if self.counting_identity_holds() { "ok" } else { "VIOLATED" }
        )?;
        writeln!(
            f,
            "edge identity: sum(i*C_i) = {} vs |E| = {}  [{}]",
            self.weighted_sum,
            self.edge_count,
            if self.edge_identity_holds() { "ok" } else { "VIOLATED" }
        )
    }
}

/// Decomposes and audits both identities. They must hold for every
/// 2-hypertree; a failure indicates the input was not one or a checker bug.
pub fn check_star_equation(h: &Hypergraph) -> Result<StarEquationLedger> {
    let decomposition = decompose_stars(h)?;
    Ok(ledger_from(&decomposition))
}

pub fn ledger_from(d: &StarDecomposition) -> StarEquationLedger {
    let rows: Vec<(usize, u64, u64)> = d
        .profile
        .iter()
        .map(|(&i, &c)| (i, c, i as u64 * c))
        .collect();
    let star_count = rows.iter().map(|(_, c, _)| c).sum();
    let weighted_sum = rows.iter().map(|(_, _, w)| w).sum();
    StarEquationLedger {
        rows,
        star_count,
        weighted_sum,
        uncovered: d.uncovered,
        subset_total: binomial(d.n as u64, d.k as u64 - 1),
        edge_count: d.edge_count,
        n: d.n,
        k: d.k,
    }
}
