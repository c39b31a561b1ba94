//! Recursive partition of all (k-1)-subsets of `[n]` (n a power of two)
//! into few classes, each covering `[n]` and containing no semicycle with
//! at most k edges.
//!
//! The construction halves the ground set into `{1..n/2}` and `{n/2+1..n}`,
//! builds the analogous partitions of both halves for every subset size,
//! pairs class i of one half with class i of the other, and adds one class
//! per cross product of a size-λ class on the left with a size-(k-1-λ)
//! class on the right. Class count `F(n, k-1)` then satisfies
//! `F(n,1) = 1`, `F(k-1,k-1) = 1`, `F(n,k-1) = 0` for `n < k-1`, and
//! `F(n,k-1) = F(n/2,k-1) + Σ_λ F(n/2,λ)·F(n/2,k-1-λ)`, which stays within
//! `(log2 n)^(k-2)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{khg_lines, parse_khg_block, Edge, Hypergraph, VertexId, WalkSequence};
use crate::search::find_semicycle;
use crate::util::binomial;

/// The classes `Q^1, ..., Q^F` partitioning all lambda-subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionFamily {
    n: u32,
    lambda: usize,
    classes: Vec<BTreeSet<Edge>>,
}

impl PartitionFamily {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn classes(&self) -> &[BTreeSet<Edge>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Serializes as a `khgpart <n> <lambda> <count>` header followed by one
    /// `.khg` block per class.
    pub fn to_khgpart(&self) -> String {
        write_khgpart(self.n, self.lambda, &self.classes)
    }

    pub fn from_khgpart(text: &str) -> Result<PartitionFamily> {
        let mut lines = khg_lines(text);
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing khgpart header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "khgpart" {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("malformed header {header:?}, expected `khgpart <n> <lambda> <count>`"),
            });
        }
        let parse_num = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid number {s:?}"),
            })
        };
        let n = parse_num(fields[1])? as u32;
        let lambda = parse_num(fields[2])? as usize;
        let count = parse_num(fields[3])?;
        let mut classes = Vec::new();
        for _ in 0..count {
            let block = parse_khg_block(&mut lines)?;
            if block.k() != lambda || block.n() != n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!(
                        "class block has parameters ({}, {}), family declares ({lambda}, {n})",
                        block.k(),
                        block.n()
                    ),
                });
            }
            classes.push(block.edge_set().clone());
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "trailing content after last class".into(),
            });
        }
        Ok(PartitionFamily { n, lambda, classes })
    }
}

pub(crate) fn write_khgpart(n: u32, lambda: usize, classes: &[BTreeSet<Edge>]) -> String {
    let mut out = format!("khgpart {n} {lambda} {}\n", classes.len());
    for class in classes {
        out.push_str(&format!("khg {lambda} {n} {}\n", class.len()));
        for member in class {
            out.push_str(&member.to_string());
            out.push('\n');
        }
    }
    out
}

/// Number of classes produced for the given parameters, by the recurrence
/// alone. Checked against built families in tests.
pub fn class_count(n: u32, lambda: usize) -> u64 {
    if (n as usize) < lambda {
        return 0;
    }
    if lambda == 1 || (n as usize) == lambda {
        return 1;
    }
    let half = n / 2;
    let mut total = class_count(half, lambda);
    for mu in 1..lambda {
        total += class_count(half, mu) * class_count(half, lambda - mu);
    }
    total
}

/// Builds the partition of all (k-1)-subsets of `[n]`. Requires `n` to be a
/// power of two; `n < k-1` yields the empty family.
pub fn build_partition(n: u32, k: usize) -> Result<PartitionFamily> {
    if k < 2 {
        return Err(Error::BadParameter(
            "partition needs uniformity at least 2".into(),
        ));
    }
    if !n.is_power_of_two() {
        return Err(Error::NonPowerOfTwo(n));
    }
    let lambda = k - 1;
    Ok(PartitionFamily {
        n,
        lambda,
        classes: build_classes(n, lambda),
    })
}

fn build_classes(n: u32, lambda: usize) -> Vec<BTreeSet<Edge>> {
    if (n as usize) < lambda {
        return Vec::new();
    }
    if lambda == 1 {
        let singletons: BTreeSet<Edge> = (1..=n).map(|v| Edge::from_indices([v])).collect();
        return vec![singletons];
    }
    if (n as usize) == lambda {
        return vec![std::iter::once(Edge::from_indices(1..=n)).collect()];
    }
    let half = n / 2;
    // the upper half carries the same family as the lower half, shifted
    let lower: Vec<Vec<BTreeSet<Edge>>> =
        (1..=lambda).map(|mu| build_classes(half, mu)).collect();
    let shift = |class: &BTreeSet<Edge>| -> BTreeSet<Edge> {
        class
            .iter()
            .map(|e| Edge::from_indices(e.vertices().iter().map(|v| v.get() + half)))
            .collect()
    };
    let mut classes = Vec::new();
    // paired classes: class i of the lower half with class i of the upper
    for class in &lower[lambda - 1] {
        let mut paired = class.clone();
        paired.extend(shift(class));
        classes.push(paired);
    }
    // cross products over the split sizes
    for mu in 1..lambda {
        for left in &lower[mu - 1] {
            for right in &lower[lambda - mu - 1] {
                let right = shift(right);
                let product: BTreeSet<Edge> = left
                    .iter()
                    .cartesian_product(right.iter())
                    .map(|(a, b)| a.union(b))
                    .collect();
                classes.push(product);
            }
        }
    }
    classes
}

/// Outcome of the five partition checks, with witnesses for failures.
#[derive(Clone, Debug)]
pub struct PartitionReport {
    /// Classes are pairwise disjoint; witness: two class indices and the
    /// shared subset.
    pub disjoint: bool,
    pub overlap: Option<(usize, usize, Edge)>,
    /// Every lambda-subset of `[n]` lies in some class.
    pub complete: bool,
    pub missing: Option<Edge>,
    /// Every class covers `[n]`; witness: class index and missed vertex.
    pub covers: bool,
    pub uncovered: Option<(usize, VertexId)>,
    /// No class contains a semicycle with at most k edges.
    pub semicycle_free: bool,
    pub semicycle: Option<(usize, WalkSequence)>,
    /// Class count within `(log2 n)^(k-2)`.
    pub count_ok: bool,
    pub count: u64,
    pub count_bound: u64,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.disjoint && self.complete && self.covers && self.semicycle_free && self.count_ok
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(f, "classes pairwise disjoint: {}", mark(self.disjoint))?;
        if let Some((i, j, e)) = &self.overlap {
            writeln!(f, "  classes {} and {} share [{e}]", i + 1, j + 1)?;
        }
        writeln!(f, "union is all subsets:      {}", mark(self.complete))?;
        if let Some(e) = &self.missing {
            writeln!(f, "  subset [{e}] lies in no class")?;
        }
        writeln!(f, "every class covers [n]:    {}", mark(self.covers))?;
        if let Some((i, v)) = &self.uncovered {
            writeln!(f, "  class {} misses vertex {v}", i + 1)?;
        }
        writeln!(f, "no short semicycle:        {}", mark(self.semicycle_free))?;
        if let Some((i, s)) = &self.semicycle {
            writeln!(f, "  class {} contains semicycle {s}", i + 1)?;
        }
        writeln!(
            f,
            "class count {} within bound {}: {}",
            self.count,
            self.count_bound,
            mark(self.count_ok)
        )
    }
}

/// Runs the five checks on a family claimed to partition the
/// (k-1)-subsets: disjointness, completeness, covering, absence of
/// semicycles with at most k edges in any class, and the class-count bound.
pub fn verify_partition(family: &PartitionFamily, k: usize) -> Result<PartitionReport> {
    if k != family.lambda + 1 {
        return Err(Error::BadParameter(format!(
            "family holds {}-subsets but k = {k} was requested",
            family.lambda
        )));
    }
    let n = family.n;
    let lambda = family.lambda;

    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut overlap = None;
    'outer: for (i, class) in family.classes.iter().enumerate() {
        for member in class {
            if let Some(&j) = owner.get(member) {
                overlap = Some((j, i, member.clone()));
                break 'outer;
            }
            owner.insert(member.clone(), i);
        }
    }
    let disjoint = overlap.is_none();

    let mut missing = None;
    if (n as usize) >= lambda {
        for subset in (1..=n).combinations(lambda) {
            let e = Edge::from_indices(subset);
            if !owner.contains_key(&e) {
                missing = Some(e);
                break;
            }
        }
    }
    let complete = missing.is_none();

    let mut uncovered = None;
    'cover: for (i, class) in family.classes.iter().enumerate() {
        let mut seen = vec![false; n as usize + 1];
        for member in class {
            for v in member.vertices() {
                seen[v.get() as usize] = true;
            }
        }
        for v in 1..=n {
            if !seen[v as usize] {
                uncovered = Some((i, VertexId::new(v)));
                break 'cover;
            }
        }
    }
    let covers = uncovered.is_none();

    let mut semicycle = None;
    for (i, class) in family.classes.iter().enumerate() {
        let class_graph = Hypergraph::from_edge_set(lambda, n, class.clone());
        if let Some(s) = find_semicycle(&class_graph, Some(k)) {
            semicycle = Some((i, s));
            break;
        }
    }
    let semicycle_free = semicycle.is_none();

    let count = family.classes.len() as u64;
    let count_bound = (n.ilog2() as u64).pow(k as u32 - 2);
    let count_ok = count <= count_bound;

    Ok(PartitionReport {
        disjoint,
        overlap,
        complete,
        missing,
        covers,
        uncovered,
        semicycle_free,
        semicycle,
        count_ok,
        count,
        count_bound,
    })
}

/// Total number of lambda-subsets a valid family must hold.
pub fn expected_member_count(n: u32, lambda: usize) -> u64 {
    binomial(n as u64, lambda as u64)
}
