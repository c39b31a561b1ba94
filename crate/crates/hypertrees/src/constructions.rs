//! Hypergraph families built by the library, each with an exact predicted
//! edge count that the builders must match.

use std::collections::BTreeSet;
use std::fmt;

use crate::designs::{
    baranyai_factorization, complete_matching, doubling_sts, steiner_s23, verify_design,
    SteinerSystem,
};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexId};
use crate::partition::{build_partition, class_count};
use crate::search::{is_chain_connected, is_edge_minimal};
use crate::util::binomial;

/// Labels the classes of the recursive partition: vertex set `[n]` plus one
/// label vertex `q_i` per class (mapped to `n+i`), edges `e ∪ {q_i}` for
/// every class member, plus a base hypertree on the labels — the tight path
/// `q_1, ..., q_l` when `l >= k`, nothing when `l = 1`.
///
/// For `1 < l < k` no k-uniform hypertree on the labels exists, so those
/// parameters are rejected.
pub fn labelled_partition_hypertree(n: u32, k: usize) -> Result<Hypergraph> {
    let family = build_partition(n, k)?;
    let l = family.class_count();
    if l != 1 && l < k {
        return Err(Error::UnsupportedLabelCount { l, k });
    }
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for (i, class) in family.classes().iter().enumerate() {
        let label = VertexId::new(n + i as u32 + 1);
        for member in class {
            edges.insert(member.with_vertex(label));
        }
    }
    if l >= k {
        for start in 0..=(l - k) {
            let path_edge =
                Edge::from_indices((start..start + k).map(|i| n + i as u32 + 1));
            edges.insert(path_edge);
        }
    }
    Ok(Hypergraph::from_edge_set(k, n + l as u32, edges))
}

/// Extends an S(k-2, k-1, n) Steiner system to a k-uniform hypergraph along
/// a vertex order: each block, once complete in the order, pairs with every
/// later vertex. The first k-1 vertices of the order must form a block.
pub fn ordered_extension(design: &SteinerSystem, perm: &[u32]) -> Result<Hypergraph> {
    let n = design.n();
    let block_size = design.k();
    if design.t() + 1 != block_size {
        return Err(Error::BadParameter(format!(
            "ordered extension needs an S(k-2, k-1, n) design, got t = {}, block size {}",
            design.t(),
            block_size
        )));
    }
    let k = block_size + 1;
    if perm.len() != n as usize {
        return Err(Error::BadPermutation(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut position = vec![0usize; n as usize + 1]; // vertex -> 1-based rank
    let mut seen = vec![false; n as usize + 1];
    for (rank, &v) in perm.iter().enumerate() {
        if v < 1 || v > n || seen[v as usize] {
            return Err(Error::BadPermutation(format!(
                "not a permutation of 1..={n}"
            )));
        }
        seen[v as usize] = true;
        position[v as usize] = rank + 1;
    }
    let head = Edge::from_indices(perm[..block_size].iter().copied());
    if !design.hypergraph().contains_edge(&head) {
        return Err(Error::BadPermutation(format!(
            "the first {block_size} vertices [{head}] are not a block of the design"
        )));
    }
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for block in design.hypergraph().edges() {
        // the block belongs to F_i for i = the rank of its latest vertex
        let i = block
            .vertices()
            .iter()
            .map(|v| position[v.get() as usize])
            .max()
            .expect("blocks are nonempty");
        for rank in (i + 1)..=(n as usize) {
            let extension = VertexId::new(perm[rank - 1]);
            edges.insert(block.with_vertex(extension));
        }
    }
    Ok(Hypergraph::from_edge_set(k, n, edges))
}

/// Premise checks for extending a (k-1)-uniform design `g` to a k-uniform
/// `h` on the same vertex set.
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// `g` is an S(k-2, k-1, n) design.
    pub design_ok: bool,
    /// Some edge of `h` contains no block of `g`.
    pub covering_violation: Option<Edge>,
    /// Blocks f1, f2 with |f1 ∩ f2| = k-3 extended into each other:
    /// f1 ∪ {v2} and f2 ∪ {v1} both edges of `h`.
    pub mutual_pair: Option<(Edge, Edge)>,
    /// `h` is chain-connected.
    pub connected: bool,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.design_ok
            && self.covering_violation.is_none()
            && self.mutual_pair.is_none()
            && self.connected
    }
}

impl fmt::Display for ExtensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(f, "underlying Steiner system:  {}", mark(self.design_ok))?;
        writeln!(
            f,
            "every edge has a kernel:    {}",
            mark(self.covering_violation.is_none())
        )?;
        if let Some(e) = &self.covering_violation {
            writeln!(f, "  edge [{e}] contains no block")?;
        }
        writeln!(
            f,
            "no mutually extended pair:  {}",
            mark(self.mutual_pair.is_none())
        )?;
        if let Some((f1, f2)) = &self.mutual_pair {
            writeln!(f, "  blocks [{f1}] and [{f2}] extend into each other")?;
        }
        writeln!(f, "chain-connected:            {}", mark(self.connected))
    }
}

/// Verifies the four premises under which an extension of a Steiner system
/// is a 2-hypertree: `g` is an S(k-2, k-1, n), every edge of `h` contains a
/// block of `g`, no two blocks are mutually extended, and `h` is
/// chain-connected.
pub fn check_extension_premises(g: &Hypergraph, h: &Hypergraph) -> Result<ExtensionReport> {
    let k = h.k();
    if k < 3 {
        return Err(Error::BadParameter(
            "extension premises need uniformity at least 3".into(),
        ));
    }
    if g.k() + 1 != k || g.n() != h.n() {
        return Err(Error::BadParameter(format!(
            "expected a ({}-uniform, n = {}) design under the extension, got ({}, {})",
            k - 1,
            h.n(),
            g.k(),
            g.n()
        )));
    }
    let design_ok = verify_design(g, k - 2, 1);

    let mut covering_violation = None;
    for e in h.edges() {
        if !g.edges().any(|f| f.is_subset_of(e)) {
            covering_violation = Some(e.clone());
            break;
        }
    }

    let blocks: Vec<&Edge> = g.edges().collect();
    let mut mutual_pair = None;
    'outer: for (a, f1) in blocks.iter().enumerate() {
        for f2 in blocks.iter().skip(a + 1) {
            if f1.intersection_size(f2) + 3 != k {
                continue;
            }
            let extended = |from: &Edge, into: &Edge| {
                from.vertices()
                    .iter()
                    .any(|&v| !into.contains(v) && h.contains_edge(&into.with_vertex(v)))
            };
            if extended(f2, f1) && extended(f1, f2) {
                mutual_pair = Some(((*f1).clone(), (*f2).clone()));
                break 'outer;
            }
        }
    }

    let connected = is_chain_connected(h).holds;

    Ok(ExtensionReport {
        design_ok,
        covering_violation,
        mutual_pair,
        connected,
    })
}

/// The 4-uniform family: ordered extension of the doubling triple system on
/// `2^m - 1` vertices, in the natural vertex order.
pub fn four_uniform_from_doubling(m: u32) -> Hypergraph {
    assert!(m >= 3, "need at least 7 vertices");
    let sts = doubling_sts(m);
    let identity: Vec<u32> = (1..=sts.n()).collect();
    ordered_extension(&sts, &identity).expect("the first three vertices form a block")
}

/// Grid of `(l+1)` rows by `m` columns with `l = C(m-1, k-2)`: row i is
/// assigned the i-th factor of a 1-factorization of the (k-1)-subsets of
/// `[m]`, and every vertex of row i forms an edge with every factor block
/// projected onto every lower row. Vertex `(i, j)` maps to `(i-1)m + j`.
pub fn edge_minimal_grid(m: u32, k: usize) -> Result<Hypergraph> {
    if k < 3 {
        return Err(Error::BadParameter("grid needs uniformity at least 3".into()));
    }
    if !(m as usize).is_multiple_of(k - 1) {
        return Err(Error::DivisibilityViolation { m, k });
    }
    let factors = baranyai_factorization(m, k - 1)?;
    let l = factors.factor_count() as u32;
    debug_assert_eq!(l as u64, binomial(m as u64 - 1, k as u64 - 2));
    let n = (l + 1) * m;
    let cell = |row: u32, col: u32| (row - 1) * m + col;
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for (index, factor) in factors.factors().iter().enumerate() {
        let i = index as u32 + 1;
        for j in 1..=m {
            for r in (i + 1)..=(l + 1) {
                for block in factor {
                    let edge = Edge::from_indices(
                        std::iter::once(cell(i, j))
                            .chain(block.vertices().iter().map(|s| cell(r, s.get()))),
                    );
                    edges.insert(edge);
                }
            }
        }
    }
    Ok(Hypergraph::from_edge_set(k, n, edges))
}

/// Pairs `(v_{i1}, v_{i2})` stacked in rows; every vertex forms an edge with
/// each earlier pair. Vertex `(i, j)` maps to `2(i-1) + j`. The result is an
/// edge-maximal 3-uniform hypertree with `n(n-2)/4` edges.
pub fn edge_maximal_matching_tree(n: u32) -> Result<Hypergraph> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddOrder(n));
    }
    if n <= 2 {
        return Err(Error::TooSmall(n));
    }
    let rows = n / 2;
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for i in 1..=rows {
        for j in 1..=2u32 {
            for r in 1..i {
                edges.insert(Edge::from_indices([2 * (i - 1) + j, 2 * r - 1, 2 * r]));
            }
        }
    }
    Ok(Hypergraph::from_edge_set(3, n, edges))
}

/// Places a copy of `base` on every block of an S(2, l, n) Steiner system
/// via the ascending-order vertex bijection and takes the union. Copies are
/// edge-disjoint and pairwise share at most one vertex, so the edge-ratio
/// of the base is preserved exactly.
pub fn glue(base: &Hypergraph, steiner: &SteinerSystem) -> Result<Hypergraph> {
    if base.k() < 3 {
        return Err(Error::BadParameter("gluing needs uniformity at least 3".into()));
    }
    if steiner.t() != 2 || steiner.k() != base.n() as usize {
        return Err(Error::BlockSizeMismatch {
            base: base.n(),
            block: steiner.k(),
        });
    }
    match is_edge_minimal(base) {
        Ok(v) if v.holds => {}
        Ok(_) | Err(Error::NotAHypertree) => return Err(Error::BaseNotEdgeMinimal),
        Err(e) => return Err(e),
    }
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for block in steiner.hypergraph().edges() {
        let slots = block.vertices();
        for e in base.edges() {
            edges.insert(Edge::new(
                e.vertices().iter().map(|v| slots[v.get() as usize - 1]),
            ));
        }
    }
    Ok(Hypergraph::from_edge_set(base.k(), steiner.n(), edges))
}

/// Default vertex order for the ordered-extension family: the
/// lexicographically first block, then the remaining vertices ascending.
/// This satisfies the head-block precondition for any design.
pub fn canonical_extension_order(design: &SteinerSystem) -> Vec<u32> {
    let first = design
        .hypergraph()
        .edges()
        .next()
        .expect("designs have at least one block");
    let mut order: Vec<u32> = first.vertices().iter().map(|v| v.get()).collect();
    let head: BTreeSet<u32> = order.iter().copied().collect();
    order.extend((1..=design.n()).filter(|v| !head.contains(v)));
    order
}

/// Source designs for the ordered extension family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DesignSpec {
    Matching { n: u32 },
    DoublingSts { m: u32 },
    SteinerTriples { n: u32 },
}

impl DesignSpec {
    pub fn build(&self) -> Result<SteinerSystem> {
        match *self {
            DesignSpec::Matching { n } => complete_matching(n),
            DesignSpec::DoublingSts { m } => {
                if m < 2 {
                    return Err(Error::TooSmall(m));
                }
                Ok(doubling_sts(m))
            }
            DesignSpec::SteinerTriples { n } => steiner_s23(n),
        }
    }
}

/// Descriptor for every buildable family, used by the command line and the
/// predicted-count audit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstructionSpec {
    LabelledPartition { n: u32, k: usize },
    OrderedExtension { design: DesignSpec },
    FourUniformDoubling { m: u32 },
    EdgeMinimalGrid { m: u32, k: usize },
    EdgeMaximalMatching { n: u32 },
    SingleEdge { k: usize },
    Gluing { base: Box<ConstructionSpec>, steiner_n: u32 },
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Hypergraph> {
        match self {
            ConstructionSpec::LabelledPartition { n, k } => labelled_partition_hypertree(*n, *k),
            ConstructionSpec::OrderedExtension { design } => {
                let design = design.build()?;
                let order = canonical_extension_order(&design);
                ordered_extension(&design, &order)
            }
            ConstructionSpec::FourUniformDoubling { m } => {
                if *m < 3 {
                    return Err(Error::TooSmall(*m));
                }
                Ok(four_uniform_from_doubling(*m))
            }
            ConstructionSpec::EdgeMinimalGrid { m, k } => edge_minimal_grid(*m, *k),
            ConstructionSpec::EdgeMaximalMatching { n } => edge_maximal_matching_tree(*n),
            ConstructionSpec::SingleEdge { k } => {
                Hypergraph::new(*k, *k as u32, [(1..=*k as u32).collect::<Vec<_>>()])
            }
            ConstructionSpec::Gluing { base, steiner_n } => {
                let base_h = base.build()?;
                let steiner = steiner_s23(*steiner_n)?;
                glue(&base_h, &steiner)
            }
        }
    }

    /// Vertex count of the built hypergraph, from parameters alone.
    pub fn order(&self) -> Result<u32> {
        Ok(match self {
            ConstructionSpec::LabelledPartition { n, k } => {
                n + class_count(*n, *k - 1) as u32
            }
            ConstructionSpec::OrderedExtension { design } => design.build()?.n(),
            ConstructionSpec::FourUniformDoubling { m } => (1 << m) - 1,
            ConstructionSpec::EdgeMinimalGrid { m, k } => {
                let l = binomial(*m as u64 - 1, *k as u64 - 2) as u32;
                (l + 1) * m
            }
            ConstructionSpec::EdgeMaximalMatching { n } => *n,
            ConstructionSpec::SingleEdge { k } => *k as u32,
            ConstructionSpec::Gluing { steiner_n, .. } => *steiner_n,
        })
    }

    /// The family's exact closed-form edge count; builders must match it.
    pub fn predicted_edge_count(&self) -> Result<u64> {
        match self {
            ConstructionSpec::LabelledPartition { n, k } => {
                if !n.is_power_of_two() {
                    return Err(Error::NonPowerOfTwo(*n));
                }
                let l = class_count(*n, *k - 1) as usize;
                let base = if l == 1 {
                    0
                } else if l >= *k {
                    (l - *k + 1) as u64
                } else {
                    return Err(Error::UnsupportedLabelCount { l, k: *k });
                };
                Ok(binomial(*n as u64, *k as u64 - 1) + base)
            }
            ConstructionSpec::OrderedExtension { design } => {
                let design = design.build()?;
                let n = design.n() as u64;
                let order = canonical_extension_order(&design);
                let mut position = vec![0u64; n as usize + 1];
                for (rank, &v) in order.iter().enumerate() {
                    position[v as usize] = rank as u64 + 1;
                }
                // a block completes at its latest vertex and pairs with
                // every later one
                let mut total = 0u64;
                for block in design.hypergraph().edges() {
                    let latest = block
                        .vertices()
                        .iter()
                        .map(|v| position[v.get() as usize])
                        .max()
                        .expect("nonempty block");
                    total += n - latest;
                }
                Ok(total)
            }
            ConstructionSpec::FourUniformDoubling { m } => {
                if *m < 3 {
                    return Err(Error::TooSmall(*m));
                }
                let n = (1u64 << m) - 1;
                let mut total = 0u64;
                for j in 1..*m {
                    for i in (1u64 << j)..(1u64 << (j + 1)) {
                        total += (i - (1 << j)) * (n - i);
                    }
                }
                Ok(total)
            }
            ConstructionSpec::EdgeMinimalGrid { m, k } => {
                if *k < 3 {
                    return Err(Error::BadParameter(
                        "grid needs uniformity at least 3".into(),
                    ));
                }
                if !(*m as usize).is_multiple_of(*k - 1) {
                    return Err(Error::DivisibilityViolation { m: *m, k: *k });
                }
                let l = binomial(*m as u64 - 1, *k as u64 - 2);
                Ok(binomial(l + 1, 2) * (*m as u64) * (*m as u64) / (*k as u64 - 1))
            }
            ConstructionSpec::EdgeMaximalMatching { n } => {
                let n = *n as u64;
                Ok(n * (n - 2) / 4)
            }
            ConstructionSpec::SingleEdge { .. } => Ok(1),
            ConstructionSpec::Gluing { base, steiner_n } => {
                let base_edges = base.predicted_edge_count()?;
                let l = base.order()? as u64;
                let n = *steiner_n as u64;
                let scaled = base_edges * binomial(n, 2);
                debug_assert_eq!(scaled % binomial(l, 2), 0);
                Ok(scaled / binomial(l, 2))
            }
        }
    }
}
