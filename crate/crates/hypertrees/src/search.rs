//! Decision procedures for the hypertree predicates: chain connectivity,
//! semicycle detection, longest chains, edge-minimality and edge-maximality,
//! plus brute-force oracles used to cross-check the optimized searches.
//!
//! All searches explore tight walks: vertex sequences in which every window
//! of k consecutive vertices is an edge and all windows are pairwise
//! distinct as sets. Starts iterate edges in lexicographic order and the
//! orderings of each start edge lexicographically; extensions iterate
//! vertices ascending. Witnesses are therefore deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexId, WalkSequence};

/// Certificate attached to a verdict. Chain and semicycle witnesses replay
/// to `true` under the corresponding sequence predicates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Chain(WalkSequence),
    Semicycle(WalkSequence),
    DisconnectedPair(VertexId, VertexId),
    RemovableEdge(Edge),
    AddableEdge(Edge),
}

impl Witness {
    /// Re-checks the certificate against a hypergraph. A witness is valid
    /// when the fact it asserts still holds:
    /// a chain/semicycle witness must satisfy the sequence predicate, a
    /// disconnected pair must still lack a connecting chain, a removable
    /// edge must leave the remainder chain-connected, and an addable edge
    /// must keep the extension semicycle-free.
    pub fn replay(&self, h: &Hypergraph) -> bool {
        match self {
            Witness::Chain(s) => h.is_chain_sequence(s),
            Witness::Semicycle(s) => h.is_semicycle_sequence(s),
            Witness::DisconnectedPair(u, v) => {
                *u != *v && find_connecting_chain(h, *u, *v, None).is_ok_and(|c| c.is_none())
            }
            Witness::RemovableEdge(e) => {
                h.contains_edge(e) && is_chain_connected(&h.without_edge(e)).holds
            }
            Witness::AddableEdge(e) => {
                e.len() == h.k()
                    && !h.contains_edge(e)
                    && find_semicycle(&h.with_edge(e.clone()), None).is_none()
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Chain(s) => write!(f, "witness chain {s}"),
            Witness::Semicycle(s) => write!(f, "witness semicycle {s}"),
            Witness::DisconnectedPair(u, v) => write!(f, "witness disconnected-pair {u} {v}"),
            Witness::RemovableEdge(e) => write!(f, "witness removable-edge {e}"),
            Witness::AddableEdge(e) => write!(f, "witness addable-edge {e}"),
        }
    }
}

impl FromStr for Witness {
    type Err = Error;

    fn from_str(line: &str) -> Result<Witness> {
        let mut fields = line.split_whitespace();
        if fields.next() != Some("witness") {
            return Err(Error::BadParameter(format!(
                "witness line must start with `witness`: {line:?}"
            )));
        }
        let kind = fields
            .next()
            .ok_or_else(|| Error::BadParameter("missing witness kind".into()))?;
        let indices: Vec<u32> = fields
            .map(|f| {
                f.parse::<u32>().map_err(|_| {
                    Error::BadParameter(format!("invalid vertex {f:?} in witness line"))
                })
            })
            .collect::<Result<_>>()?;
        if indices.contains(&0) {
            return Err(Error::BadParameter("vertex indices are 1-based".into()));
        }
        match kind {
            "chain" => Ok(Witness::Chain(WalkSequence::from_indices(indices))),
            "semicycle" => Ok(Witness::Semicycle(WalkSequence::from_indices(indices))),
            "disconnected-pair" => {
                if indices.len() != 2 {
                    return Err(Error::BadParameter(
                        "disconnected-pair witness needs exactly two vertices".into(),
                    ));
                }
                Ok(Witness::DisconnectedPair(
                    VertexId::new(indices[0]),
                    VertexId::new(indices[1]),
                ))
            }
            "removable-edge" => Ok(Witness::RemovableEdge(Edge::from_indices(indices))),
            "addable-edge" => Ok(Witness::AddableEdge(Edge::from_indices(indices))),
            other => Err(Error::BadParameter(format!("unknown witness kind {other:?}"))),
        }
    }
}

/// Outcome of a checkable predicate, with a witness on failure.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Verdict {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Tight-walk state: the sequence so far plus its window set.
struct Walk {
    seq: Vec<VertexId>,
    windows: Vec<Edge>,
    window_set: BTreeSet<Edge>,
}

impl Walk {
    fn start(order: Vec<VertexId>, first: Edge) -> Walk {
        let mut window_set = BTreeSet::new();
        window_set.insert(first.clone());
        Walk {
            seq: order,
            windows: vec![first],
            window_set,
        }
    }

    fn window_count(&self) -> usize {
        self.windows.len()
    }

    fn last(&self) -> VertexId {
        *self.seq.last().expect("walk is nonempty")
    }

    /// Window obtained by appending `w`, if it is a fresh edge of `h`.
    fn extension_window(&self, h: &Hypergraph, w: VertexId) -> Option<Edge> {
        let k = h.k();
        let suffix = &self.seq[self.seq.len() + 1 - k..];
        if suffix.contains(&w) {
            return None; // window would repeat a vertex
        }
        let edge = Edge::new(suffix.iter().copied().chain(std::iter::once(w)));
        if !h.contains_edge(&edge) || self.window_set.contains(&edge) {
            return None;
        }
        Some(edge)
    }

    fn push(&mut self, w: VertexId, window: Edge) {
        self.seq.push(w);
        self.window_set.insert(window.clone());
        self.windows.push(window);
    }

    fn pop(&mut self) {
        self.seq.pop();
        let window = self.windows.pop().expect("pop matches push");
        self.window_set.remove(&window);
    }
}

/// Orderings of an edge's vertices, lexicographically.
fn start_orders(edge: &Edge) -> impl Iterator<Item = Vec<VertexId>> + '_ {
    let k = edge.len();
    edge.vertices().iter().copied().permutations(k)
}

/// Finds a non-self-intersecting semicycle with at most `max_edges` edges
/// (any length if unset), or reports there is none.
///
/// Restricting the search to non-self-intersecting candidates is complete:
/// a hypergraph containing any semicycle contains a non-self-intersecting
/// one, and the reduction shortens the semicycle, so a cap of `max_edges`
/// is preserved. Absence with no cap therefore certifies semicycle-freeness.
pub fn find_semicycle(h: &Hypergraph, max_edges: Option<usize>) -> Option<WalkSequence> {
    if h.edge_count() < 3 || max_edges.is_some_and(|m| m < 3) {
        return None; // every semicycle has at least 3 edges
    }
    for edge in h.edges() {
        for order in start_orders(edge) {
            let mut in_seq: BTreeSet<VertexId> = order.iter().copied().collect();
            let mut walk = Walk::start(order, edge.clone());
            if let Some(found) = semicycle_dfs(h, &mut walk, &mut in_seq, max_edges) {
                return Some(found);
            }
        }
    }
    None
}

fn semicycle_dfs(
    h: &Hypergraph,
    walk: &mut Walk,
    in_seq: &mut BTreeSet<VertexId>,
    max_edges: Option<usize>,
) -> Option<WalkSequence> {
    let closed_length = walk.window_count() + 1;
    // close the sequence back to its first vertex
    if closed_length >= 3 && max_edges.is_none_or(|m| closed_length <= m) {
        let first = walk.seq[0];
        if walk.extension_window(h, first).is_some() {
            let mut seq = walk.seq.clone();
            seq.push(first);
            return Some(WalkSequence::new(seq));
        }
    }
    // extend with a fresh vertex, leaving room for the closing edge
    if max_edges.is_none_or(|m| closed_length < m) {
        for w in h.vertices() {
            if in_seq.contains(&w) {
                continue;
            }
            if let Some(window) = walk.extension_window(h, w) {
                walk.push(w, window);
                in_seq.insert(w);
                let found = semicycle_dfs(h, walk, in_seq, max_edges);
                in_seq.remove(&w);
                walk.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

/// Finds a chain whose subhypergraph contains both `u` and `v`, or reports
/// there is none. `max_len` caps the number of chain edges.
///
/// Two searches run in sequence. The anchored search starts from edges
/// containing `u` and accepts when the last window contains `v`; by
/// truncation and reversal it finds every chain that has the two vertices
/// in its end edges. Truncating a self-intersecting chain can close the
/// run into a semicycle, so anchored completeness is only guaranteed on
/// semicycle-free hosts; the general walk search that follows accepts the
/// pair anywhere in the sequence and is the authority.
pub fn find_connecting_chain(
    h: &Hypergraph,
    u: VertexId,
    v: VertexId,
    max_len: Option<usize>,
) -> Result<Option<WalkSequence>> {
    if u == v {
        return Err(Error::DistinctPairRequired(u));
    }
    if max_len == Some(0) {
        return Ok(None);
    }
    if let Some(found) = anchored_chain_search(h, u, v, max_len) {
        return Ok(Some(found));
    }
    Ok(general_chain_search(h, u, v, max_len))
}

fn anchored_chain_search(
    h: &Hypergraph,
    u: VertexId,
    v: VertexId,
    max_len: Option<usize>,
) -> Option<WalkSequence> {
    for edge in h.edges() {
        if !edge.contains(u) {
            continue;
        }
        if edge.contains(v) {
            // co-edge: a chain of length 1 in canonical order
            return Some(WalkSequence::new(edge.vertices().to_vec()));
        }
        for order in start_orders(edge) {
            let mut walk = Walk::start(order, edge.clone());
            if let Some(found) = anchored_dfs(h, &mut walk, v, max_len) {
                return Some(found);
            }
        }
    }
    None
}

fn anchored_dfs(
    h: &Hypergraph,
    walk: &mut Walk,
    target: VertexId,
    max_len: Option<usize>,
) -> Option<WalkSequence> {
    if max_len.is_some_and(|m| walk.window_count() + 1 > m) {
        return None;
    }
    for w in h.vertices() {
        if let Some(window) = walk.extension_window(h, w) {
            if window.contains(target) && walk.seq[0] != w {
                let mut seq = walk.seq.clone();
                seq.push(w);
                return Some(WalkSequence::new(seq));
            }
            walk.push(w, window);
            let found = anchored_dfs(h, walk, target, max_len);
            walk.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn general_chain_search(
    h: &Hypergraph,
    u: VertexId,
    v: VertexId,
    max_len: Option<usize>,
) -> Option<WalkSequence> {
    for edge in h.edges() {
        for order in start_orders(edge) {
            let mut walk = Walk::start(order, edge.clone());
            if let Some(found) = general_pair_dfs(h, &mut walk, u, v, max_len) {
                return Some(found);
            }
        }
    }
    None
}

fn general_pair_dfs(
    h: &Hypergraph,
    walk: &mut Walk,
    u: VertexId,
    v: VertexId,
    max_len: Option<usize>,
) -> Option<WalkSequence> {
    if walk.seq.contains(&u) && walk.seq.contains(&v) && walk.seq[0] != walk.last() {
        return Some(WalkSequence::new(walk.seq.clone()));
    }
    if max_len.is_some_and(|m| walk.window_count() + 1 > m) {
        return None;
    }
    for w in h.vertices() {
        if let Some(window) = walk.extension_window(h, w) {
            walk.push(w, window);
            let found = general_pair_dfs(h, walk, u, v, max_len);
            walk.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Length (edge count) of a longest chain. With `cap` set the search stops
/// at `cap + 1`, which is enough to decide whether the hypergraph is an
/// l-hypertree for any `l <= cap`. Returns 0 when there are no edges.
pub fn max_chain_length(h: &Hypergraph, cap: Option<usize>) -> usize {
    longest_chain(h, cap, false)
}

/// As [`max_chain_length`], restricted to sequences without repeated
/// vertices. On semicycle-free hosts every chain is non-self-intersecting,
/// so the restriction is a sound and complete pruning there.
pub fn max_chain_length_semicycle_free(h: &Hypergraph, cap: Option<usize>) -> usize {
    longest_chain(h, cap, true)
}

fn longest_chain(h: &Hypergraph, cap: Option<usize>, distinct_vertices: bool) -> usize {
    let mut best = 0usize;
    let stop_at = cap.map(|c| c + 1);
    for edge in h.edges() {
        for order in start_orders(edge) {
            let mut walk = Walk::start(order, edge.clone());
            longest_chain_dfs(h, &mut walk, stop_at, distinct_vertices, &mut best);
            if stop_at.is_some_and(|s| best >= s) {
                return best;
            }
        }
    }
    best
}

fn longest_chain_dfs(
    h: &Hypergraph,
    walk: &mut Walk,
    stop_at: Option<usize>,
    distinct_vertices: bool,
    best: &mut usize,
) {
    if walk.seq[0] != walk.last() {
        *best = (*best).max(walk.window_count());
    }
    if stop_at.is_some_and(|s| *best >= s || walk.window_count() + 1 > s) {
        return;
    }
    for w in h.vertices() {
        if distinct_vertices && walk.seq.contains(&w) {
            continue;
        }
        if let Some(window) = walk.extension_window(h, w) {
            walk.push(w, window);
            longest_chain_dfs(h, walk, stop_at, distinct_vertices, best);
            walk.pop();
            if stop_at.is_some_and(|s| *best >= s) {
                return;
            }
        }
    }
}

/// Builds a chain witness from one or two edges. For a single edge the
/// canonical order serves; for two edges sharing k-1 vertices the sequence
/// runs private vertex, shared vertices, private vertex.
fn short_chain_witness(e: &Edge, f: Option<&Edge>) -> WalkSequence {
    match f {
        None => WalkSequence::new(e.vertices().to_vec()),
        Some(f) => {
            let shared = e.intersection(f);
            let a = e.vertices().iter().copied().find(|&x| !shared.contains(x));
            let b = f.vertices().iter().copied().find(|&x| !shared.contains(x));
            let (a, b) = (a.expect("e differs from f"), b.expect("f differs from e"));
            let mut seq = vec![a];
            seq.extend(shared.vertices().iter().copied());
            seq.push(b);
            WalkSequence::new(seq)
        }
    }
}

/// True iff every pair of distinct vertices lies on a common chain. On
/// failure the verdict carries the first disconnected pair in ascending
/// order.
///
/// When a longest-chain probe certifies that no chain has more than two
/// edges, pair connectivity reduces to: some edge contains both vertices,
/// or edges e and f with |e ∩ f| = k-1 contain one each. The general
/// per-pair search is used otherwise.
pub fn is_chain_connected(h: &Hypergraph) -> Verdict {
    let n = h.n();
    if n < 2 {
        return Verdict::pass();
    }
    let two_bounded = max_chain_length(h, Some(2)) <= 2;
    let pairs: Vec<(VertexId, VertexId)> = (1..=n)
        .flat_map(|a| ((a + 1)..=n).map(move |b| (VertexId::new(a), VertexId::new(b))))
        .collect();
    let disconnected = pairs
        .par_iter()
        .find_first(|(u, v)| pair_chain(h, *u, *v, two_bounded).is_none());
    match disconnected {
        Some(&(u, v)) => Verdict::fail(Witness::DisconnectedPair(u, v)),
        None => Verdict::pass(),
    }
}

fn pair_chain(h: &Hypergraph, u: VertexId, v: VertexId, two_bounded: bool) -> Option<WalkSequence> {
    if !two_bounded {
        return find_connecting_chain(h, u, v, None).expect("u != v");
    }
    for e in h.edges() {
        if e.contains(u) && e.contains(v) {
            return Some(short_chain_witness(e, None));
        }
    }
    let k = h.k();
    for e in h.edges_containing(u) {
        for f in h.edges_containing(v) {
            if e != f && e.intersection_size(f) == k - 1 {
                return Some(short_chain_witness(e, Some(f)));
            }
        }
    }
    None
}

/// Chain-connected and semicycle-free. The failure witness is the first
/// disconnected pair, or a semicycle if connectivity holds.
pub fn is_hypertree(h: &Hypergraph) -> Verdict {
    let connected = is_chain_connected(h);
    if !connected.holds {
        return connected;
    }
    match find_semicycle(h, None) {
        Some(c) => Verdict::fail(Witness::Semicycle(c)),
        None => Verdict::pass(),
    }
}

/// Deleting any edge must break chain-connectedness (deletion can never
/// introduce a semicycle). Errors unless the input is a hypertree.
pub fn is_edge_minimal(h: &Hypergraph) -> Result<Verdict> {
    if !is_hypertree(h).holds {
        return Err(Error::NotAHypertree);
    }
    let edges: Vec<&Edge> = h.edges().collect();
    let removable = edges
        .par_iter()
        .find_first(|e| is_chain_connected(&h.without_edge(e)).holds);
    Ok(match removable {
        Some(e) => Verdict::fail(Witness::RemovableEdge((*e).clone())),
        None => Verdict::pass(),
    })
}

/// Adding any missing k-set must create a semicycle. Since the input is
/// semicycle-free, any semicycle of the extension passes through the added
/// edge, so a plain semicycle search on the extension decides each
/// candidate. Errors unless the input is a hypertree.
pub fn is_edge_maximal(h: &Hypergraph) -> Result<Verdict> {
    if !is_hypertree(h).holds {
        return Err(Error::NotAHypertree);
    }
    let candidates: Vec<Edge> = (1..=h.n())
        .combinations(h.k())
        .map(Edge::from_indices)
        .filter(|e| !h.contains_edge(e))
        .collect();
    let addable = candidates
        .par_iter()
        .find_first(|s| find_semicycle(&h.with_edge((*s).clone()), None).is_none());
    Ok(match addable {
        Some(s) => Verdict::fail(Witness::AddableEdge(s.clone())),
        None => Verdict::pass(),
    })
}

/// Both edge-minimal and edge-maximal.
pub fn is_isolated(h: &Hypergraph) -> Result<bool> {
    Ok(is_edge_minimal(h)?.holds && is_edge_maximal(h)?.holds)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleKind {
    Chains,
    Semicycles,
}

pub const DEFAULT_ORACLE_NODE_CAP: u64 = 50_000_000;

/// Brute-force ground truth: enumerates every vertex sequence of length up
/// to `max_len + k - 1` whose windows are distinct edges, and returns those
/// satisfying the chain (resp. semicycle) predicate. Unlike the optimized
/// searches it keeps self-intersecting candidates.
///
/// A sequence prefix that already violates the window conditions cannot be
/// completed, so pruning on them enumerates exactly the same set as
/// filtering all n^L sequences. Intended for small instances; exceeding
/// `node_cap` visited prefixes aborts with `ResourceCap`.
pub fn oracle_enumerate(
    h: &Hypergraph,
    kind: OracleKind,
    max_len: usize,
    node_cap: Option<u64>,
) -> Result<Vec<WalkSequence>> {
    let cap = node_cap.unwrap_or(DEFAULT_ORACLE_NODE_CAP);
    let mut found = Vec::new();
    if max_len == 0 || h.edge_count() == 0 {
        return Ok(found);
    }
    let k = h.k();
    let mut nodes: u64 = 0;
    // all prefixes of length k-1, then window-checked growth
    let mut prefix: Vec<VertexId> = Vec::new();
    oracle_prefix_dfs(h, &mut prefix, k, kind, max_len, &mut nodes, cap, &mut found)?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn oracle_prefix_dfs(
    h: &Hypergraph,
    prefix: &mut Vec<VertexId>,
    k: usize,
    kind: OracleKind,
    max_len: usize,
    nodes: &mut u64,
    cap: u64,
    found: &mut Vec<WalkSequence>,
) -> Result<()> {
    if prefix.len() + 1 == k {
        for w in h.vertices() {
            prefix.push(w);
            let suffix_edge = Edge::new(prefix.iter().copied());
            if suffix_edge.len() == k && h.contains_edge(&suffix_edge) {
                let mut walk = Walk::start(prefix.clone(), suffix_edge);
                oracle_walk_dfs(h, &mut walk, kind, max_len, nodes, cap, found)?;
            }
            prefix.pop();
        }
        return Ok(());
    }
    for w in h.vertices() {
        prefix.push(w);
        oracle_prefix_dfs(h, prefix, k, kind, max_len, nodes, cap, found)?;
        prefix.pop();
    }
    Ok(())
}

fn oracle_walk_dfs(
    h: &Hypergraph,
    walk: &mut Walk,
    kind: OracleKind,
    max_len: usize,
    nodes: &mut u64,
    cap: u64,
    found: &mut Vec<WalkSequence>,
) -> Result<()> {
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::ResourceCap(format!(
            "oracle enumeration exceeded {cap} nodes"
        )));
    }
    let first = walk.seq[0];
    let last = walk.last();
    match kind {
        OracleKind::Chains if first != last => {
            found.push(WalkSequence::new(walk.seq.clone()));
        }
        OracleKind::Semicycles if first == last && walk.window_count() >= 3 => {
            found.push(WalkSequence::new(walk.seq.clone()));
        }
        _ => {}
    }
    if walk.window_count() >= max_len {
        return Ok(());
    }
    for w in h.vertices() {
        if let Some(window) = walk.extension_window(h, w) {
            walk.push(w, window);
            let r = oracle_walk_dfs(h, walk, kind, max_len, nodes, cap, found);
            walk.pop();
            r?;
        }
    }
    Ok(())
}

/// Seeded random k-uniform hypergraph for oracle-comparison corpora:
/// uniform vertex count in `n_min..=n_max`, then 1 to `max_edges` distinct
/// edges sampled uniformly.
pub fn random_hypergraph<R: Rng>(
    rng: &mut R,
    k: usize,
    n_min: u32,
    n_max: u32,
    max_edges: usize,
) -> Hypergraph {
    assert!(n_min >= k as u32 && n_min <= n_max);
    let n = rng.random_range(n_min..=n_max);
    let all: Vec<Edge> = (1..=n).combinations(k).map(Edge::from_indices).collect();
    let m = rng.random_range(1..=max_edges.min(all.len()));
    let picked = rand::seq::index::sample(rng, all.len(), m);
    let edges: BTreeSet<Edge> = picked.iter().map(|i| all[i].clone()).collect();
    Hypergraph::from_edge_set(k, n, edges)
}
