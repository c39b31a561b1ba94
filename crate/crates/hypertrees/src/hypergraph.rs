//! The k-uniform hypergraph data model, the sequence-based chain and
//! semicycle predicates, and the `.khg` text format.
//!
//! A sequence `v_1, ..., v_L` *witnesses* a chain (resp. semicycle) in a
//! hypergraph when every window of `k` consecutive vertices is an edge, all
//! `L - k + 1` windows are pairwise distinct as sets, and the endpoints
//! differ (resp. coincide). Every vertex of the witnessed subhypergraph
//! occurs in some window, so the "every vertex appears" clause of the
//! definitions is automatic when testing against a host hypergraph.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// 1-based vertex index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(u32);

impl VertexId {
    /// Panics if `index` is zero; vertex indices are 1-based.
    pub fn new(index: u32) -> VertexId {
        assert!(index >= 1, "vertex indices are 1-based");
        VertexId(index)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of vertices stored sorted ascending.
///
/// Uniformity is enforced by the owning hypergraph, not the edge itself, so
/// the same type serves k-edges, (k-1)-subsets, star kernels and design
/// blocks. Ordering is lexicographic on the sorted vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    /// Builds the edge as a set: duplicates collapse, order is canonical.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Edge {
        let set: BTreeSet<VertexId> = vertices.into_iter().collect();
        Edge(set.into_iter().collect())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Edge {
        Edge::new(indices.into_iter().map(VertexId::new))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Edge) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn intersection(&self, other: &Edge) -> Edge {
        Edge(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub fn intersection_size(&self, other: &Edge) -> usize {
        // sorted merge
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn union(&self, other: &Edge) -> Edge {
        Edge::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn with_vertex(&self, v: VertexId) -> Edge {
        Edge::new(self.0.iter().copied().chain(std::iter::once(v)))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// An ordered vertex sequence used to witness chains and semicycles.
///
/// Validity (every k-window a distinct edge, endpoint clauses) is judged by
/// [`Hypergraph::is_chain_sequence`] and [`Hypergraph::is_semicycle_sequence`];
/// the type itself is just the sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WalkSequence(Vec<VertexId>);

impl WalkSequence {
    pub fn new(vertices: Vec<VertexId>) -> WalkSequence {
        WalkSequence(vertices)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> WalkSequence {
        WalkSequence(indices.into_iter().map(VertexId::new).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of k-windows, i.e. the edge count of the witnessed structure.
    pub fn window_count(&self, k: usize) -> usize {
        (self.0.len() + 1).saturating_sub(k)
    }

    pub fn windows(&self, k: usize) -> impl Iterator<Item = &[VertexId]> {
        self.0.windows(k)
    }

    pub fn reversed(&self) -> WalkSequence {
        WalkSequence(self.0.iter().rev().copied().collect())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }
}

impl fmt::Display for WalkSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// A simple k-uniform hypergraph on vertex set `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    k: usize,
    n: u32,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    /// Validates and canonicalizes. Input edges are treated as sets, so
    /// permuted duplicates collapse to a single edge.
    pub fn new<I, E>(k: usize, n: u32, edges: I) -> Result<Hypergraph>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = u32>,
    {
        if k < 1 {
            return Err(Error::BadParameter("uniformity must be at least 1".into()));
        }
        if (n as usize) < k {
            return Err(Error::UniformityExceedsOrder { k, n });
        }
        let mut set = BTreeSet::new();
        for raw in edges {
            let raw: Vec<u32> = raw.into_iter().collect();
            for &v in &raw {
                if v < 1 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            let edge = Edge::from_indices(raw.iter().copied());
            if edge.len() != k {
                return Err(Error::WrongCardinality {
                    edge: edge.to_string(),
                    expected: k,
                    got: edge.len(),
                });
            }
            set.insert(edge);
        }
        Ok(Hypergraph { k, n, edges: set })
    }

    /// Internal constructor for callers that guarantee the invariants
    /// themselves. Unlike [`Hypergraph::new`] it tolerates `n < k` provided
    /// the edge set is empty (degenerate outputs of some constructions).
    pub(crate) fn from_edge_set(k: usize, n: u32, edges: BTreeSet<Edge>) -> Hypergraph {
        debug_assert!(edges.iter().all(|e| e.len() == k));
        debug_assert!((n as usize) >= k || edges.is_empty());
        Hypergraph { k, n, edges }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.n).map(VertexId::new)
    }

    pub fn edges_containing(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.contains(v))
    }

    pub fn without_edge(&self, e: &Edge) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Hypergraph {
            k: self.k,
            n: self.n,
            edges,
        }
    }

    pub fn with_edge(&self, e: Edge) -> Hypergraph {
        debug_assert_eq!(e.len(), self.k);
        let mut edges = self.edges.clone();
        edges.insert(e);
        Hypergraph {
            k: self.k,
            n: self.n,
            edges,
        }
    }

    /// Vertices that occur in at least one edge, ascending.
    pub fn support(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self
            .edges
            .iter()
            .flat_map(|e| e.vertices().iter().copied())
            .collect();
        set.into_iter().collect()
    }

    /// The subhypergraph on the support, relabelled with consecutive indices
    /// in ascending order. Returns the relabelled hypergraph and the support
    /// (new index `i+1` corresponds to `support[i]`).
    pub fn restricted_to_support(&self) -> (Hypergraph, Vec<VertexId>) {
        let support = self.support();
        let rank = |v: VertexId| {
            let pos = support.binary_search(&v).expect("support vertex");
            VertexId::new(pos as u32 + 1)
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.vertices().iter().map(|&v| rank(v))))
            .collect();
        (
            Hypergraph::from_edge_set(self.k, support.len() as u32, edges),
            support,
        )
    }

    fn window_as_edge(&self, window: &[VertexId]) -> Option<Edge> {
        let edge = Edge::new(window.iter().copied());
        if edge.len() != self.k {
            return None;
        }
        Some(edge)
    }

    /// True iff the sequence witnesses a chain of this hypergraph: length at
    /// least k, distinct endpoints, every k-window a distinct edge.
    pub fn is_chain_sequence(&self, s: &WalkSequence) -> bool {
        let verts = s.vertices();
        if verts.len() < self.k {
            return false;
        }
        if verts.first() == verts.last() {
            return false;
        }
        self.windows_are_distinct_edges(s)
    }

    /// True iff the sequence witnesses a semicycle: identified endpoints,
    /// every k-window a distinct edge, and at least 3 windows.
    pub fn is_semicycle_sequence(&self, s: &WalkSequence) -> bool {
        let verts = s.vertices();
        if verts.len() < self.k {
            return false;
        }
        if verts.first() != verts.last() {
            return false;
        }
        if s.window_count(self.k) < 3 {
            return false;
        }
        self.windows_are_distinct_edges(s)
    }

    fn windows_are_distinct_edges(&self, s: &WalkSequence) -> bool {
        let mut seen = BTreeSet::new();
        for window in s.windows(self.k) {
            let edge = match self.window_as_edge(window) {
                Some(e) => e,
                None => return false,
            };
            if !self.edges.contains(&edge) {
                return false;
            }
            if !seen.insert(edge) {
                return false;
            }
        }
        true
    }

    /// Serializes to the `.khg` format: header `khg <k> <n> <m>` followed by
    /// one line per edge in lexicographic order, trailing newline included.
    pub fn to_khg(&self) -> String {
        let mut out = format!("khg {} {} {}\n", self.k, self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_khg(text: &str) -> Result<Hypergraph> {
        let mut lines = khg_lines(text);
        let h = parse_khg_block(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "trailing content after edge list".into(),
            });
        }
        Ok(h)
    }
}

/// Numbered content lines of a `.khg`-family file: comments (`#`) and blank
/// lines are skipped.
pub(crate) fn khg_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses one `khg <k> <n> <m>` block from a line stream, consuming exactly
/// the header and `m` edge lines. Shared by the `.khg` and `khgpart` readers.
pub(crate) fn parse_khg_block<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Hypergraph> {
    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing khg header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "khg" {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("malformed header {header:?}, expected `khg <k> <n> <m>`"),
        });
    }
    let parse_num = |s: &str, what: &str| -> Result<u64> {
        s.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("invalid {what} {s:?}"),
        })
    };
    let k = parse_num(fields[1], "uniformity")? as usize;
    let n = parse_num(fields[2], "vertex count")? as u32;
    let m = parse_num(fields[3], "edge count")?;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "unexpected end of file in edge list".into(),
        })?;
        let mut edge = Vec::new();
        for field in line.split_whitespace() {
            let v: u32 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid vertex {field:?}"),
            })?;
            edge.push(v);
        }
        edges.push(edge);
    }
    Hypergraph::new(k, n, edges)
}
