//! Crate-wide error type.

use crate::hypergraph::VertexId;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge [{edge}] has {got} vertices, expected {expected}")]
    WrongCardinality {
        edge: String,
        expected: usize,
        got: usize,
    },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("uniformity {k} exceeds vertex count {n}")]
    UniformityExceedsOrder { k: usize, n: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("pair predicate requires two distinct vertices, got {0} twice")]
    DistinctPairRequired(VertexId),
    #[error("input is not a hypertree")]
    NotAHypertree,
    #[error("input is not a 2-hypertree")]
    Not2Hypertree,
    #[error("edge component is not a star: {0}")]
    DecompositionAnomaly(String),
    #[error("{0} is not a power of two")]
    NonPowerOfTwo(u32),
    #[error("ground set size {0} is odd")]
    OddGroundSet(u32),
    #[error("block size {r} does not divide ground set size {m}")]
    NonDivisible { m: u32, r: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("no Steiner triple system of order {0} exists (admissible orders are 1 or 3 mod 6)")]
    InadmissibleOrder(u32),
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("label count {l} is unsupported for uniformity {k}: no {k}-uniform hypertree exists on {l} vertices")]
    UnsupportedLabelCount { l: usize, k: usize },
    #[error("grid width {m} is not divisible by {k} - 1")]
    DivisibilityViolation { m: u32, k: usize },
    #[error("order {0} is odd")]
    OddOrder(u32),
    #[error("order {0} is too small")]
    TooSmall(u32),
    #[error("steiner block size {block} does not match base order {base}")]
    BlockSizeMismatch { base: u32, block: usize },
    #[error("gluing base is not an edge-minimal hypertree")]
    BaseNotEdgeMinimal,
    #[error("unknown bound name {0}")]
    UnknownBound(String),
    #[error("not a {t}-({n},{k},{lambda}) design")]
    NotADesign {
        t: usize,
        n: u32,
        k: usize,
        lambda: u64,
    },
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
