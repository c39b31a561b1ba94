//! Chains, semicycles and hypertrees in k-uniform hypergraphs.
//!
//! A chain is a vertex sequence whose consecutive k-windows are pairwise
//! distinct edges and whose endpoints differ; a semicycle is the same with
//! identified endpoints. A hypergraph is a hypertree when every vertex pair
//! lies on a common chain and no semicycle exists. This crate provides:
//!
//! - the data model and `.khg` file format ([`hypergraph`]);
//! - decision procedures with replayable witnesses for chain connectivity,
//!   semicycle-freeness, longest chains, edge-minimality and
//!   edge-maximality, plus brute-force oracles ([`search`]);
//! - the recursive partition of (k-1)-subsets into few semicycle-free
//!   covering classes ([`partition`]);
//! - constructive designs: round-robin and flow-based 1-factorizations,
//!   Steiner triple systems ([`designs`]);
//! - the hypergraph families built from those ingredients, each with an
//!   exact predicted edge count ([`constructions`]);
//! - star decompositions of 2-hypertrees and the exact star-count identity
//!   ([`stars`]);
//! - exact rational evaluation of the edge-count bounds ([`bounds`]);
//! - a command line tying everything together ([`cli`], binary `khg`).
//!
//! The `examples/` directory contains one runnable walkthrough per
//! capability; `cargo run --example generate_and_verify` is a good start.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod hypergraph;
pub mod partition;
pub mod search;
pub mod stars;
pub mod util;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, VertexId, WalkSequence};
pub use search::{Verdict, Witness};
