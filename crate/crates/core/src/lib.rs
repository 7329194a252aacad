//! Edge decompositions of cubic graphs into claws (K1,3), triangles (K3) and
//! paths (P4).
//!
//! The crate provides:
//!
//! - a canonical [`Graph`] type with the structural queries and surgery the
//!   algorithms need ([`graph`]);
//! - general-graph maximum matching and 2-factor extraction ([`matching`]);
//! - the decomposition vocabulary and a verifier for claimed certificates
//!   ([`decomp`]);
//! - polynomial deciders for every tractable family ([`poly`]);
//! - a complete backtracking solver for the NP-complete families and for
//!   cross-checking everything else ([`exact`]);
//! - the SAT reduction pipeline: gadget builders, brute-force oracles and
//!   witness lifting ([`reduce`]);
//! - exhaustive small-order cubic graph enumeration for test corpora
//!   ([`enumerate`]).

pub mod decomp;
pub mod enumerate;
pub mod exact;
pub mod graph;
pub mod matching;
pub mod poly;
pub mod reduce;
mod twosat;

pub use decomp::{
    classify_part, verify, verify_marked, verify_with, AllowedSet, DecompStats, Decomposition,
    MarkedInstance, ModelError, Part, Shape, VerifyReport, Violation,
};
pub use exact::{enumerate_covers, solve, EnumerateOutcome, SolveOutcome, SolverConfig};
pub use graph::{DegreeProfile, Edge, Graph, GraphError, NamedGraph};
pub use matching::{maximum_matching, perfect_matching, two_factor_cycles, CycleCover, Matching};
