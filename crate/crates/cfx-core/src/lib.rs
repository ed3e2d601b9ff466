//! Conflict-free chromatic index of trees.
//!
//! An edge coloring of a graph is *conflict-free* if every edge has a color
//! that appears exactly once among the closed neighborhood of that edge (the
//! edge itself plus all edges sharing an endpoint with it). The smallest
//! number of colors admitting such a coloring is the conflict-free chromatic
//! index. For trees it is always at most 3, and at least 2 once there are two
//! edges, so the interesting question is deciding between 2 and 3.
//!
//! This crate decides that question for trees without degree-2 vertices in
//! time linear in the number of vertices, and cross-validates everything
//! against a brute-force oracle at small scale:
//!
//! - [`tree`]: tree and rooted-tree representations, levels, fullness
//!   predicates, the `⊕` composition, and the degree-based decomposition.
//! - [`coloring`]: edge colorings, the conflict-free verifier, and the
//!   red-matching bridge between colorings and matchings.
//! - [`matching`]: dominating induced matchings by tree DP, giving an
//!   independent decision procedure.
//! - [`patterns`]: coloring patterns of full subtrees, surficial vertices,
//!   the four subtree families and their canonical starred colorings.
//! - [`solver`]: the linear-time decision procedure built on [`patterns`].
//! - [`deg2`]: a constructive 2-coloring for trees whose degree-2 paths are
//!   long enough.
//! - [`oracle`]: exhaustive search used as ground truth in tests.
//! - [`generate`]: instance generators (full trees, family members, random
//!   trees without degree-2 vertices, counterexample search).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `cfx` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coloring;
pub mod deg2;
pub mod generate;
pub mod matching;
pub mod oracle;
pub mod patterns;
pub mod solver;
pub mod tree;

pub use coloring::{Color, EdgeColoring, VertexType, BLUE, RED};
pub use matching::Matching;
pub use solver::{DecisionResult, ThreeEvidence};
pub use tree::{RootedTree, Tree, VertexId};
