//! Dominating induced matchings by tree dynamic programming.
//!
//! A tree without degree-2 vertices (on at least 3 vertices) is
//! conflict-free 2-edge-colorable exactly when it has a maximal matching `M`
//! with `T[V(M)] = M`: every edge outside `M` touches `V(M)` in exactly one
//! endpoint. Finding such a matching is a routine rooted DP, which makes
//! this module an independent decision procedure to cross-check the
//! pattern-based solver.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::matching_to_coloring;
use crate::solver::DecisionResult;
use crate::tree::{RootedTree, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingError {
    UnknownEdge(VertexId, VertexId),
    PreconditionViolated(&'static str),
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingError::UnknownEdge(u, v) => write!(f, "unknown edge {u} {v}"),
            MatchingError::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

/// A set of pairwise vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(VertexId, VertexId)>,
}

impl Matching {
    /// Normalizes edges to `(min, max)` pairs in sorted order. Disjointness
    /// is the caller's obligation and is what [`is_dominating_induced`]
    /// checks.
    pub fn new(edges: Vec<(VertexId, VertexId)>) -> Matching {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }
}

/// Checks the three conditions: `m` is a matching, the subgraph induced on
/// `V(m)` has edge set exactly `m`, and `m` is maximal (no edge of the tree
/// is disjoint from `V(m)`).
pub fn is_dominating_induced(t: &Tree, m: &Matching) -> Result<bool, MatchingError> {
    let mut in_set = vec![false; t.vertex_count()];
    for &(u, v) in m.edges() {
        let ui = match t.edge_index(u, v) {
            Some(_) => t.index(u).unwrap(),
            None => return Err(MatchingError::UnknownEdge(u, v)),
        };
        let vi = t.index(v).unwrap();
        if in_set[ui as usize] || in_set[vi as usize] {
            return Ok(false); // two matching edges share a vertex
        }
        in_set[ui as usize] = true;
        in_set[vi as usize] = true;
    }
    for &(a, b) in t.edge_list_ix() {
        let covered = in_set[a as usize] as u8 + in_set[b as usize] as u8;
        let in_m = m.contains(t.id_of(a), t.id_of(b));
        if in_m {
            continue;
        }
        match covered {
            0 => return Ok(false), // m is not maximal
            2 => return Ok(false), // edge induced on V(m) but outside m
            _ => {}
        }
    }
    Ok(true)
}

/// Per-vertex DP states, seen from the parent edge.
#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    /// In V(M), matched to one of its children.
    MatchedBelow,
    /// In V(M), to be matched to the parent.
    MatchedUp,
    /// Outside V(M); every incident edge then needs its other endpoint in
    /// V(M), so the parent must be matched (elsewhere).
    Outside,
}

const STATES: [State; 3] = [State::MatchedBelow, State::MatchedUp, State::Outside];

fn state_index(s: State) -> usize {
    match s {
        State::MatchedBelow => 0,
        State::MatchedUp => 1,
        State::Outside => 2,
    }
}

/// Finds a dominating induced matching if one exists, in time linear in the
/// number of vertices.
pub fn find_dim(t: &Tree) -> Option<Matching> {
    if t.vertex_count() < 2 {
        return None;
    }
    let root_id = t.vertices().next().unwrap();
    let rt = RootedTree::with_root(t.clone(), root_id).expect("vertex exists");
    let n = t.vertex_count();

    // feasible[v][s]; for MatchedBelow also remember which child took the
    // matching edge so a witness can be rebuilt.
    let mut feasible = vec![[false; 3]; n];
    let mut match_child: Vec<u32> = vec![u32::MAX; n];

    for &v in rt.bfs_ix().iter().rev() {
        let children = &rt.children_ix()[v as usize];
        if children.is_empty() {
            feasible[v as usize][state_index(State::MatchedUp)] = true;
            feasible[v as usize][state_index(State::Outside)] = true;
            continue;
        }
        // MatchedUp: v is in V(M) with its matching edge above, so no child
        // may be in V(M): all children Outside.
        feasible[v as usize][state_index(State::MatchedUp)] = children
            .iter()
            .all(|&c| feasible[c as usize][state_index(State::Outside)]);
        // Outside: every child edge needs the child in V(M), matched below.
        feasible[v as usize][state_index(State::Outside)] = children
            .iter()
            .all(|&c| feasible[c as usize][state_index(State::MatchedBelow)]);
        // MatchedBelow: one child matched up to v, the rest outside.
        let all_outside_or_below: bool = children
            .iter()
            .all(|&c| feasible[c as usize][state_index(State::Outside)]);
        if all_outside_or_below {
            // swapping any single Outside-feasible child for MatchedUp
            for &c in children {
                if feasible[c as usize][state_index(State::MatchedUp)] {
                    feasible[v as usize][state_index(State::MatchedBelow)] = true;
                    match_child[v as usize] = c;
                    break;
                }
            }
        } else {
            // exactly the children that cannot be Outside must be absorbed;
            // only possible if a single child is MatchedUp-feasible and all
            // others are Outside-feasible.
            let mut blockers = children
                .iter()
                .filter(|&&c| !feasible[c as usize][state_index(State::Outside)]);
            let first = blockers.next().copied();
            let second = blockers.next();
            if let (Some(c), None) = (first, second) {
                if feasible[c as usize][state_index(State::MatchedUp)] {
                    feasible[v as usize][state_index(State::MatchedBelow)] = true;
                    match_child[v as usize] = c;
                }
            }
        }
    }

    let root = rt.root_ix();
    let root_state = if feasible[root as usize][state_index(State::MatchedBelow)] {
        Some(State::MatchedBelow)
    } else if feasible[root as usize][state_index(State::Outside)] {
        Some(State::Outside)
    } else {
        None
    }?;

    // Rebuild a witness top-down.
    let mut edges = Vec::new();
    let mut stack: Vec<(u32, State)> = vec![(root, root_state)];
    while let Some((v, s)) = stack.pop() {
        let children = &rt.children_ix()[v as usize];
        match s {
            State::MatchedBelow => {
                let mc = match_child[v as usize];
                debug_assert_ne!(mc, u32::MAX);
                edges.push((t.id_of(v), t.id_of(mc)));
                for &c in children {
                    if c == mc {
                        stack.push((c, State::MatchedUp));
                    } else {
                        stack.push((c, State::Outside));
                    }
                }
            }
            State::MatchedUp => {
                for &c in children {
                    stack.push((c, State::Outside));
                }
            }
            State::Outside => {
                for &c in children {
                    stack.push((c, State::MatchedBelow));
                }
            }
        }
    }
    Some(Matching::new(edges))
}

/// Decides the conflict-free index of a tree without degree-2 vertices via
/// the matching characterization, returning a witness coloring for index 2.
pub fn decide_via_matching(t: &Tree) -> Result<DecisionResult, MatchingError> {
    if t.vertex_count() < 3 {
        return Err(MatchingError::PreconditionViolated("tree has fewer than 3 vertices"));
    }
    if t.has_degree_two_vertex() {
        return Err(MatchingError::PreconditionViolated("tree has a degree-2 vertex"));
    }
    match find_dim(t) {
        Some(m) => {
            let c = matching_to_coloring(t, &m).expect("matching edges exist");
            Ok(DecisionResult::Two(c))
        }
        None => Ok(DecisionResult::Three(crate::solver::ThreeEvidence::NoDominatingInducedMatching)),
    }
}
