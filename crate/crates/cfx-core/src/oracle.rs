//! Brute-force ground truth.
//!
//! The oracle exists to be obviously correct, not fast: exact conflict-free
//! chromatic index by pruned backtracking, exhaustive enumeration of all
//! conflict-free 2-colorings, and enumeration of free trees up to
//! isomorphism. Everything else in the crate is cross-validated against it
//! at small scale.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{Color, EdgeColoring};
use crate::tree::{RootedTree, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The instance exceeds the configured search limits.
    TooLarge { edges: usize, limit: usize },
    /// No valid coloring with at most `max_k` colors. Unreachable for trees
    /// with `max_k >= 3`.
    NoColoringWithin(u8),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { edges, limit } => {
                write!(f, "instance has {edges} edges, oracle limit is {limit}")
            }
            OracleError::NoColoringWithin(k) => write!(f, "no conflict-free coloring with {k} colors"),
        }
    }
}

/// Size guards for the exhaustive searches.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Edge limit when searching with two colors.
    pub max_edges_k2: usize,
    /// Edge limit when three colors may be tried.
    pub max_edges_k3: usize,
    /// Vertex limit for tree enumeration.
    pub max_enum_vertices: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges_k2: 24,
            max_edges_k3: 20,
            max_enum_vertices: 16,
        }
    }
}

/// Search state shared by the index search and the coloring enumeration:
/// edges are processed in BFS order from the canonical root, and a partial
/// assignment is pruned as soon as some edge with a fully assigned closed
/// neighborhood has no conflict-free color.
struct Search {
    /// For each edge position, its closed neighborhood as positions.
    nb: Vec<Vec<u32>>,
    /// Edges whose neighborhood completes when position `i` is assigned.
    check_at: Vec<Vec<u32>>,
    m: usize,
}

impl Search {
    fn new(t: &Tree) -> Search {
        let m = t.edge_count();
        // BFS edge order from the canonical root: each non-root vertex in
        // BFS order contributes its parent edge.
        let root = if t.vertex_count() >= 2 {
            t.leaves().next().unwrap()
        } else {
            t.vertices().next().unwrap()
        };
        let rt = RootedTree::with_root(t.clone(), root).unwrap();
        let mut order: Vec<usize> = Vec::with_capacity(m); // position -> edge index
        let mut pos_of: Vec<u32> = vec![0; m];
        for v in rt.bfs_order().skip(1) {
            let p = rt.parent_of(v).unwrap();
            let e = t.edge_index(p, v).unwrap();
            pos_of[e] = order.len() as u32;
            order.push(e);
        }

        let mut nb: Vec<Vec<u32>> = vec![Vec::new(); m];
        for (pos, &e) in order.iter().enumerate() {
            let (u, v) = t.edge_at(e);
            let mut positions = Vec::with_capacity(t.degree(u) + t.degree(v) - 1);
            for w in t.neighbors(u) {
                positions.push(pos_of[t.edge_index(u, w).unwrap()]);
            }
            for w in t.neighbors(v) {
                let f = pos_of[t.edge_index(v, w).unwrap()];
                if f != pos as u32 {
                    positions.push(f);
                }
            }
            positions.sort_unstable();
            positions.dedup();
            nb[pos] = positions;
        }
        let mut check_at: Vec<Vec<u32>> = vec![Vec::new(); m];
        for pos in 0..m {
            let last = *nb[pos].iter().max().unwrap();
            check_at[last as usize].push(pos as u32);
        }
        Search {
            nb,
            check_at,
            m,
        }
    }

    /// True if edge at `pos` has a conflict-free color under `colors`.
    fn edge_ok(&self, colors: &[Color], pos: usize, k: u8) -> bool {
        let mut counts = [0u32; 8];
        for &q in &self.nb[pos] {
            counts[(colors[q as usize] - 1) as usize] += 1;
        }
        (0..k as usize).any(|c| counts[c] == 1)
    }

    /// Backtracking search. `symmetry_break` fixes the first edge to color 1
    /// and only lets a fresh color enter in palette order; enumeration mode
    /// (`on_solution` returning `true` to continue) visits every assignment.
    fn run<F: FnMut(&[Color]) -> bool>(&self, k: u8, symmetry_break: bool, on_solution: &mut F) -> bool {
        let mut colors: Vec<Color> = vec![0; self.m];
        self.descend(0, k, symmetry_break, &mut colors, on_solution)
    }

    fn descend<F: FnMut(&[Color]) -> bool>(
        &self,
        pos: usize,
        k: u8,
        symmetry_break: bool,
        colors: &mut Vec<Color>,
        on_solution: &mut F,
    ) -> bool {
        if pos == self.m {
            return !on_solution(colors);
        }
        let limit = if symmetry_break {
            let max_used = colors[..pos].iter().copied().max().unwrap_or(0);
            k.min(max_used + 1)
        } else {
            k
        };
        'colors: for c in 1..=limit {
            colors[pos] = c;
            for &j in &self.check_at[pos] {
                if !self.edge_ok(colors, j as usize, k) {
                    continue 'colors;
                }
            }
            if self.descend(pos + 1, k, symmetry_break, colors, on_solution) {
                return true;
            }
        }
        colors[pos] = 0;
        false
    }

    /// Converts a position-indexed assignment back to canonical edge order.
    fn to_coloring(&self, t: &Tree, colors: &[Color], k: u8) -> EdgeColoring {
        // order[pos] was forgotten; reconstruct it the same way.
        let root = if t.vertex_count() >= 2 {
            t.leaves().next().unwrap()
        } else {
            t.vertices().next().unwrap()
        };
        let rt = RootedTree::with_root(t.clone(), root).unwrap();
        let mut c = EdgeColoring::new(t, k);
        for (pos, v) in rt.bfs_order().skip(1).enumerate() {
            let p = rt.parent_of(v).unwrap();
            let e = t.edge_index(p, v).unwrap();
            c.set_index(e, Some(colors[pos]));
        }
        c
    }
}

/// Exact conflict-free chromatic index by exhaustive search: the smallest
/// `k <= max_k` admitting a valid coloring, with one witness. For trees and
/// `max_k = 3` this always succeeds.
pub fn brute_force_index(
    t: &Tree,
    max_k: u8,
    limits: &OracleLimits,
) -> Result<(u8, EdgeColoring), OracleError> {
    let m = t.edge_count();
    let limit = if max_k >= 3 { limits.max_edges_k3 } else { limits.max_edges_k2 };
    if m > limit {
        return Err(OracleError::TooLarge { edges: m, limit });
    }
    if m == 0 {
        return Ok((1, EdgeColoring::new(t, 1)));
    }
    let search = Search::new(t);
    for k in 1..=max_k.min(7) {
        let mut witness: Option<Vec<Color>> = None;
        search.run(k, true, &mut |colors| {
            witness = Some(colors.to_vec());
            false // stop at the first solution
        });
        if let Some(colors) = witness {
            return Ok((k, search.to_coloring(t, &colors, k)));
        }
    }
    Err(OracleError::NoColoringWithin(max_k))
}

/// Convenience wrapper with the tree bound `max_k = 3` and default limits.
pub fn brute_force_index_default(t: &Tree) -> Result<(u8, EdgeColoring), OracleError> {
    brute_force_index(t, 3, &OracleLimits::default())
}

/// All valid conflict-free two-colorings, both palette orders included.
pub fn enumerate_cf_2_colorings(t: &Tree, limits: &OracleLimits) -> Result<Vec<EdgeColoring>, OracleError> {
    let m = t.edge_count();
    if m > limits.max_edges_k2 {
        return Err(OracleError::TooLarge { edges: m, limit: limits.max_edges_k2 });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let search = Search::new(t);
    let mut out = Vec::new();
    search.run(2, false, &mut |colors| {
        out.push(search.to_coloring(t, colors, 2));
        true // keep enumerating
    });
    Ok(out)
}

/// Rooted canonical code: nested parentheses over sorted child codes,
/// encoded as bytes with `0` for open and `1` for close.
pub(crate) fn rooted_code(rt: &RootedTree, v: u32) -> Vec<u8> {
    let mut child_codes: Vec<Vec<u8>> = rt.children_ix()[v as usize]
        .iter()
        .map(|&c| rooted_code(rt, c))
        .collect();
    child_codes.sort();
    let mut code = Vec::with_capacity(2 + child_codes.iter().map(Vec::len).sum::<usize>());
    code.push(0);
    for c in child_codes {
        code.extend_from_slice(&c);
    }
    code.push(1);
    code
}

/// Canonical code of a free tree: the rooted code at its centroid, or the
/// smaller of the two codes when the tree is bicentroidal.
pub fn canonical_code(t: &Tree) -> Vec<u8> {
    let n = t.vertex_count();
    if n == 1 {
        return vec![0, 1];
    }
    // Subtree sizes from an arbitrary root give the centroid(s).
    let root = t.vertices().next().unwrap();
    let rt = RootedTree::with_root(t.clone(), root).unwrap();
    let mut size = vec![1u32; n];
    for &v in rt.bfs_ix().iter().rev() {
        for &c in &rt.children_ix()[v as usize] {
            size[v as usize] += size[c as usize];
        }
    }
    let mut centroids: Vec<u32> = Vec::new();
    for v in 0..n as u32 {
        let mut largest = (n as u32) - size[v as usize];
        for &c in &rt.children_ix()[v as usize] {
            largest = largest.max(size[c as usize]);
        }
        if largest as usize <= n / 2 {
            centroids.push(v);
        }
    }
    centroids
        .into_iter()
        .map(|c| {
            let crt = RootedTree::with_root(t.clone(), t.id_of(c)).unwrap();
            rooted_code(&crt, crt.root_ix())
        })
        .min()
        .expect("every tree has a centroid")
}

/// One representative per isomorphism class of free trees on `n` vertices,
/// optionally restricted to trees with no degree-2 vertex. Representatives
/// are labeled `0..n-1` and returned in canonical-code order.
pub fn enumerate_trees(n: usize, no_deg2: bool, limits: &OracleLimits) -> Result<Vec<Tree>, OracleError> {
    if n > limits.max_enum_vertices {
        return Err(OracleError::TooLarge { edges: n, limit: limits.max_enum_vertices });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Grow every tree on k vertices by one leaf in every position and
    // deduplicate by canonical code.
    let mut current: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
    current.insert(canonical_code(&Tree::single(0)), Tree::single(0));
    for k in 2..=n {
        let mut next: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
        for t in current.values() {
            for v in t.vertices() {
                let mut edges: Vec<(VertexId, VertexId)> = t.edges().collect();
                edges.push((v, (k - 1) as VertexId));
                let grown = Tree::from_edges(&edges).unwrap();
                let code = canonical_code(&grown);
                next.entry(code).or_insert(grown);
            }
        }
        current = next;
    }
    Ok(current
        .into_values()
        .filter(|t| !no_deg2 || !t.has_degree_two_vertex())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_conflict_free;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn path(n: usize) -> Tree {
        let edges: Vec<_> = (0..n - 1).map(|i| (i as VertexId, i as VertexId + 1)).collect();
        Tree::from_edges(&edges).unwrap()
    }

    #[test]
    fn index_single_edge() {
        let t = Tree::from_edges(&[(0, 1)]).unwrap();
        let (k, c) = brute_force_index_default(&t).unwrap();
        assert_eq!(k, 1);
        assert!(verify_conflict_free(&t, &c).unwrap().is_valid());
    }

    #[test]
    fn index_p3_is_two() {
        let (k, c) = brute_force_index_default(&path(3)).unwrap();
        assert_eq!(k, 2);
        assert!(verify_conflict_free(&path(3), &c).unwrap().is_valid());
    }

    #[test]
    fn index_star_is_two() {
        let t = Tree::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(brute_force_index_default(&t).unwrap().0, 2);
    }

    #[test]
    fn index_too_large() {
        let t = path(30);
        assert!(matches!(
            brute_force_index_default(&t),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn enumerate_colorings_single_edge() {
        let t = Tree::from_edges(&[(0, 1)]).unwrap();
        let all = enumerate_cf_2_colorings(&t, &OracleLimits::default()).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn enumerate_colorings_p3() {
        let all = enumerate_cf_2_colorings(&path(3), &OracleLimits::default()).unwrap();
        assert_eq!(all.len(), 2);
        for c in &all {
            assert!(verify_conflict_free(&path(3), c).unwrap().is_valid());
        }
    }

    #[test]
    fn enumerate_colorings_star_has_six() {
        // Exactly one odd-colored edge: 3 edge choices x 2 palette orders.
        let t = Tree::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        let all = enumerate_cf_2_colorings(&t, &OracleLimits::default()).unwrap();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn two_iff_some_cf_2_coloring() {
        for n in 2..=8 {
            for t in enumerate_trees(n, false, &OracleLimits::default()).unwrap() {
                let (k, _) = brute_force_index_default(&t).unwrap();
                let any2 = !enumerate_cf_2_colorings(&t, &OracleLimits::default())
                    .unwrap()
                    .is_empty();
                assert_eq!(k <= 2, any2, "tree {t:?}");
            }
        }
    }

    #[test]
    fn free_tree_counts_match_known_sequence() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let got = enumerate_trees(n, false, &OracleLimits::default()).unwrap().len();
            assert_eq!(got, want, "free trees on {n} vertices");
        }
    }

    #[test]
    fn no_deg2_tree_counts() {
        // Series-reduced trees: no vertex of degree 2.
        let expected = [(4usize, 1usize), (5, 1), (6, 2), (7, 2), (8, 4), (9, 5), (10, 10)];
        for (n, want) in expected {
            let got = enumerate_trees(n, true, &OracleLimits::default()).unwrap().len();
            assert_eq!(got, want, "no-deg-2 trees on {n} vertices");
        }
    }

    /// Naive isomorphism via permutations, as an independent check of the
    /// canonical code at tiny sizes.
    fn isomorphic_naive(a: &Tree, b: &Tree) -> bool {
        use alloc::collections::BTreeSet;
        let n = a.vertex_count();
        if n != b.vertex_count() || a.edge_count() != b.edge_count() {
            return false;
        }
        let av: Vec<VertexId> = a.vertices().collect();
        let bv: Vec<VertexId> = b.vertices().collect();
        let b_edges: BTreeSet<(VertexId, VertexId)> = b.edges().collect();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = a.edges().all(|(u, v)| {
                let ui = av.iter().position(|&x| x == u).unwrap();
                let vi = av.iter().position(|&x| x == v).unwrap();
                let (x, y) = (bv[perm[ui]], bv[perm[vi]]);
                b_edges.contains(&(x.min(y), x.max(y)))
            });
            if ok {
                return true;
            }
            // next permutation
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn enumeration_classes_pairwise_nonisomorphic_small() {
        for n in 2..=7 {
            let trees = enumerate_trees(n, false, &OracleLimits::default()).unwrap();
            for i in 0..trees.len() {
                for j in i + 1..trees.len() {
                    assert!(
                        !isomorphic_naive(&trees[i], &trees[j]),
                        "representatives {i} and {j} on {n} vertices are isomorphic"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_invariant_under_relabeling() {
        let t = Tree::from_edges(&[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6), (5, 7)]).unwrap();
        let (k0, _) = brute_force_index_default(&t).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = t.vertex_count() as VertexId;
        for _ in 0..100 {
            let mut labels: Vec<VertexId> = (0..n).collect();
            labels.shuffle(&mut rng);
            let edges: Vec<_> = t
                .edges()
                .map(|(u, v)| (labels[u as usize], labels[v as usize]))
                .collect();
            let relabeled = Tree::from_edges(&edges).unwrap();
            assert_eq!(brute_force_index_default(&relabeled).unwrap().0, k0);
        }
    }
}
