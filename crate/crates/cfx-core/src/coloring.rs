//! Edge colorings and conflict-free verification.
//!
//! A color is *conflict-free* for an edge if it is assigned to exactly one
//! edge of the closed neighborhood `E(uv) = E(u) ∪ E(v)`. A coloring is
//! conflict-free when every edge has such a color. Two-colorings use the
//! convention red = 1, blue = 2, and for trees without degree-2 vertices a
//! valid coloring has a single color that is the conflict-free color of
//! every edge; most call sites canonicalize so that color is red.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matching::Matching;
use crate::tree::{RootedTree, Tree, VertexId};

/// Colors are small integers `1..=palette`; 0 is never a color.
pub type Color = u8;

pub const RED: Color = 1;
pub const BLUE: Color = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringError {
    UnknownEdge(VertexId, VertexId),
    /// A color outside `1..=palette`.
    BadColor(Color),
    /// The operation needs every relevant edge assigned.
    PartialColoring,
    /// The operation is restricted to trees without degree-2 vertices, or to
    /// inner vertices, and the argument is not in that class.
    PreconditionViolated(&'static str),
    NotConflictFree,
    /// No single color is conflict-free for every edge (cannot happen for
    /// valid colorings of trees without degree-2 vertices).
    NoSingleConflictFreeColor,
    LeafVertex(VertexId),
    /// Two vertices on one level of a full subtree have different S/D types;
    /// signals a non-conflict-free or corrupted coloring.
    MixedLevel(u32),
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::UnknownEdge(u, v) => write!(f, "unknown edge {u} {v}"),
            ColoringError::BadColor(c) => write!(f, "color {c} outside the palette"),
            ColoringError::PartialColoring => write!(f, "coloring is partial where totality is required"),
            ColoringError::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            ColoringError::NotConflictFree => write!(f, "coloring is not conflict-free"),
            ColoringError::NoSingleConflictFreeColor => {
                write!(f, "no single color is conflict-free for every edge")
            }
            ColoringError::LeafVertex(v) => write!(f, "vertex {v} is not an inner vertex"),
            ColoringError::MixedLevel(i) => write!(f, "level {i} mixes S- and D-vertices"),
        }
    }
}

/// A (possibly partial) assignment of colors to the edges of one tree,
/// indexed by the tree's canonical edge order. Unassigned edges are distinct
/// from every color.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<Option<Color>>,
    palette: u8,
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(k={}, ", self.palette)?;
        f.debug_list().entries(self.colors.iter()).finish()?;
        write!(f, ")")
    }
}

impl EdgeColoring {
    pub fn new(t: &Tree, palette: u8) -> EdgeColoring {
        EdgeColoring {
            colors: vec![None; t.edge_count()],
            palette,
        }
    }

    /// An empty two-coloring (red/blue).
    pub fn two(t: &Tree) -> EdgeColoring {
        EdgeColoring::new(t, 2)
    }

    pub fn palette(&self) -> u8 {
        self.palette
    }

    pub fn set(&mut self, t: &Tree, u: VertexId, v: VertexId, c: Color) -> Result<(), ColoringError> {
        if c == 0 || c > self.palette {
            return Err(ColoringError::BadColor(c));
        }
        let e = t.edge_index(u, v).ok_or(ColoringError::UnknownEdge(u, v))?;
        self.colors[e] = Some(c);
        Ok(())
    }

    pub fn unset(&mut self, t: &Tree, u: VertexId, v: VertexId) -> Result<(), ColoringError> {
        let e = t.edge_index(u, v).ok_or(ColoringError::UnknownEdge(u, v))?;
        self.colors[e] = None;
        Ok(())
    }

    pub fn get(&self, t: &Tree, u: VertexId, v: VertexId) -> Result<Option<Color>, ColoringError> {
        let e = t.edge_index(u, v).ok_or(ColoringError::UnknownEdge(u, v))?;
        Ok(self.colors[e])
    }

    pub fn get_index(&self, e: usize) -> Option<Color> {
        self.colors[e]
    }

    pub fn set_index(&mut self, e: usize, c: Option<Color>) {
        self.colors[e] = c;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    pub fn assigned_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn edge_len(&self) -> usize {
        self.colors.len()
    }

    /// Applies a palette permutation: `perm[c - 1]` is the new name of `c`.
    pub fn permute_palette(&mut self, perm: &[Color]) {
        debug_assert_eq!(perm.len(), self.palette as usize);
        for slot in self.colors.iter_mut() {
            if let Some(c) = slot {
                *c = perm[(*c - 1) as usize];
            }
        }
    }

    /// Swaps red and blue in a two-coloring.
    pub fn swap_red_blue(&mut self) {
        for slot in self.colors.iter_mut() {
            match slot {
                Some(c) if *c == RED => *slot = Some(BLUE),
                Some(c) if *c == BLUE => *slot = Some(RED),
                _ => {}
            }
        }
    }

    /// Assigned edges as `(u, v, color)` in canonical edge order.
    pub fn assignments<'a>(&'a self, t: &'a Tree) -> impl Iterator<Item = (VertexId, VertexId, Color)> + 'a {
        self.colors.iter().enumerate().filter_map(move |(e, c)| {
            c.map(|c| {
                let (u, v) = t.edge_at(e);
                (u, v, c)
            })
        })
    }
}

/// Outcome of [`verify_conflict_free`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// One edge with no conflict-free color.
    Invalid(VertexId, VertexId),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// S/D classification of an inner vertex under a two-coloring whose
/// conflict-free color is red: S has all out-edges blue, D has a red
/// out-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexType {
    S,
    D,
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexType::S => write!(f, "S"),
            VertexType::D => write!(f, "D"),
        }
    }
}

/// All edges sharing an endpoint with `{u, v}`, including the edge itself,
/// in canonical edge order.
pub fn closed_neighborhood(
    t: &Tree,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<(VertexId, VertexId)>, ColoringError> {
    let e = t.edge_index(u, v).ok_or(ColoringError::UnknownEdge(u, v))?;
    let mut out: Vec<usize> = Vec::with_capacity(t.degree(u) + t.degree(v) - 1);
    for w in t.neighbors(u) {
        out.push(t.edge_index(u, w).expect("adjacent"));
    }
    for w in t.neighbors(v) {
        let f = t.edge_index(v, w).expect("adjacent");
        if f != e {
            out.push(f);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out.into_iter().map(|e| t.edge_at(e)).collect())
}

/// Colors occurring exactly once in the closed neighborhood of `{u, v}`.
/// May be empty; an edge may also have more than one conflict-free color.
pub fn conflict_free_colors(
    t: &Tree,
    c: &EdgeColoring,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<Color>, ColoringError> {
    let nb = closed_neighborhood(t, u, v)?;
    let mut counts = vec![0u32; c.palette() as usize];
    for (a, b) in nb {
        match c.get(t, a, b)? {
            Some(col) => counts[(col - 1) as usize] += 1,
            None => return Err(ColoringError::PartialColoring),
        }
    }
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &n)| n == 1)
        .map(|(i, _)| (i + 1) as Color)
        .collect())
}

/// Checks that every edge has a conflict-free color. Requires a total
/// coloring; returns the first violating edge (in canonical order) otherwise.
pub fn verify_conflict_free(t: &Tree, c: &EdgeColoring) -> Result<Verdict, ColoringError> {
    if c.edge_len() != t.edge_count() {
        return Err(ColoringError::PreconditionViolated("coloring built for another tree"));
    }
    if !c.is_total() {
        return Err(ColoringError::PartialColoring);
    }
    let k = c.palette() as usize;
    let n = t.vertex_count();
    // Per-vertex color counts; the closed neighborhood of (a, b) then has
    // count cnt[a][col] + cnt[b][col] - [color(ab) = col].
    let mut cnt = vec![0u32; n * k];
    for (e, &(a, b)) in t.edge_list_ix().iter().enumerate() {
        let col = c.get_index(e).unwrap() as usize - 1;
        cnt[a as usize * k + col] += 1;
        cnt[b as usize * k + col] += 1;
    }
    for (e, &(a, b)) in t.edge_list_ix().iter().enumerate() {
        let own = c.get_index(e).unwrap() as usize - 1;
        let mut ok = false;
        for col in 0..k {
            let mut total = cnt[a as usize * k + col] + cnt[b as usize * k + col];
            if col == own {
                total -= 1;
            }
            if total == 1 {
                ok = true;
                break;
            }
        }
        if !ok {
            let (u, v) = t.edge_at(e);
            return Ok(Verdict::Invalid(u, v));
        }
    }
    Ok(Verdict::Valid)
}

/// The single color that is a conflict-free color of every edge. For a valid
/// two-coloring of a tree without degree-2 vertices this color exists and is
/// unique; `require_no_deg2` can be dropped by callers probing other trees,
/// in which case the single color may fail to exist.
pub fn tree_conflict_free_color(
    t: &Tree,
    c: &EdgeColoring,
    require_no_deg2: bool,
) -> Result<Color, ColoringError> {
    if require_no_deg2 && t.has_degree_two_vertex() {
        return Err(ColoringError::PreconditionViolated("tree has a degree-2 vertex"));
    }
    match verify_conflict_free(t, c)? {
        Verdict::Valid => {}
        Verdict::Invalid(..) => return Err(ColoringError::NotConflictFree),
    }
    let mut universal: u32 = (1u32 << c.palette()) - 1;
    for (u, v) in t.edges() {
        let mut mask = 0u32;
        for col in conflict_free_colors(t, c, u, v)? {
            mask |= 1 << (col - 1);
        }
        universal &= mask;
        if universal == 0 {
            return Err(ColoringError::NoSingleConflictFreeColor);
        }
    }
    if universal.count_ones() != 1 {
        return Err(ColoringError::NoSingleConflictFreeColor);
    }
    Ok((universal.trailing_zeros() + 1) as Color)
}

/// If all but one edge at `v` share a color, returns that majority color and
/// the odd edge out. Monochromatic stars and degree-1 vertices yield nothing;
/// at degree 2 with two distinct colors the smaller color is reported as the
/// majority.
pub fn unique_color_of_vertex(
    t: &Tree,
    c: &EdgeColoring,
    v: VertexId,
) -> Result<Option<(Color, (VertexId, VertexId))>, ColoringError> {
    let deg = t.degree(v);
    if deg < 2 {
        return Ok(None);
    }
    let mut counts = vec![0u32; c.palette() as usize];
    for w in t.neighbors(v) {
        match c.get(t, v, w)? {
            Some(col) => counts[(col - 1) as usize] += 1,
            None => return Err(ColoringError::PartialColoring),
        }
    }
    for (i, &n) in counts.iter().enumerate() {
        if n as usize == deg - 1 {
            let majority = (i + 1) as Color;
            let odd = t
                .neighbors(v)
                .find(|&w| c.get(t, v, w).unwrap() != Some(majority))
                .expect("one edge differs");
            return Ok(Some((majority, (v.min(odd), v.max(odd)))));
        }
    }
    Ok(None)
}

/// S/D type of an inner vertex `v`: S when all out-edges are blue, D when
/// some out-edge is red. Presumes red has been canonicalized as the
/// conflict-free color.
pub fn vertex_type(rt: &RootedTree, c: &EdgeColoring, v: VertexId) -> Result<VertexType, ColoringError> {
    let t = rt.tree();
    if t.degree(v) < 2 {
        return Err(ColoringError::LeafVertex(v));
    }
    let mut ty = VertexType::S;
    for w in rt.children_of(v) {
        match c.get(t, v, w)? {
            Some(RED) => ty = VertexType::D,
            Some(_) => {}
            None => return Err(ColoringError::PartialColoring),
        }
    }
    Ok(ty)
}

/// The red edge set of a valid two-coloring of a tree without degree-2
/// vertices, after canonicalizing so that red is the conflict-free color.
/// The result is always a dominating induced matching.
pub fn red_matching(t: &Tree, c: &EdgeColoring) -> Result<Matching, ColoringError> {
    let cf = tree_conflict_free_color(t, c, true)?;
    let edges: Vec<(VertexId, VertexId)> = c
        .assignments(t)
        .filter(|&(_, _, col)| col == cf)
        .map(|(u, v, _)| (u, v))
        .collect();
    Ok(Matching::new(edges))
}

/// Colors the matching edges red and everything else blue. When `m` is a
/// maximal matching inducing exactly itself on a tree without degree-2
/// vertices (and at least 3 vertices), the result is conflict-free.
pub fn matching_to_coloring(t: &Tree, m: &Matching) -> Result<EdgeColoring, ColoringError> {
    let mut c = EdgeColoring::two(t);
    for (u, v) in t.edges() {
        c.set(t, u, v, BLUE).unwrap();
    }
    for &(u, v) in m.edges() {
        c.set(t, u, v, RED)?;
    }
    Ok(c)
}

/// Swaps the palette of a valid two-coloring if needed so that the tree's
/// conflict-free color is red.
pub fn canonicalize_red(t: &Tree, c: &EdgeColoring) -> Result<EdgeColoring, ColoringError> {
    let cf = tree_conflict_free_color(t, c, true)?;
    let mut out = c.clone();
    if cf == BLUE {
        out.swap_red_blue();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn k13() -> Tree {
        Tree::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    fn p3() -> Tree {
        Tree::from_edges(&[(0, 1), (1, 2)]).unwrap()
    }

    fn double_star() -> Tree {
        Tree::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
    }

    fn colored(t: &Tree, assignment: &[(VertexId, VertexId, Color)]) -> EdgeColoring {
        let mut c = EdgeColoring::two(t);
        for &(u, v, col) in assignment {
            c.set(t, u, v, col).unwrap();
        }
        c
    }

    #[test]
    fn closed_neighborhood_single_edge() {
        let t = Tree::from_edges(&[(0, 1)]).unwrap();
        assert_eq!(closed_neighborhood(&t, 0, 1).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn closed_neighborhood_p3_and_star() {
        let t = p3();
        assert_eq!(closed_neighborhood(&t, 0, 1).unwrap(), vec![(0, 1), (1, 2)]);
        let s = Tree::from_edges(&[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(closed_neighborhood(&s, 0, 3).unwrap().len(), 4);
    }

    #[test]
    fn closed_neighborhood_unknown_edge() {
        let t = p3();
        assert_eq!(
            closed_neighborhood(&t, 0, 2).unwrap_err(),
            ColoringError::UnknownEdge(0, 2)
        );
    }

    #[test]
    fn cf_colors_p3() {
        let t = p3();
        let c = colored(&t, &[(0, 1, 1), (1, 2, 2)]);
        assert_eq!(conflict_free_colors(&t, &c, 0, 1).unwrap(), vec![1, 2]);
        assert_eq!(conflict_free_colors(&t, &c, 1, 2).unwrap(), vec![1, 2]);
        let mono = colored(&t, &[(0, 1, 1), (1, 2, 1)]);
        assert!(conflict_free_colors(&t, &mono, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn cf_colors_star_one_red() {
        let t = k13();
        let c = colored(&t, &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(conflict_free_colors(&t, &c, 0, 1).unwrap(), vec![RED]);
        assert_eq!(conflict_free_colors(&t, &c, 1, 2).unwrap(), vec![RED]);
    }

    #[test]
    fn cf_colors_partial_errors() {
        let t = p3();
        let c = colored(&t, &[(0, 1, 1)]);
        assert_eq!(
            conflict_free_colors(&t, &c, 0, 1).unwrap_err(),
            ColoringError::PartialColoring
        );
    }

    #[test]
    fn verify_single_edge_any_color() {
        let t = Tree::from_edges(&[(0, 1)]).unwrap();
        let c = colored(&t, &[(0, 1, BLUE)]);
        assert_eq!(verify_conflict_free(&t, &c).unwrap(), Verdict::Valid);
    }

    #[test]
    fn verify_p3_monochromatic_invalid() {
        let t = p3();
        let c = colored(&t, &[(0, 1, 1), (1, 2, 1)]);
        assert!(matches!(
            verify_conflict_free(&t, &c).unwrap(),
            Verdict::Invalid(..)
        ));
    }

    #[test]
    fn verify_star_one_red_valid() {
        let t = k13();
        let c = colored(&t, &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(verify_conflict_free(&t, &c).unwrap(), Verdict::Valid);
    }

    #[test]
    fn tree_cf_color_star_and_double_star() {
        let t = k13();
        let c = colored(&t, &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(tree_conflict_free_color(&t, &c, true).unwrap(), RED);

        let d = double_star();
        let c = colored(
            &d,
            &[(0, 1, RED), (0, 2, BLUE), (0, 3, BLUE), (1, 4, BLUE), (1, 5, BLUE)],
        );
        assert_eq!(tree_conflict_free_color(&d, &c, true).unwrap(), RED);
    }

    #[test]
    fn tree_cf_color_rejects_degree_two() {
        let t = p3();
        let c = colored(&t, &[(0, 1, 1), (1, 2, 2)]);
        assert_eq!(
            tree_conflict_free_color(&t, &c, true).unwrap_err(),
            ColoringError::PreconditionViolated("tree has a degree-2 vertex")
        );
    }

    #[test]
    fn unique_color_star() {
        let t = k13();
        let c = colored(&t, &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(
            unique_color_of_vertex(&t, &c, 1).unwrap(),
            Some((BLUE, (0, 1)))
        );
        let mono = colored(&t, &[(0, 1, BLUE), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(unique_color_of_vertex(&t, &mono, 1).unwrap(), None);
        // Degree-1 vertices have no unique color by decision.
        assert_eq!(unique_color_of_vertex(&t, &c, 0).unwrap(), None);
    }

    #[test]
    fn vertex_type_star_center() {
        let t = k13();
        let rt = crate::tree::RootedTree::root_at_leaf(t, None).unwrap();
        let c = colored(rt.tree(), &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(vertex_type(&rt, &c, 1).unwrap(), VertexType::S);
        let c = colored(rt.tree(), &[(0, 1, BLUE), (1, 2, RED), (1, 3, BLUE)]);
        assert_eq!(vertex_type(&rt, &c, 1).unwrap(), VertexType::D);
        assert_eq!(
            vertex_type(&rt, &c, 2).unwrap_err(),
            ColoringError::LeafVertex(2)
        );
    }

    #[test]
    fn red_matching_star_and_double_star() {
        let t = k13();
        let c = colored(&t, &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(red_matching(&t, &c).unwrap().edges(), &[(0, 1)]);

        let d = double_star();
        let c = colored(
            &d,
            &[(0, 1, RED), (0, 2, BLUE), (0, 3, BLUE), (1, 4, BLUE), (1, 5, BLUE)],
        );
        assert_eq!(red_matching(&d, &c).unwrap().edges(), &[(0, 1)]);
    }

    #[test]
    fn red_matching_canonicalizes_swapped_palette() {
        // Same double star with the palette swapped: blue is the cf color.
        let d = double_star();
        let c = colored(
            &d,
            &[(0, 1, BLUE), (0, 2, RED), (0, 3, RED), (1, 4, RED), (1, 5, RED)],
        );
        assert_eq!(red_matching(&d, &c).unwrap().edges(), &[(0, 1)]);
    }

    #[test]
    fn red_matching_all_blue_not_conflict_free() {
        let t = k13();
        let c = colored(&t, &[(0, 1, BLUE), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(red_matching(&t, &c).unwrap_err(), ColoringError::NotConflictFree);
    }

    #[test]
    fn matching_to_coloring_valid_cases() {
        let t = k13();
        let m = Matching::new(vec![(0, 1)]);
        let c = matching_to_coloring(&t, &m).unwrap();
        assert_eq!(verify_conflict_free(&t, &c).unwrap(), Verdict::Valid);

        let d = double_star();
        let m = Matching::new(vec![(0, 1)]);
        let c = matching_to_coloring(&d, &m).unwrap();
        assert_eq!(verify_conflict_free(&d, &c).unwrap(), Verdict::Valid);
    }

    #[test]
    fn matching_to_coloring_p6_checked_by_verifier() {
        // Degree-2 vertices present: validity is not guaranteed by the
        // characterization, only the verifier decides.
        let p6 = Tree::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let m = Matching::new(vec![(0, 1), (3, 4)]);
        let c = matching_to_coloring(&p6, &m).unwrap();
        assert_eq!(verify_conflict_free(&p6, &c).unwrap(), Verdict::Valid);
    }

    #[test]
    fn roundtrip_matching_coloring_matching() {
        let d = double_star();
        let m = Matching::new(vec![(0, 1)]);
        let c = matching_to_coloring(&d, &m).unwrap();
        assert_eq!(red_matching(&d, &c).unwrap(), m);
    }

    /// Builds the tree with edges (i+1, prufer-style parent) from a sequence;
    /// a cheap way to get arbitrary trees out of proptest.
    fn tree_from_attachment(seq: &[usize]) -> Tree {
        let mut edges = Vec::new();
        for (i, &a) in seq.iter().enumerate() {
            let child = (i + 1) as VertexId;
            let parent = (a % (i + 1)) as VertexId;
            edges.push((parent, child));
        }
        Tree::from_edges(&edges).unwrap()
    }

    proptest! {
        /// The verifier is invariant under any permutation of the palette.
        #[test]
        fn verifier_palette_permutation_invariant(
            seq in proptest::collection::vec(0usize..100, 1..10),
            colors in proptest::collection::vec(1u8..=3, 10),
            swap in proptest::sample::select(alloc::vec![
                [1u8, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1],
            ]),
        ) {
            let t = tree_from_attachment(&seq);
            let mut c = EdgeColoring::new(&t, 3);
            for (e, (u, v)) in t.edges().collect::<Vec<_>>().into_iter().enumerate() {
                c.set(&t, u, v, colors[e % colors.len()]).unwrap();
            }
            let before = verify_conflict_free(&t, &c).unwrap().is_valid();
            let mut permuted = c.clone();
            permuted.permute_palette(&swap);
            let after = verify_conflict_free(&t, &permuted).unwrap().is_valid();
            prop_assert_eq!(before, after);
        }
    }
}
