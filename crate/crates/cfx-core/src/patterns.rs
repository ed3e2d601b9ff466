//! Coloring patterns of full subtrees, surficial vertices, and the four
//! composable subtree families with their forced colorings.
//!
//! In any conflict-free 2-coloring (red canonicalized as the conflict-free
//! color), all vertices on one level of a full subtree share their S/D type,
//! so a full subtree is described by its root-edge color plus one type per
//! inner level. Maximal full subtrees of 2-colorable complete trees only
//! ever show six patterns:
//!
//! ```text
//! level 2: (B), (R)       level 3: R1 = (B,D), R2 = (R,S)
//! level 4: R4 = (B,S,D)   level 5: R3 = (R,S,S,D)
//! ```
//!
//! The subtree hanging below a *surficial* vertex `u` (a deepest father of a
//! maximal full subtree) is a sum of full trees sharing `u`. When the host
//! is 2-colorable that sum must fall into one of four families, and each
//! family forces its coloring either completely (F1, F3, F4) or up to the
//! edges at `u` (F2). Those forced colorings are the starred colorings the
//! linear solver stamps and contracts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{Color, ColoringError, EdgeColoring, VertexType, BLUE, RED};
use crate::oracle::rooted_code;
use crate::tree::{RootedTree, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternsError {
    PreconditionViolated(&'static str),
    /// The whole tree is full: it has no maximal full subtree and no
    /// surficial vertex; callers handle this terminal case directly.
    WholeTreeFull,
    /// `matches_star` got members that are not isomorphic as rooted trees.
    ShapeMismatch,
}

impl fmt::Display for PatternsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternsError::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            PatternsError::WholeTreeFull => write!(f, "the tree is itself full"),
            PatternsError::ShapeMismatch => write!(f, "members are not isomorphic as rooted trees"),
        }
    }
}

/// The (root color, per-level S/D types) description of a colored full
/// subtree. `types[i]` is the shared type of the vertices on level `i + 1`;
/// the last two levels of a full subtree are its penultimate inner level and
/// its leaves, so `types.len() == level - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringPattern {
    pub root_color: Color,
    pub types: Vec<VertexType>,
}

impl ColoringPattern {
    pub fn new(root_color: Color, types: Vec<VertexType>) -> ColoringPattern {
        ColoringPattern { root_color, types }
    }

    pub fn r1() -> ColoringPattern {
        ColoringPattern::new(BLUE, vec![VertexType::D])
    }

    pub fn r2() -> ColoringPattern {
        ColoringPattern::new(RED, vec![VertexType::S])
    }

    pub fn r3() -> ColoringPattern {
        ColoringPattern::new(RED, vec![VertexType::S, VertexType::S, VertexType::D])
    }

    pub fn r4() -> ColoringPattern {
        ColoringPattern::new(BLUE, vec![VertexType::S, VertexType::D])
    }

    /// The level of full subtree this pattern describes.
    pub fn level(&self) -> u32 {
        self.types.len() as u32 + 2
    }

    /// The patterns a maximal full subtree of the given level can carry in a
    /// conflict-free 2-coloring; empty for levels outside `2..=5`.
    pub fn admissible_for_level(level: u32) -> Vec<ColoringPattern> {
        match level {
            2 => vec![
                ColoringPattern::new(BLUE, Vec::new()),
                ColoringPattern::new(RED, Vec::new()),
            ],
            3 => vec![ColoringPattern::r1(), ColoringPattern::r2()],
            4 => vec![ColoringPattern::r4()],
            5 => vec![ColoringPattern::r3()],
            _ => Vec::new(),
        }
    }

    pub fn is_admissible(&self) -> bool {
        ColoringPattern::admissible_for_level(self.level()).contains(self)
    }
}

impl fmt::Display for ColoringPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root_color == RED {
            write!(f, "R")?;
        } else {
            write!(f, "B")?;
        }
        for t in &self.types {
            write!(f, ",{t}")?;
        }
        Ok(())
    }
}

/// The four composable families of surficial subtrees, identified by the
/// multiset of levels of the full parts hanging at the surficial vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Leaves plus exactly one level-3 part.
    F1,
    /// Leaves plus level-4 parts.
    F2,
    /// Exactly one level-3 part, level-4 parts, optional leaves.
    F3,
    /// Exactly one level-5 part, plus leaves and/or level-4 parts.
    F4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F1 => write!(f, "F1"),
            Family::F2 => write!(f, "F2"),
            Family::F3 => write!(f, "F3"),
            Family::F4 => write!(f, "F4"),
        }
    }
}

/// Which family a member matches, with the part multiplicities by level and
/// the surficial vertex the member hangs below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: Family,
    /// The surficial vertex `u` (the member is `Sub(u)`, rooted at its father).
    pub member_root: VertexId,
    /// Number of parts of level 2 (leaf sons of `u`).
    pub twos: u32,
    pub threes: u32,
    pub fours: u32,
    pub fives: u32,
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{{l2:{},l3:{},l4:{},l5:{}}}@{}",
            self.family, self.twos, self.threes, self.fours, self.fives, self.member_root
        )
    }
}

/// How the partially forced coloring of an F2 member got resolved: the one
/// red edge at the member vertex ends up either on its father edge or on one
/// of its leaf edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Variant {
    RedFatherEdge,
    RedLeafEdge,
    Unresolved,
}

/// The canonical (partially) forced coloring of a family member: total on
/// the member for F1/F3/F4, and total outside the member vertex's edges for
/// F2.
#[derive(Debug, Clone)]
pub struct StarColoring {
    pub descriptor: FamilyDescriptor,
    /// The member tree the assignment refers to.
    pub member: RootedTree,
    pub assignment: EdgeColoring,
    /// Only meaningful for F2.
    pub variant: Option<F2Variant>,
}

/// Subtree fullness and heights for every vertex: `full[v]` says whether the
/// subtree through `v`'s parent edge is a full tree, `height[v]` is the
/// depth of `v`'s subtree (0 for leaves).
pub(crate) fn fullness(rt: &RootedTree) -> (Vec<bool>, Vec<u32>) {
    let n = rt.tree().vertex_count();
    let mut full = vec![false; n];
    let mut height = vec![0u32; n];
    for &v in rt.bfs_ix().iter().rev() {
        let children = &rt.children_ix()[v as usize];
        if children.is_empty() {
            full[v as usize] = true;
            height[v as usize] = 0;
        } else {
            let h0 = height[children[0] as usize];
            let mut aligned = true;
            let mut all_full = true;
            let mut h = 0;
            for &c in children {
                let hc = height[c as usize];
                aligned &= hc == h0;
                all_full &= full[c as usize];
                h = h.max(hc);
            }
            height[v as usize] = h + 1;
            full[v as usize] = children.len() >= 2 && all_full && aligned;
        }
    }
    (full, height)
}

/// The pattern of a colored full subtree: its root-edge color and the shared
/// S/D type of each inner level below the root. Mixed levels signal a
/// non-conflict-free or corrupted coloring.
pub fn coloring_pattern(full: &RootedTree, c: &EdgeColoring) -> Result<ColoringPattern, ColoringError> {
    if !full.is_full() {
        return Err(ColoringError::PreconditionViolated("subtree is not full"));
    }
    let mut roots = full.children_of(full.root_id());
    let son = match (roots.next(), roots.next()) {
        (Some(son), None) => son,
        _ => return Err(ColoringError::PreconditionViolated("full subtree root must have one son")),
    };
    let root_color = match c.get(full.tree(), full.root_id(), son)? {
        Some(col) => col,
        None => return Err(ColoringError::PartialColoring),
    };
    let levels = full.level_count();
    let mut types = Vec::new();
    for lvl in 1..levels.saturating_sub(1) {
        let mut level_type: Option<VertexType> = None;
        for v in full.bfs_order() {
            if full.level_of_vertex(v) != lvl {
                continue;
            }
            let ty = crate::coloring::vertex_type(full, c, v)?;
            match level_type {
                None => level_type = Some(ty),
                Some(prev) if prev != ty => return Err(ColoringError::MixedLevel(lvl)),
                _ => {}
            }
        }
        types.push(level_type.expect("full subtrees have inner vertices on every non-last level"));
    }
    Ok(ColoringPattern::new(
        if root_color == RED { RED } else { BLUE },
        types,
    ))
}

/// All maximal full subtrees: pairs `(v, Sub(v))` where `Sub(v)` is full but
/// the subtree through `v`'s father is not. A tree that is itself full has
/// none (its root-side subtree is undefined).
pub fn maximal_full_subtrees(rt: &RootedTree) -> Vec<(VertexId, RootedTree)> {
    let (full, _) = fullness(rt);
    let root = rt.root_ix();
    let mut out = Vec::new();
    for v in rt.bfs_order() {
        let vi = rt.tree().index(v).unwrap();
        if vi == root {
            continue;
        }
        let p = rt.parent_ix()[vi as usize];
        if p == root {
            continue;
        }
        if full[vi as usize] && !full[p as usize] {
            out.push((v, rt.subtree(v).expect("non-root")));
        }
    }
    out.sort_by_key(|(v, _)| *v);
    out
}

/// The fathers of maximal-full-subtree roots (the index set the surficial
/// vertex is drawn from), ascending.
pub fn index_set(rt: &RootedTree) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = maximal_full_subtrees(rt)
        .into_iter()
        .map(|(v, _)| rt.parent_of(v).expect("non-root"))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Finds a vertex whose sons all root full subtrees while its own subtree is
/// not full, starting from a deepest leaf (ties by smallest id) and walking
/// up while the subtree stays full. If the stopping vertex still has a
/// non-full son the walk descends into it; every son of the returned vertex
/// roots a full subtree.
pub fn find_surficial_vertex(rt: &RootedTree) -> Result<VertexId, PatternsError> {
    if !rt.is_complete() {
        return Err(PatternsError::PreconditionViolated("tree is not complete"));
    }
    if rt.children_ix()[rt.root_ix() as usize].len() != 1 {
        return Err(PatternsError::PreconditionViolated("tree is not rooted at a leaf"));
    }
    let (full, _) = fullness(rt);
    let son_of_root = rt.children_ix()[rt.root_ix() as usize][0];
    if full[son_of_root as usize] {
        return Err(PatternsError::WholeTreeFull);
    }
    // Deepest leaf, smallest id among ties. Vertices iterate in ascending id.
    let mut deepest: Option<(u32, u32)> = None; // (level, index)
    for v in rt.tree().vertices() {
        let vi = rt.tree().index(v).unwrap();
        if !rt.children_ix()[vi as usize].is_empty() {
            continue;
        }
        let lvl = rt.level_ix()[vi as usize];
        if deepest.map_or(true, |(best, _)| lvl > best) {
            deepest = Some((lvl, vi));
        }
    }
    let (_, x) = deepest.expect("a tree with >= 2 vertices has a leaf");
    let mut u = rt.parent_ix()[x as usize];
    while full[u as usize] {
        u = rt.parent_ix()[u as usize];
    }
    // The walk from the deepest leaf can stop at an ancestor that still has
    // an unbalanced son elsewhere; descend until every son is full.
    'descend: loop {
        for &c in &rt.children_ix()[u as usize] {
            if !full[c as usize] {
                u = c;
                continue 'descend;
            }
        }
        break;
    }
    debug_assert!(!full[u as usize]);
    Ok(rt.tree().id_of(u))
}

/// Classifies the member `Sub(u)` (rooted at `u`'s father, with every son of
/// `u` rooting a full subtree) by the multiset of its part levels. `None`
/// means no family matches, which certifies index 3 for the host tree.
pub fn classify_family(member: &RootedTree) -> Result<Option<FamilyDescriptor>, PatternsError> {
    let root = member.root_ix();
    let sons_of_root = &member.children_ix()[root as usize];
    if sons_of_root.len() != 1 {
        return Err(PatternsError::PreconditionViolated("member root must have exactly one son"));
    }
    let u = sons_of_root[0];
    let (full, height) = fullness(member);
    if full[u as usize] {
        return Err(PatternsError::PreconditionViolated("member is a full tree"));
    }
    let mut counts = [0u32; 4]; // levels 2..=5
    for &v in &member.children_ix()[u as usize] {
        if !full[v as usize] {
            return Err(PatternsError::PreconditionViolated("a son of the member vertex is not full"));
        }
        let level = height[v as usize] + 2;
        if !(2..=5).contains(&level) {
            return Ok(None); // parts deeper than level 5 match nothing
        }
        counts[(level - 2) as usize] += 1;
    }
    let [c2, c3, c4, c5] = counts;
    let family = match (c2, c3, c4, c5) {
        (k1, 1, 0, 0) if k1 > 0 => Family::F1,
        (k2, 0, k3, 0) if k2 > 0 && k3 > 0 => Family::F2,
        (_, 1, k5, 0) if k5 > 0 => Family::F3,
        (k6, 0, k7, 1) if k6 + k7 > 0 => Family::F4,
        _ => return Ok(None),
    };
    Ok(Some(FamilyDescriptor {
        family,
        member_root: member.tree().id_of(u),
        twos: c2,
        threes: c3,
        fours: c4,
        fives: c5,
    }))
}

/// Per-level roles inside a full part of the given level: the part root is
/// level 1 and the leaves carry no role.
fn part_roles(level: u32) -> &'static [VertexType] {
    match level {
        2 => &[],
        3 => &[VertexType::S],
        4 => &[VertexType::S, VertexType::D],
        5 => &[VertexType::S, VertexType::S, VertexType::D],
        _ => unreachable!("parts have level 2..=5"),
    }
}

/// Expected color of the edge from the member vertex into a part of the
/// given level, by family. `None` for F2, whose member-vertex edges stay
/// uncolored.
fn part_root_color(family: Family, level: u32) -> Option<Color> {
    match family {
        Family::F2 => None,
        Family::F1 | Family::F3 => Some(if level == 3 { RED } else { BLUE }),
        Family::F4 => Some(if level == 5 { RED } else { BLUE }),
    }
}

/// Builds the canonical starred coloring of a member: F1/F3/F4 are total on
/// the member; F2 leaves the edges at the member vertex uncolored. Where a
/// D-vertex may pick any leaf son for its red edge, the smallest id wins.
pub fn canonical_star_coloring(member: &RootedTree, d: &FamilyDescriptor) -> StarColoring {
    let t = member.tree();
    let mut c = EdgeColoring::two(t);
    let root = member.root_id();
    let u = d.member_root;
    let (_, height) = fullness(member);
    if d.family != Family::F2 {
        c.set(t, root, u, BLUE).unwrap();
    }
    for v in member.children_of(u).collect::<Vec<_>>() {
        let vi = t.index(v).unwrap();
        let level = height[vi as usize] + 2;
        if let Some(col) = part_root_color(d.family, level) {
            c.set(t, u, v, col).unwrap();
        }
        apply_part_roles(member, &mut c, v, level);
    }
    StarColoring {
        descriptor: d.clone(),
        member: member.clone(),
        assignment: c,
        variant: if d.family == Family::F2 {
            Some(F2Variant::Unresolved)
        } else {
            None
        },
    }
}

/// Colors the interior of the part rooted at son `v` by its per-level roles:
/// S-vertices get all out-edges blue, D-vertices one red out-edge (smallest
/// child) and the rest blue.
fn apply_part_roles(member: &RootedTree, c: &mut EdgeColoring, v: VertexId, level: u32) {
    let t = member.tree();
    let roles = part_roles(level);
    let mut frontier = vec![t.index(v).unwrap()];
    for &role in roles {
        let mut next = Vec::new();
        for &w in &frontier {
            let children = &member.children_ix()[w as usize];
            match role {
                VertexType::S => {
                    for &ch in children {
                        c.set(t, t.id_of(w), t.id_of(ch), BLUE).unwrap();
                    }
                }
                VertexType::D => {
                    for (i, &ch) in children.iter().enumerate() {
                        let col = if i == 0 { RED } else { BLUE };
                        c.set(t, t.id_of(w), t.id_of(ch), col).unwrap();
                    }
                }
            }
            next.extend_from_slice(children);
        }
        frontier = next;
    }
}

/// Color-consistent rooted isomorphism: true when the member's shape matches
/// the star's member and some isomorphism makes every edge colored on both
/// sides agree. For F2 stars the edges at the member vertex are exempt. The
/// red edge of a D-vertex may sit at any of its (interchangeable) leaf sons,
/// so consistency reduces to per-level role checks.
pub fn matches_star(
    member: &RootedTree,
    observed: &EdgeColoring,
    star: &StarColoring,
) -> Result<bool, PatternsError> {
    let shape_obs = rooted_code(member, member.root_ix());
    let shape_star = rooted_code(&star.member, star.member.root_ix());
    if shape_obs != shape_star {
        return Err(PatternsError::ShapeMismatch);
    }
    let t = member.tree();
    let root = member.root_id();
    let mut sons = member.children_of(root);
    let u = sons.next().expect("member root has one son");
    debug_assert!(sons.next().is_none());
    let family = star.descriptor.family;
    let (_, height) = fullness(member);

    // Father edge of the member vertex.
    if family != Family::F2 {
        if observed.get(t, root, u).map_err(|_| PatternsError::ShapeMismatch)? == Some(RED) {
            return Ok(false);
        }
    }
    for v in member.children_of(u).collect::<Vec<_>>() {
        let vi = t.index(v).unwrap();
        let level = height[vi as usize] + 2;
        if let Some(expected) = part_root_color(family, level) {
            if let Some(col) = observed.get(t, u, v).unwrap() {
                if col != expected {
                    return Ok(false);
                }
            }
        }
        if !part_roles_consistent(member, observed, v, level) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks an observed partial coloring of a part against the per-level
/// roles. Uncolored edges are free; an S-vertex must not show a red
/// out-edge, a D-vertex must show at most one and must keep a slot for one.
fn part_roles_consistent(member: &RootedTree, observed: &EdgeColoring, v: VertexId, level: u32) -> bool {
    let t = member.tree();
    let roles = part_roles(level);
    let mut frontier = vec![t.index(v).unwrap()];
    for &role in roles {
        let mut next = Vec::new();
        for &w in &frontier {
            let children = &member.children_ix()[w as usize];
            let mut reds = 0usize;
            let mut uncolored = 0usize;
            for &ch in children {
                match observed.get(t, t.id_of(w), t.id_of(ch)).unwrap() {
                    Some(RED) => reds += 1,
                    Some(_) => {}
                    None => uncolored += 1,
                }
            }
            match role {
                VertexType::S => {
                    if reds > 0 {
                        return false;
                    }
                }
                VertexType::D => {
                    if reds > 1 || (reds == 0 && uncolored == 0) {
                        return false;
                    }
                }
            }
            next.extend_from_slice(children);
        }
        frontier = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{canonicalize_red, verify_conflict_free};
    use crate::oracle::{enumerate_cf_2_colorings, OracleLimits};
    use crate::tree::{RootedClass, Tree};
    use alloc::collections::BTreeSet;
    use alloc::format;
    use alloc::string::ToString;

    fn colored(t: &Tree, edges: &[(VertexId, VertexId, Color)]) -> EdgeColoring {
        let mut c = EdgeColoring::two(t);
        for &(u, v, col) in edges {
            c.set(t, u, v, col).unwrap();
        }
        c
    }

    /// root 0 - 1, 1 -> {2, 3}: the level-3 full subtree on 4 vertices.
    fn full3() -> RootedTree {
        RootedTree::root_at_leaf(Tree::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap(), Some(0)).unwrap()
    }

    #[test]
    fn pattern_display() {
        assert_eq!(ColoringPattern::r3().to_string(), "R,S,S,D");
        assert_eq!(ColoringPattern::new(BLUE, alloc::vec![]).to_string(), "B");
    }

    #[test]
    fn pattern_r2_from_coloring() {
        let rt = full3();
        let c = colored(rt.tree(), &[(0, 1, RED), (1, 2, BLUE), (1, 3, BLUE)]);
        assert_eq!(coloring_pattern(&rt, &c).unwrap(), ColoringPattern::r2());
    }

    #[test]
    fn pattern_r1_from_coloring() {
        let rt = full3();
        let c = colored(rt.tree(), &[(0, 1, BLUE), (1, 2, RED), (1, 3, BLUE)]);
        assert_eq!(coloring_pattern(&rt, &c).unwrap(), ColoringPattern::r1());
    }

    #[test]
    fn pattern_level2_root_only() {
        let t = Tree::from_edges(&[(0, 1)]).unwrap();
        let rt = RootedTree::root_at_leaf(t, Some(0)).unwrap();
        let c = colored(rt.tree(), &[(0, 1, BLUE)]);
        let p = coloring_pattern(&rt, &c).unwrap();
        assert_eq!(p, ColoringPattern::new(BLUE, alloc::vec![]));
        assert!(p.is_admissible());
    }

    #[test]
    fn pattern_mixed_level_detected() {
        // Level-4 full tree, two vertices on level 2 with different types.
        let t = Tree::from_edges(&[(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]).unwrap();
        let rt = RootedTree::root_at_leaf(t, Some(0)).unwrap();
        let c = colored(
            rt.tree(),
            &[
                (0, 1, BLUE),
                (1, 2, BLUE),
                (1, 3, BLUE),
                (2, 4, RED),
                (2, 5, BLUE),
                (3, 6, BLUE),
                (3, 7, BLUE),
            ],
        );
        assert_eq!(coloring_pattern(&rt, &c).unwrap_err(), ColoringError::MixedLevel(2));
    }

    fn uneven() -> RootedTree {
        // root 0 - 1; 1 -> {2 (leaf), 3}; 3 -> {4, 5}.
        let t = Tree::from_edges(&[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        RootedTree::root_at_leaf(t, Some(0)).unwrap()
    }

    #[test]
    fn maximal_full_subtrees_examples() {
        // The whole tree full: nothing is maximal.
        assert!(maximal_full_subtrees(&full3()).is_empty());

        let rt = uneven();
        let found: Vec<VertexId> = maximal_full_subtrees(&rt).iter().map(|(v, _)| *v).collect();
        assert_eq!(found, alloc::vec![2, 3]);
        assert_eq!(index_set(&rt), alloc::vec![1]);
    }

    #[test]
    fn find_surficial_uneven() {
        assert_eq!(find_surficial_vertex(&uneven()).unwrap(), 1);
    }

    #[test]
    fn find_surficial_whole_tree_full() {
        assert_eq!(find_surficial_vertex(&full3()).unwrap_err(), PatternsError::WholeTreeFull);
    }

    #[test]
    fn find_surficial_descends_past_balanced_branch() {
        // A deepest leaf under the balanced branch 2 would walk up to vertex
        // 1, which still has the unbalanced son 3; the search must land on 3.
        //
        //   0 - 1 - 2 - {4, 5}, 4 -> {8, 9}, 5 -> {10, 11}
        //           3 - {6 (leaf), 7}, 7 -> {12, 13}
        let t = Tree::from_edges(&[
            (0, 1),
            (1, 2),
            (1, 3),
            (2, 4),
            (2, 5),
            (4, 8),
            (4, 9),
            (5, 10),
            (5, 11),
            (3, 6),
            (3, 7),
            (7, 12),
            (7, 13),
        ])
        .unwrap();
        let rt = RootedTree::root_at_leaf(t, Some(0)).unwrap();
        assert_eq!(rt.classify(), RootedClass::CompleteNotFull);
        assert_eq!(find_surficial_vertex(&rt).unwrap(), 3);
    }

    /// Builds a member `Sub(u)` with parts of the given levels (uniform
    /// branching 2), returning it rooted at the father of `u`.
    fn member_with_parts(levels: &[u32]) -> RootedTree {
        let mut edges: Vec<(VertexId, VertexId)> = alloc::vec![(0, 1)]; // father edge
        let mut next: VertexId = 2;
        for &lv in levels {
            // part root son
            let son = next;
            next += 1;
            edges.push((1, son));
            let mut frontier = alloc::vec![son];
            for _ in 0..lv.saturating_sub(2) {
                let mut nf = Vec::new();
                for w in frontier {
                    for _ in 0..2 {
                        edges.push((w, next));
                        nf.push(next);
                        next += 1;
                    }
                }
                frontier = nf;
            }
        }
        RootedTree::root_at_leaf(Tree::from_edges(&edges).unwrap(), Some(0)).unwrap()
    }

    #[test]
    fn classify_family_examples() {
        let d = classify_family(&member_with_parts(&[2, 2, 3])).unwrap().unwrap();
        assert_eq!(d.family, Family::F1);
        assert_eq!((d.twos, d.threes, d.fours, d.fives), (2, 1, 0, 0));

        let d = classify_family(&member_with_parts(&[2, 4, 4])).unwrap().unwrap();
        assert_eq!(d.family, Family::F2);
        assert_eq!((d.twos, d.fours), (1, 2));

        let d = classify_family(&member_with_parts(&[3, 4])).unwrap().unwrap();
        assert_eq!(d.family, Family::F3);

        let d = classify_family(&member_with_parts(&[2, 5])).unwrap().unwrap();
        assert_eq!(d.family, Family::F4);

        // Two level-3 parts fit no family (a bare {3,3} member would already
        // be a full tree, so a leaf part keeps the precondition satisfied).
        assert_eq!(classify_family(&member_with_parts(&[2, 3, 3])).unwrap(), None);
        assert_eq!(classify_family(&member_with_parts(&[3, 5])).unwrap(), None);
        assert_eq!(classify_family(&member_with_parts(&[2, 6])).unwrap(), None);
    }

    #[test]
    fn classify_family_rejects_full_member() {
        assert!(matches!(
            classify_family(&member_with_parts(&[2, 2])),
            Err(PatternsError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn star_f1_smallest() {
        let member = member_with_parts(&[2, 3]);
        let d = classify_family(&member).unwrap().unwrap();
        assert_eq!(d.family, Family::F1);
        let star = canonical_star_coloring(&member, &d);
        let t = member.tree();
        // Father edge blue, leaf son blue, part root red, part interior blue.
        assert!(star.assignment.is_total());
        assert_eq!(star.assignment.get(t, 0, 1).unwrap(), Some(BLUE));
        assert_eq!(star.assignment.get(t, 1, 2).unwrap(), Some(BLUE));
        assert_eq!(star.assignment.get(t, 1, 3).unwrap(), Some(RED));
        assert_eq!(star.assignment.get(t, 3, 4).unwrap(), Some(BLUE));
        assert_eq!(star.assignment.get(t, 3, 5).unwrap(), Some(BLUE));
        // And it is a valid conflict-free coloring of the member standalone.
        assert!(verify_conflict_free(t, &star.assignment).unwrap().is_valid());
    }

    #[test]
    fn star_f2_leaves_member_vertex_uncolored() {
        let member = member_with_parts(&[2, 4]);
        let d = classify_family(&member).unwrap().unwrap();
        let star = canonical_star_coloring(&member, &d);
        let t = member.tree();
        assert_eq!(star.assignment.get(t, 0, 1).unwrap(), None);
        assert_eq!(star.assignment.get(t, 1, 2).unwrap(), None);
        assert_eq!(star.assignment.get(t, 1, 3).unwrap(), None);
        assert_eq!(star.variant, Some(F2Variant::Unresolved));
        // Interior of the level-4 part is forced.
        let uncolored = star.assignment.edge_len() - star.assignment.assigned_count();
        assert_eq!(uncolored, 3);
    }

    #[test]
    fn matches_star_examples() {
        let member = member_with_parts(&[2, 3]);
        let d = classify_family(&member).unwrap().unwrap();
        let star = canonical_star_coloring(&member, &d);
        // Freshly uncolored member: nothing to contradict.
        let blank = EdgeColoring::two(member.tree());
        assert!(matches_star(&member, &blank, &star).unwrap());
        // A red leaf edge at the member vertex contradicts F1.
        let bad = colored(member.tree(), &[(1, 2, RED)]);
        assert!(!matches_star(&member, &bad, &star).unwrap());
        // Shape mismatch is an error, not false.
        let other = member_with_parts(&[2, 2, 3]);
        let err = matches_star(&other, &EdgeColoring::two(other.tree()), &star).unwrap_err();
        assert_eq!(err, PatternsError::ShapeMismatch);
    }

    #[test]
    fn matches_star_f2_ignores_member_vertex_edges() {
        let member = member_with_parts(&[2, 4]);
        let d = classify_family(&member).unwrap().unwrap();
        let star = canonical_star_coloring(&member, &d);
        let mut obs = star.assignment.clone();
        // Color the father edge; F2 exempts the member vertex's edges.
        obs.set(member.tree(), 0, 1, RED).unwrap();
        assert!(matches_star(&member, &obs, &star).unwrap());
    }

    /// The member as its own host: its root is a leaf, so the member is a
    /// valid tree without degree-2 vertices. Richer hosts are covered by the
    /// exhaustive sweeps, which check every 2-colorable tree up to 14
    /// vertices against the pattern and family claims.
    fn host_colorings(member: &RootedTree) -> (Tree, Vec<EdgeColoring>) {
        let host = member.tree().clone();
        let all = enumerate_cf_2_colorings(&host, &OracleLimits::default()).unwrap();
        (host, all)
    }

    /// Every conflict-free coloring of a host containing the member must
    /// restrict to the starred coloring (F1/F3/F4), and the member vertex's
    /// edge pattern must be identical across colorings (fixed vertex).
    #[test]
    fn stars_match_every_host_coloring() {
        for levels in [&[2u32, 3][..], &[3, 4][..], &[2, 5][..], &[2, 2, 3][..]] {
            let member = member_with_parts(levels);
            let d = classify_family(&member).unwrap().unwrap();
            let star = canonical_star_coloring(&member, &d);
            let (host, all) = host_colorings(&member);
            assert!(!all.is_empty(), "host of {levels:?} should be 2-colorable");
            let mut eu_patterns: BTreeSet<Vec<Option<Color>>> = BTreeSet::new();
            for c in &all {
                let canon = canonicalize_red(&host, c).unwrap();
                // Restrict to the member's edges.
                let mut restricted = EdgeColoring::two(member.tree());
                for (u, v) in member.tree().edges() {
                    restricted
                        .set_index(member.tree().edge_index(u, v).unwrap(), canon.get(&host, u, v).unwrap());
                }
                assert!(
                    matches_star(&member, &restricted, &star).unwrap(),
                    "family {} coloring disagrees with star",
                    d.family
                );
                let u = d.member_root;
                let mut eu: Vec<Option<Color>> = alloc::vec![canon.get(&host, member.root_id(), u).unwrap()];
                for v in member.children_of(u) {
                    eu.push(canon.get(&host, u, v).unwrap());
                }
                eu_patterns.insert(eu);
            }
            assert_eq!(eu_patterns.len(), 1, "member vertex of {} must be fixed", d.family);
        }
    }

    /// F2 hosts admit exactly the two extensions on the member vertex: red
    /// on the father edge or red on one leaf edge; the part interiors agree
    /// with the starred coloring in every case.
    #[test]
    fn star_f2_two_extensions() {
        let member = member_with_parts(&[2, 4]);
        let d = classify_family(&member).unwrap().unwrap();
        let star = canonical_star_coloring(&member, &d);
        let (host, all) = host_colorings(&member);
        assert!(!all.is_empty());
        let u = d.member_root;
        let mut variants: BTreeSet<&'static str> = BTreeSet::new();
        for c in &all {
            let canon = canonicalize_red(&host, c).unwrap();
            let mut restricted = EdgeColoring::two(member.tree());
            for (a, b) in member.tree().edges() {
                restricted
                    .set_index(member.tree().edge_index(a, b).unwrap(), canon.get(&host, a, b).unwrap());
            }
            assert!(matches_star(&member, &restricted, &star).unwrap());
            let father_red = canon.get(&host, member.root_id(), u).unwrap() == Some(RED);
            let leaf_red = member
                .children_of(u)
                .filter(|&v| member.tree().degree(v) == 1)
                .any(|v| canon.get(&host, u, v).unwrap() == Some(RED));
            let part_red = member
                .children_of(u)
                .filter(|&v| member.tree().degree(v) > 1)
                .any(|v| canon.get(&host, u, v).unwrap() == Some(RED));
            assert!(!part_red, "red must never sit on a level-4 part root edge");
            variants.insert(match (father_red, leaf_red) {
                (true, false) => "father",
                (false, true) => "leaf",
                _ => "other",
            });
        }
        assert_eq!(
            variants.into_iter().collect::<Vec<_>>(),
            alloc::vec!["father", "leaf"],
            "exactly the two extensions must occur"
        );
        let _ = format!("{}", d);
    }
}
