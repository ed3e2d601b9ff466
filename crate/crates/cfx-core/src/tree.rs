//! Trees, rooted trees, and structural predicates.
//!
//! All trees here are undirected and connected with arbitrary non-negative
//! integer vertex ids. Rooted trees are out-branchings rooted at a leaf (the
//! root keeps exactly one son), which is the orientation the pattern and
//! solver machinery works with. Determinism everywhere comes from ordering
//! children lists by ascending vertex id.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Vertex identifier as it appears in input files. Ids may be sparse; all
/// internal structures are index-based.
pub type VertexId = u32;

/// Why a set of edges failed to form a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotATreeKind {
    Empty,
    SelfLoop,
    DuplicateEdge,
    Cycle,
    Disconnected,
}

/// Errors from tree construction and rooted-tree operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    NotATree(NotATreeKind),
    /// The requested root is not a leaf.
    NotALeaf(VertexId),
    /// `subtree` is undefined for the root vertex.
    IsRoot,
    UnknownVertex(VertexId),
    /// The tree is too small for the operation (rooting needs two vertices).
    TooSmall,
    /// `tree_sum` needs at least one part.
    EmptyList,
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::NotATree(kind) => {
                let what = match kind {
                    NotATreeKind::Empty => "no edges",
                    NotATreeKind::SelfLoop => "self-loop",
                    NotATreeKind::DuplicateEdge => "duplicate edge",
                    NotATreeKind::Cycle => "cycle",
                    NotATreeKind::Disconnected => "disconnected",
                };
                write!(f, "not a tree: {what}")
            }
            TreeError::NotALeaf(v) => write!(f, "vertex {v} is not a leaf"),
            TreeError::IsRoot => write!(f, "operation undefined for the root vertex"),
            TreeError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            TreeError::TooSmall => write!(f, "tree has too few vertices"),
            TreeError::EmptyList => write!(f, "empty list of parts"),
        }
    }
}

/// An undirected tree. Vertex ids are preserved verbatim; edges are stored
/// sorted by `(min id, max id)` so edge indices are canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    /// Sorted vertex ids; the position of an id is its internal index.
    ids: Vec<VertexId>,
    /// Adjacency lists in internal indices, each sorted ascending.
    adj: Vec<Vec<u32>>,
    /// Edge list in internal indices, `(lo, hi)` pairs sorted lexicographically.
    edge_list: Vec<(u32, u32)>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("vertices", &self.ids.len())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Tree {
    /// Builds a tree from an edge list, validating connectivity and acyclicity.
    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Tree, TreeError> {
        if edges.is_empty() {
            return Err(TreeError::NotATree(NotATreeKind::Empty));
        }
        let mut ids: Vec<VertexId> = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            if u == v {
                return Err(TreeError::NotATree(NotATreeKind::SelfLoop));
            }
            ids.push(u);
            ids.push(v);
        }
        ids.sort_unstable();
        ids.dedup();
        let n = ids.len();
        if edges.len() + 1 > n {
            // More edges than a tree on these vertices allows: a duplicate
            // edge or a cycle. Distinguish the two for the error message.
            let mut seen: Vec<(u32, u32)> = edges
                .iter()
                .map(|&(u, v)| {
                    let ui = index_of(&ids, u).unwrap();
                    let vi = index_of(&ids, v).unwrap();
                    (ui.min(vi), ui.max(vi))
                })
                .collect();
            seen.sort_unstable();
            let had_dup = seen.windows(2).any(|w| w[0] == w[1]);
            return Err(TreeError::NotATree(if had_dup {
                NotATreeKind::DuplicateEdge
            } else {
                NotATreeKind::Cycle
            }));
        }
        if edges.len() + 1 < n {
            return Err(TreeError::NotATree(NotATreeKind::Disconnected));
        }

        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut edge_list: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            let ui = index_of(&ids, u).unwrap();
            let vi = index_of(&ids, v).unwrap();
            adj[ui as usize].push(vi);
            adj[vi as usize].push(ui);
            edge_list.push((ui.min(vi), ui.max(vi)));
        }
        edge_list.sort_unstable();
        if edge_list.windows(2).any(|w| w[0] == w[1]) {
            return Err(TreeError::NotATree(NotATreeKind::DuplicateEdge));
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        // |E| = |V| - 1 and no duplicates; connectivity is the remaining check.
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        if count != n {
            return Err(TreeError::NotATree(NotATreeKind::Disconnected));
        }

        Ok(Tree {
            ids,
            adj,
            edge_list,
        })
    }

    /// The one-vertex tree (level 1 when rooted).
    pub fn single(v: VertexId) -> Tree {
        Tree {
            ids: vec![v],
            adj: vec![Vec::new()],
            edge_list: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.index(v).is_some()
    }

    /// Vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    /// Edges as id pairs `(min, max)`, sorted; the position of each pair is
    /// its canonical edge index.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edge_list
            .iter()
            .map(move |&(a, b)| (self.ids[a as usize], self.ids[b as usize]))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let i = self.index(v).expect("unknown vertex");
        self.adj[i as usize].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let i = self.index(v).expect("unknown vertex");
        self.adj[i as usize].iter().map(move |&j| self.ids[j as usize])
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.degree(v) == 1
    }

    pub fn leaves(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids
            .iter()
            .enumerate()
            .filter(|(i, _)| self.adj[*i].len() == 1)
            .map(|(_, &id)| id)
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Canonical index of edge `{u, v}` in the sorted edge list.
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let ui = self.index(u)?;
        let vi = self.index(v)?;
        let key = (ui.min(vi), ui.max(vi));
        self.edge_list.binary_search(&key).ok()
    }

    /// The id pair of the edge with the given canonical index.
    pub fn edge_at(&self, index: usize) -> (VertexId, VertexId) {
        let (a, b) = self.edge_list[index];
        (self.ids[a as usize], self.ids[b as usize])
    }

    pub fn has_degree_two_vertex(&self) -> bool {
        self.adj.iter().any(|list| list.len() == 2)
    }

    pub(crate) fn index(&self, v: VertexId) -> Option<u32> {
        self.ids.binary_search(&v).ok().map(|i| i as u32)
    }

    pub(crate) fn id_of(&self, index: u32) -> VertexId {
        self.ids[index as usize]
    }

    pub(crate) fn adj_ix(&self, index: u32) -> &[u32] {
        &self.adj[index as usize]
    }

    pub(crate) fn edge_index_ix(&self, a: u32, b: u32) -> usize {
        let key = (a.min(b), a.max(b));
        self.edge_list.binary_search(&key).expect("edge exists")
    }

    pub(crate) fn edge_list_ix(&self) -> &[(u32, u32)] {
        &self.edge_list
    }
}

/// Shape of a rooted tree with respect to the fullness predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootedClass {
    /// Every vertex strictly between the root and the last level has at
    /// least two sons; forces all leaves onto the last level.
    Full,
    /// Every non-root inner vertex has at least two sons, but leaves sit on
    /// more than one level.
    CompleteNotFull,
    /// Some non-root inner vertex has exactly one son.
    NeitherComplete,
}

/// A tree oriented away from a root vertex, with levels and parent links.
#[derive(Clone)]
pub struct RootedTree {
    tree: Tree,
    root: u32,
    /// Parent in internal indices; `parent[root] == root`.
    parent: Vec<u32>,
    /// Children in internal indices, sorted ascending (so ascending by id).
    children: Vec<Vec<u32>>,
    level: Vec<u32>,
    /// Vertices in BFS order from the root.
    bfs: Vec<u32>,
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootedTree")
            .field("root", &self.root_id())
            .field("vertices", &self.tree.vertex_count())
            .field("levels", &self.level_count())
            .finish()
    }
}

impl RootedTree {
    /// Roots `t` at an arbitrary vertex. Most of the pattern machinery wants
    /// [`RootedTree::root_at_leaf`] instead; this is the raw constructor.
    pub fn with_root(tree: Tree, root: VertexId) -> Result<RootedTree, TreeError> {
        let root_ix = tree.index(root).ok_or(TreeError::UnknownVertex(root))?;
        let n = tree.vertex_count();
        let mut parent = vec![u32::MAX; n];
        let mut level = vec![0u32; n];
        let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut bfs = Vec::with_capacity(n);
        parent[root_ix as usize] = root_ix;
        bfs.push(root_ix);
        let mut head = 0;
        while head < bfs.len() {
            let u = bfs[head];
            head += 1;
            for &v in tree.adj_ix(u) {
                if parent[v as usize] == u32::MAX && v != root_ix {
                    parent[v as usize] = u;
                    level[v as usize] = level[u as usize] + 1;
                    children[u as usize].push(v);
                    bfs.push(v);
                }
            }
        }
        Ok(RootedTree {
            tree,
            root: root_ix,
            parent,
            children,
            level,
            bfs,
        })
    }

    /// Roots `t` at a leaf so the root has exactly one son. With `root`
    /// omitted the smallest-id leaf is chosen, which keeps runs reproducible.
    pub fn root_at_leaf(tree: Tree, root: Option<VertexId>) -> Result<RootedTree, TreeError> {
        if tree.vertex_count() < 2 {
            return Err(TreeError::TooSmall);
        }
        let r = match root {
            Some(r) => {
                if !tree.contains_vertex(r) {
                    return Err(TreeError::UnknownVertex(r));
                }
                if tree.degree(r) != 1 {
                    return Err(TreeError::NotALeaf(r));
                }
                r
            }
            None => tree.leaves().next().expect("a tree with >= 2 vertices has a leaf"),
        };
        RootedTree::with_root(tree, r)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn root_id(&self) -> VertexId {
        self.tree.id_of(self.root)
    }

    pub fn parent_of(&self, v: VertexId) -> Option<VertexId> {
        let i = self.tree.index(v).expect("unknown vertex");
        if i == self.root {
            None
        } else {
            Some(self.tree.id_of(self.parent[i as usize]))
        }
    }

    pub fn children_of(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let i = self.tree.index(v).expect("unknown vertex");
        self.children[i as usize]
            .iter()
            .map(move |&c| self.tree.id_of(c))
    }

    pub fn level_of_vertex(&self, v: VertexId) -> u32 {
        let i = self.tree.index(v).expect("unknown vertex");
        self.level[i as usize]
    }

    /// Number of vertex levels: the root sits on level 0, so this is one plus
    /// the deepest level index. An isolated vertex has one level.
    pub fn level_count(&self) -> u32 {
        1 + self.level.iter().copied().max().unwrap_or(0)
    }

    /// Vertices in BFS order from the root (ids).
    pub fn bfs_order(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bfs.iter().map(move |&i| self.tree.id_of(i))
    }

    /// The subtree induced by `v`, its parent, and all descendants of `v`,
    /// rooted at the parent (which keeps exactly one son, `v`).
    pub fn subtree(&self, v: VertexId) -> Result<RootedTree, TreeError> {
        let vi = self.tree.index(v).ok_or(TreeError::UnknownVertex(v))?;
        if vi == self.root {
            return Err(TreeError::IsRoot);
        }
        let p = self.parent[vi as usize];
        let mut edges = vec![(self.tree.id_of(p), v)];
        let mut stack = vec![vi];
        while let Some(u) = stack.pop() {
            for &c in &self.children[u as usize] {
                edges.push((self.tree.id_of(u), self.tree.id_of(c)));
                stack.push(c);
            }
        }
        let sub = Tree::from_edges(&edges).expect("a subtree is a tree");
        RootedTree::with_root(sub, self.tree.id_of(p))
    }

    /// Fullness/completeness classification. The root is exempt from the
    /// two-sons condition: it has one son by the rooting convention.
    pub fn classify(&self) -> RootedClass {
        let last = self.level_count() - 1;
        let mut complete = true;
        let mut full = true;
        for (i, lists) in self.children.iter().enumerate() {
            if i as u32 == self.root {
                continue;
            }
            let n_sons = lists.len();
            if n_sons == 1 {
                complete = false;
                full = false;
                break;
            }
            if self.level[i] < last && n_sons == 0 {
                // Leaf above the last level.
                full = false;
            }
        }
        if complete && full {
            RootedClass::Full
        } else if complete {
            RootedClass::CompleteNotFull
        } else {
            RootedClass::NeitherComplete
        }
    }

    pub fn is_full(&self) -> bool {
        self.classify() == RootedClass::Full
    }

    pub fn is_complete(&self) -> bool {
        self.classify() != RootedClass::NeitherComplete
    }

    pub(crate) fn root_ix(&self) -> u32 {
        self.root
    }

    pub(crate) fn parent_ix(&self) -> &[u32] {
        &self.parent
    }

    pub(crate) fn children_ix(&self) -> &[Vec<u32>] {
        &self.children
    }

    pub(crate) fn level_ix(&self) -> &[u32] {
        &self.level
    }

    pub(crate) fn bfs_ix(&self) -> &[u32] {
        &self.bfs
    }
}

/// Result of the `⊕` composition: the parts' roots are identified into one
/// vertex and a fresh root is attached above it by a new edge.
#[derive(Debug, Clone)]
pub struct TreeSum {
    pub tree: RootedTree,
    /// The fresh root vertex (id 0 in the relabeled result).
    pub root: VertexId,
    /// The vertex the parts' roots were identified into.
    pub merged: VertexId,
    /// Per part, pairs `(old id, new id)` tracing vertices through the sum.
    pub part_maps: Vec<Vec<(VertexId, VertexId)>>,
}

/// Identifies the roots of `parts` into a single vertex `v`, attaches a fresh
/// vertex `u` by a new edge `uv`, and roots the result at `u`. Vertices are
/// relabeled to consecutive ids starting at 0 (= `u`), with the maps retained
/// so colorings can be traced through compositions.
pub fn tree_sum(parts: &[RootedTree]) -> Result<TreeSum, TreeError> {
    if parts.is_empty() {
        return Err(TreeError::EmptyList);
    }
    let root: VertexId = 0;
    let merged: VertexId = 1;
    let mut next: VertexId = 2;
    let mut edges = vec![(root, merged)];
    let mut part_maps = Vec::with_capacity(parts.len());
    for part in parts {
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        map.insert(part.root_id(), merged);
        for v in part.bfs_order().skip(1) {
            map.insert(v, next);
            next += 1;
        }
        for v in part.bfs_order().skip(1) {
            let p = part.parent_of(v).expect("non-root");
            edges.push((map[&p], map[&v]));
        }
        part_maps.push(map.into_iter().collect());
    }
    let tree = Tree::from_edges(&edges).expect("sum of trees is a tree");
    let rooted = RootedTree::with_root(tree, root).expect("fresh root exists");
    Ok(TreeSum {
        tree: rooted,
        root,
        merged,
        part_maps,
    })
}

/// One component of the subgraph induced by edges incident to degree-2
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Eq2Component {
    /// A path `x1..xt` whose interior vertices all have degree 2 in the host
    /// tree; endpoints are the vertices of degree != 2 when they exist.
    Path(Vec<VertexId>),
    /// Anything else (a branched component, or a path whose interior touches
    /// a vertex of degree >= 3). The constructive coloring does not apply to
    /// these.
    Branched(Tree),
}

/// The two edge-induced subgraphs driving the degree-2 analysis.
#[derive(Debug, Clone)]
pub struct DegreeDecomposition {
    /// Components induced by edges incident to degree-2 vertices.
    pub eq2: Vec<Eq2Component>,
    /// Components induced by edges incident to degree->=3 vertices.
    pub ge3: Vec<Tree>,
}

/// Splits `t` into the subgraphs induced by edges at degree-2 vertices and
/// edges at degree->=3 vertices. An edge incident to one vertex of each kind
/// appears on both sides.
pub fn degree_decompose(t: &Tree) -> DegreeDecomposition {
    let n = t.vertex_count();
    let deg = |i: u32| t.adj_ix(i).len();
    let mut eq2_edges: Vec<(u32, u32)> = Vec::new();
    let mut ge3_edges: Vec<(u32, u32)> = Vec::new();
    for &(a, b) in t.edge_list_ix() {
        if deg(a) == 2 || deg(b) == 2 {
            eq2_edges.push((a, b));
        }
        if deg(a) >= 3 || deg(b) >= 3 {
            ge3_edges.push((a, b));
        }
    }

    let components = |edges: &[(u32, u32)]| -> Vec<Vec<(u32, u32)>> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || adj[start as usize].is_empty() {
                continue;
            }
            seen[start as usize] = true;
            let mut stack = vec![start];
            let mut comp_edges = Vec::new();
            while let Some(u) = stack.pop() {
                for &v in &adj[u as usize] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        stack.push(v);
                    }
                    if u < v {
                        comp_edges.push((u, v));
                    }
                }
            }
            comp_edges.sort_unstable();
            comp_edges.dedup();
            out.push(comp_edges);
        }
        out
    };

    let ge3 = components(&ge3_edges)
        .into_iter()
        .map(|edges| {
            let id_edges: Vec<_> = edges
                .iter()
                .map(|&(a, b)| (t.id_of(a), t.id_of(b)))
                .collect();
            Tree::from_edges(&id_edges).expect("component of a forest is a tree")
        })
        .collect();

    let eq2 = components(&eq2_edges)
        .into_iter()
        .map(|edges| {
            let id_edges: Vec<_> = edges
                .iter()
                .map(|&(a, b)| (t.id_of(a), t.id_of(b)))
                .collect();
            let comp = Tree::from_edges(&id_edges).expect("component of a forest is a tree");
            match path_sequence(t, &comp) {
                Some(seq) => Eq2Component::Path(seq),
                None => Eq2Component::Branched(comp),
            }
        })
        .collect();

    DegreeDecomposition { eq2, ge3 }
}

/// Returns the vertex sequence of `comp` if it is a path whose interior
/// vertices have degree 2 in the host tree `t`.
fn path_sequence(t: &Tree, comp: &Tree) -> Option<Vec<VertexId>> {
    let mut endpoints: Vec<VertexId> = Vec::new();
    for v in comp.vertices() {
        match comp.degree(v) {
            1 => endpoints.push(v),
            2 => {
                if t.degree(v) != 2 {
                    return None;
                }
            }
            _ => return None,
        }
    }
    if endpoints.len() != 2 {
        return None;
    }
    let start = endpoints[0].min(endpoints[1]);
    let mut seq = vec![start];
    let mut prev = None;
    let mut cur = start;
    while seq.len() < comp.vertex_count() {
        let next = comp
            .neighbors(cur)
            .find(|&w| Some(w) != prev)
            .expect("path continues");
        seq.push(next);
        prev = Some(cur);
        cur = next;
    }
    Some(seq)
}

fn index_of(ids: &[VertexId], v: VertexId) -> Option<u32> {
    ids.binary_search(&v).ok().map(|i| i as u32)
}
