//! Constructive 2-coloring for trees with degree-2 vertices.
//!
//! When every component of the degree-2 part is a path on at least 5
//! vertices and every component of the degree->=3 part is conflict-free
//! 2-edge-colorable, the whole tree is 2-colorable: remove the interior of
//! one such path, color the two remaining sides recursively, swap each
//! side's palette to normalize the colors of the boundary edges, and fill
//! the interior with an alternation chosen by whether each boundary edge
//! realizes its own conflict-free color and by the path parity.

use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{
    conflict_free_colors, verify_conflict_free, Color, EdgeColoring, BLUE, RED,
};
use crate::solver;
use crate::tree::{degree_decompose, Eq2Component, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuilderError {
    /// The tree violates the hypotheses: a degree-2 component is short or
    /// branched, or some degree->=3 component is not 2-colorable.
    HypothesesFail(&'static str),
    /// Requested alternation start and end colors contradict the parity.
    Infeasible,
    /// The vertex sequence is not a path of the host tree.
    BadPath,
}

impl fmt::Display for BuilderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuilderError::HypothesesFail(why) => write!(f, "hypotheses fail: {why}"),
            BuilderError::Infeasible => write!(f, "alternation endpoints contradict path parity"),
            BuilderError::BadPath => write!(f, "not a path of the tree"),
        }
    }
}

/// Which shape the construction took on one degree-2 path component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildCase {
    /// One side is a single edge; the path is colored by extending the
    /// other side backwards.
    TrivialSide,
    /// Both boundary edges realize their own conflict-free color.
    BothConflictFree,
    /// Exactly one boundary edge does.
    OneConflictFree,
    /// Neither does.
    NeitherConflictFree,
}

impl fmt::Display for BuildCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildCase::TrivialSide => write!(f, "trivial"),
            BuildCase::BothConflictFree => write!(f, "1"),
            BuildCase::OneConflictFree => write!(f, "2"),
            BuildCase::NeitherConflictFree => write!(f, "3"),
        }
    }
}

/// One processed path component, for trace output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildStep {
    /// Smallest vertex id on the component, identifying it.
    pub component: VertexId,
    /// Number of vertices on the path.
    pub t: usize,
    pub case: BuildCase,
}

impl fmt::Display for BuildStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component={} t={} parity={} case={}",
            self.component,
            self.t,
            if self.t % 2 == 0 { "even" } else { "odd" },
            self.case
        )
    }
}

/// True when every degree-2 component is a path on at least 5 vertices and
/// every degree->=3 component is conflict-free 2-edge-colorable (decided by
/// the linear solver; those components never contain degree-2 vertices once
/// the path condition holds).
pub fn hypotheses_hold(t: &Tree) -> bool {
    check_hypotheses(t).is_ok()
}

fn check_hypotheses(t: &Tree) -> Result<(), BuilderError> {
    if t.vertex_count() <= 2 {
        return Ok(());
    }
    let d = degree_decompose(t);
    for comp in &d.eq2 {
        match comp {
            Eq2Component::Path(seq) if seq.len() >= 5 => {}
            Eq2Component::Path(_) => {
                return Err(BuilderError::HypothesesFail("a degree-2 path has fewer than 5 vertices"))
            }
            Eq2Component::Branched(_) => {
                return Err(BuilderError::HypothesesFail("a degree-2 component is not a path"))
            }
        }
    }
    for comp in &d.ge3 {
        match solver::decide(comp) {
            Ok(solver::DecisionResult::Two(_)) => {}
            _ => {
                return Err(BuilderError::HypothesesFail(
                    "a component without degree-2 vertices is not 2-colorable",
                ))
            }
        }
    }
    Ok(())
}

/// Colors the edges along `path` alternately starting from `first`; with
/// `last` given, the final edge must land on that color or the request is
/// infeasible for this parity.
pub fn alternate_path_coloring(
    t: &Tree,
    path: &[VertexId],
    first: Color,
    last: Option<Color>,
) -> Result<EdgeColoring, BuilderError> {
    if path.len() < 2 {
        return Err(BuilderError::BadPath);
    }
    let mut c = EdgeColoring::two(t);
    for (i, pair) in path.windows(2).enumerate() {
        let col = if i % 2 == 0 { first } else { other(first) };
        c.set(t, pair[0], pair[1], col).map_err(|_| BuilderError::BadPath)?;
    }
    if let Some(want) = last {
        let n_edges = path.len() - 1;
        let got = if (n_edges - 1) % 2 == 0 { first } else { other(first) };
        if got != want {
            return Err(BuilderError::Infeasible);
        }
    }
    Ok(c)
}

fn other(c: Color) -> Color {
    if c == RED {
        BLUE
    } else {
        RED
    }
}

/// Builds a conflict-free 2-coloring of a tree satisfying the hypotheses.
pub fn build_coloring(t: &Tree) -> Result<EdgeColoring, BuilderError> {
    build_coloring_traced(t).map(|(c, _)| c)
}

/// Like [`build_coloring`], also reporting which case fired per component.
pub fn build_coloring_traced(t: &Tree) -> Result<(EdgeColoring, Vec<BuildStep>), BuilderError> {
    check_hypotheses(t)?;
    let mut trace = Vec::new();
    let c = build_inner(t, &mut trace)?;
    match verify_conflict_free(t, &c) {
        Ok(v) if v.is_valid() => Ok((c, trace)),
        _ => panic!("internal invariant violated: constructed coloring failed verification"),
    }
}

fn build_inner(t: &Tree, trace: &mut Vec<BuildStep>) -> Result<EdgeColoring, BuilderError> {
    if t.vertex_count() <= 2 {
        let mut c = EdgeColoring::two(t);
        for (u, v) in t.edges() {
            c.set(t, u, v, RED).unwrap();
        }
        return Ok(c);
    }
    let d = degree_decompose(t);
    let mut paths: Vec<Vec<VertexId>> = Vec::new();
    for comp in d.eq2 {
        match comp {
            Eq2Component::Path(seq) if seq.len() >= 5 => paths.push(seq),
            _ => return Err(BuilderError::HypothesesFail("degree-2 component outside the hypotheses")),
        }
    }
    if paths.is_empty() {
        return match solver::decide(t) {
            Ok(solver::DecisionResult::Two(c)) => Ok(c),
            _ => Err(BuilderError::HypothesesFail(
                "a component without degree-2 vertices is not 2-colorable",
            )),
        };
    }
    // Smallest minimum vertex id first, so runs are reproducible.
    paths.sort_by_key(|seq| seq.iter().copied().min().unwrap());
    let mut seq = paths.swap_remove(0);
    let component_id = seq.iter().copied().min().unwrap();
    let t_len = seq.len();

    // Drop the interior x3..x_{t-2} and split into the two sides.
    let interior: Vec<VertexId> = seq[2..t_len - 2].to_vec();
    let mut side1 = extract_component(t, seq[1], &interior);
    let mut side2 = extract_component(t, seq[t_len - 2], &interior);
    let mut c1 = build_inner(&side1, trace)?;
    let mut c2 = build_inner(&side2, trace)?;

    let case;
    if side1.vertex_count() == 2 || side2.vertex_count() == 2 {
        // Keep a non-trivial side (if any) as side2 and extend it backwards.
        if side2.vertex_count() == 2 && side1.vertex_count() != 2 {
            seq.reverse();
            core::mem::swap(&mut side1, &mut side2);
            core::mem::swap(&mut c1, &mut c2);
        }
        case = BuildCase::TrivialSide;
        trace.push(BuildStep { component: component_id, t: t_len, case });
        return assemble_trivial(t, &seq, &side2, &c2, trace, component_id);
    }

    let cf1 = stub_realizes_cf(&side1, &c1, seq[0], seq[1]);
    let cf2 = stub_realizes_cf(&side2, &c2, seq[t_len - 1], seq[t_len - 2]);
    let (cf1, cf2) = if !cf1 && cf2 {
        seq.reverse();
        core::mem::swap(&mut side1, &mut side2);
        core::mem::swap(&mut c1, &mut c2);
        (cf2, cf1)
    } else {
        (cf1, cf2)
    };

    // Interior edge colors e_2..e_{t-2} (e_i joins x_i and x_{i+1},
    // 1-based); e_1 and e_{t-1} belong to the sides and are normalized by
    // palette swaps.
    let mut interior_colors: Vec<(usize, Color)> = Vec::new();
    let even = t_len % 2 == 0;
    match (cf1, cf2) {
        (true, true) => {
            case = BuildCase::BothConflictFree;
            swap_to(&side1, &mut c1, seq[0], seq[1], RED);
            swap_to(&side2, &mut c2, seq[t_len - 1], seq[t_len - 2], RED);
            if even {
                for i in 2..=t_len - 2 {
                    interior_colors.push((i, if i % 2 == 1 { RED } else { BLUE }));
                }
            } else {
                for i in 2..=t_len - 3 {
                    interior_colors.push((i, if i % 2 == 1 { RED } else { BLUE }));
                }
                interior_colors.push((t_len - 2, BLUE));
            }
        }
        (true, false) => {
            case = BuildCase::OneConflictFree;
            swap_to(&side1, &mut c1, seq[0], seq[1], RED);
            swap_to(&side2, &mut c2, seq[t_len - 1], seq[t_len - 2], RED);
            if even {
                interior_colors.push((2, BLUE));
                for i in 3..=t_len - 3 {
                    interior_colors.push((i, if i % 2 == 1 { BLUE } else { RED }));
                }
                interior_colors.push((t_len - 2, RED));
            } else {
                for i in 2..=t_len - 3 {
                    interior_colors.push((i, if i % 2 == 1 { RED } else { BLUE }));
                }
                interior_colors.push((t_len - 2, RED));
            }
        }
        (false, false) => {
            case = BuildCase::NeitherConflictFree;
            if even {
                swap_to(&side1, &mut c1, seq[0], seq[1], BLUE);
                swap_to(&side2, &mut c2, seq[t_len - 1], seq[t_len - 2], BLUE);
                for i in 2..=t_len - 2 {
                    interior_colors.push((i, if i % 2 == 0 { BLUE } else { RED }));
                }
            } else {
                swap_to(&side1, &mut c1, seq[0], seq[1], RED);
                swap_to(&side2, &mut c2, seq[t_len - 1], seq[t_len - 2], BLUE);
                for i in 2..=t_len - 2 {
                    interior_colors.push((i, if i % 2 == 0 { RED } else { BLUE }));
                }
            }
        }
        (false, true) => unreachable!("normalized above"),
    }
    trace.push(BuildStep { component: component_id, t: t_len, case });

    let mut out = EdgeColoring::two(t);
    copy_colors(&mut out, t, &side1, &c1);
    copy_colors(&mut out, t, &side2, &c2);
    for (i, col) in interior_colors {
        out.set(t, seq[i - 1], seq[i], col).unwrap();
    }
    Ok(out)
}

/// Trivial side: take the other side's coloring and walk the path backwards
/// from its boundary edge, starting opposite to one of that edge's
/// conflict-free colors and alternating.
fn assemble_trivial(
    t: &Tree,
    seq: &[VertexId],
    side2: &Tree,
    c2: &EdgeColoring,
    _trace: &mut [BuildStep],
    _component: VertexId,
) -> Result<EdgeColoring, BuilderError> {
    let t_len = seq.len();
    let f = (seq[t_len - 2], seq[t_len - 1]);
    let cf = conflict_free_colors(side2, c2, f.0, f.1).expect("side coloring is total and valid");
    debug_assert!(!cf.is_empty());
    let mut col = other(cf[0]);
    let mut out = EdgeColoring::two(t);
    copy_colors(&mut out, t, side2, c2);
    for i in (1..=t_len - 2).rev() {
        out.set(t, seq[i - 1], seq[i], col).unwrap();
        col = other(col);
    }
    Ok(out)
}

/// True if the boundary edge `{attach, stub_leaf}` realizes its own
/// conflict-free color inside its side: its color appears exactly once
/// among the edges at the attach vertex.
fn stub_realizes_cf(side: &Tree, c: &EdgeColoring, attach: VertexId, stub_leaf: VertexId) -> bool {
    let stub_color = c.get(side, attach, stub_leaf).unwrap().expect("side coloring is total");
    let mut count = 0;
    for w in side.neighbors(attach) {
        if c.get(side, attach, w).unwrap() == Some(stub_color) {
            count += 1;
        }
    }
    count == 1
}

fn swap_to(side: &Tree, c: &mut EdgeColoring, u: VertexId, v: VertexId, want: Color) {
    if c.get(side, u, v).unwrap() != Some(want) {
        c.swap_red_blue();
    }
}

fn copy_colors(out: &mut EdgeColoring, t: &Tree, side: &Tree, c: &EdgeColoring) {
    for (u, v, col) in c.assignments(side) {
        out.set(t, u, v, col).unwrap();
    }
}

/// The component of `t - removed` containing `start`, as its own tree.
fn extract_component(t: &Tree, start: VertexId, removed: &[VertexId]) -> Tree {
    let gone = |v: VertexId| removed.contains(&v);
    let mut seen = alloc::vec![start];
    let mut stack = alloc::vec![start];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    while let Some(u) = stack.pop() {
        for w in t.neighbors(u) {
            if gone(w) {
                continue;
            }
            if !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
                edges.push((u, w));
            }
        }
    }
    Tree::from_edges(&edges).expect("component of a tree minus vertices is a tree")
}
