//! Edit distances. The combinatorial side works on labeled multigraphs whose
//! labels may carry a symbolic infinitesimal ([`DVal`]), so sequences that
//! only reach their cost "as δ → 0" are written down exactly. The universal
//! side ([`zigzag`]) works on concrete Reeb graphs and PL quotient maps.

mod search;
mod transcribe;
pub mod zigzag;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, ReebGraph};
use crate::value::{DVal, Value};

pub use search::{edit_search, EditSearchResult};
pub use transcribe::{quotient_map, transcribe};
pub use zigzag::{
    collapse_zigzag, pullback, universal_bounds, universal_bounds_with, zigzag_cost, Pullback, UniversalBounds, ZigzagCertificate, ZigzagError,
};

/// A labeled multigraph in an edit sequence.
pub type EditGraph = Graph<DVal>;

pub fn lift(g: &ReebGraph) -> EditGraph {
    g.map_values(|&v| DVal::exact(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeformationKind {
    Birth,
    Death,
    Relabel,
    K1,
    K2,
    K3,
    InsertEdge,
    DeleteEdge,
    InsertLoop,
    DeleteLoop,
    Slide,
}

impl DeformationKind {
    pub const ALL: [DeformationKind; 11] = [
        DeformationKind::Birth,
        DeformationKind::Death,
        DeformationKind::Relabel,
        DeformationKind::K1,
        DeformationKind::K2,
        DeformationKind::K3,
        DeformationKind::InsertEdge,
        DeformationKind::DeleteEdge,
        DeformationKind::InsertLoop,
        DeformationKind::DeleteLoop,
        DeformationKind::Slide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeformationKind::Birth => "birth",
            DeformationKind::Death => "death",
            DeformationKind::Relabel => "relabel",
            DeformationKind::K1 => "k1",
            DeformationKind::K2 => "k2",
            DeformationKind::K3 => "k3",
            DeformationKind::InsertEdge => "insert-edge",
            DeformationKind::DeleteEdge => "delete-edge",
            DeformationKind::InsertLoop => "insert-loop",
            DeformationKind::DeleteLoop => "delete-loop",
            DeformationKind::Slide => "slide",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        DeformationKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// One edit step. Vertex and edge ids refer to the graph the step acts on.
/// New vertices are appended; removed vertices and edges close their gaps
/// keeping the order of the rest. Fields named after a vertex's role
/// (`lower`, `upper`, `root`) describe the graph before the step, and
/// `*_to` fields give new labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deformation {
    /// Splits `edge` at a new degree-3 vertex labeled `root` and hangs a
    /// new leaf ending at `tip` from it.
    Birth { edge: usize, root: DVal, tip: DVal },
    /// Removes the leaf ending at `tip` and its root.
    Death { tip: usize },
    /// New labels for any vertices; no edge may flip.
    Relabel { values: Vec<(usize, DVal)> },
    /// Moves the leaf `leaf` hanging from `root` (which sits on a leaf of a
    /// vertex `s`) onto the leaf `onto` of `s`.
    K1 { root: usize, leaf: usize, onto: usize, root_to: DVal, tip_to: DVal },
    /// `lower` is a join below the split `upper`. After the move `upper`
    /// sits below `lower`; `down_edge` (a down edge of `lower`) moves to
    /// `upper` and `up_edge` (an up edge of `upper`) moves to `lower`.
    K2 { lower: usize, upper: usize, down_edge: usize, up_edge: usize, lower_to: DVal, upper_to: DVal },
    /// `lower` is a split below the join `upper`, joined by one edge.
    /// After the move `upper` is a join below the split `lower`.
    K3 { lower: usize, upper: usize, lower_to: DVal, upper_to: DVal },
    /// Hangs a new vertex labeled `value` from `vertex`.
    InsertEdge { vertex: usize, value: DVal },
    /// Removes an edge with a degree-1 end, and that end.
    DeleteEdge { edge: usize },
    /// Splits `edge` at `lo < hi` and doubles the segment between them.
    InsertLoop { edge: usize, lo: DVal, hi: DVal },
    /// Removes a doubled segment (given by one of its two edges).
    DeleteLoop { edge: usize },
    /// `vertex` (degree 3) carries `feature` and sits on a monotone path
    /// through its neighbor `past`. It leaves that path and reattaches on
    /// the edge `onto` of `past`, labeled `value`.
    Slide { vertex: usize, feature: usize, past: usize, onto: usize, value: DVal },
}

impl Deformation {
    pub fn kind(&self) -> DeformationKind {
        match self {
            Deformation::Birth { .. } => DeformationKind::Birth,
            Deformation::Death { .. } => DeformationKind::Death,
            Deformation::Relabel { .. } => DeformationKind::Relabel,
            Deformation::K1 { .. } => DeformationKind::K1,
            Deformation::K2 { .. } => DeformationKind::K2,
            Deformation::K3 { .. } => DeformationKind::K3,
            Deformation::InsertEdge { .. } => DeformationKind::InsertEdge,
            Deformation::DeleteEdge { .. } => DeformationKind::DeleteEdge,
            Deformation::InsertLoop { .. } => DeformationKind::InsertLoop,
            Deformation::DeleteLoop { .. } => DeformationKind::DeleteLoop,
            Deformation::Slide { .. } => DeformationKind::Slide,
        }
    }

    /// Labels the step introduces.
    pub fn labels(&self) -> Vec<DVal> {
        match self {
            Deformation::Birth { root, tip, .. } => alloc::vec![*root, *tip],
            Deformation::Relabel { values } => values.iter().map(|x| x.1).collect(),
            Deformation::K1 { root_to, tip_to, .. } => alloc::vec![*root_to, *tip_to],
            Deformation::K2 { lower_to, upper_to, .. } | Deformation::K3 { lower_to, upper_to, .. } => {
                alloc::vec![*lower_to, *upper_to]
            }
            Deformation::InsertEdge { value, .. } | Deformation::Slide { value, .. } => alloc::vec![*value],
            Deformation::InsertLoop { lo, hi, .. } => alloc::vec![*lo, *hi],
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepError {
    pub kind: DeformationKind,
    pub reason: &'static str,
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.name(), self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EditError {
    Step { index: usize, error: StepError },
    /// `d_E` needs equal component counts and first Betti numbers.
    Undefined { betti: (usize, usize), components: (usize, usize) },
    NotGeneric,
}

impl fmt::Display for EditError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditError::Step { index, error } => write!(f, "step {}: {}", index, error),
            EditError::Undefined { betti, components } => write!(
                f,
                "d_E undefined: the graphs have Betti numbers {} and {} and {} and {} components; \
                 elementary deformations preserve both (use the universal edit distance instead)",
                betti.0, betti.1, components.0, components.1
            ),
            EditError::NotGeneric => write!(f, "edit search needs generic graphs (distinct labels)"),
        }
    }
}

/// Result of [`apply`]: the new graph and where each old vertex went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub graph: EditGraph,
    pub vertex_map: Vec<Option<usize>>,
}

fn err(kind: DeformationKind, reason: &'static str) -> StepError {
    StepError { kind, reason }
}

/// Drops edges and vertices, keeping the order of the rest.
pub(crate) fn remove<V: Clone>(g: &Graph<V>, vertices: &[usize], edges: &[usize]) -> (Graph<V>, Vec<Option<usize>>) {
    let mut map = alloc::vec![None; g.values.len()];
    let mut values = Vec::new();
    for (v, x) in g.values.iter().enumerate() {
        if !vertices.contains(&v) {
            map[v] = Some(values.len());
            values.push(x.clone());
        }
    }
    let es = g
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !edges.contains(i))
        .map(|(_, &(a, b))| (map[a].expect("edge to a removed vertex"), map[b].expect("edge to a removed vertex")))
        .collect();
    (Graph { values, edges: es }, map)
}

fn other(g: &EditGraph, e: usize, v: usize) -> usize {
    let (a, b) = g.edges[e];
    if a == v {
        b
    } else {
        a
    }
}

fn oriented(g: &EditGraph, a: usize, b: usize) -> (usize, usize) {
    if g.values[a] < g.values[b] {
        (a, b)
    } else {
        (b, a)
    }
}

/// Labels distinct, every edge stored low to high.
fn check_state(g: &EditGraph, kind: DeformationKind) -> Result<(), StepError> {
    for &(a, b) in &g.edges {
        if g.values[a] >= g.values[b] {
            return Err(err(kind, "an edge would be flat or flip direction"));
        }
    }
    let mut vals = g.values.clone();
    vals.sort_unstable();
    if vals.windows(2).any(|w| w[0] == w[1]) {
        return Err(err(kind, "two vertices would share a label"));
    }
    Ok(())
}

/// Elder rule: an up-tip `x` is younger than `y` when it is lower.
fn younger(x: DVal, y: DVal, up: bool) -> bool {
    if up {
        x < y
    } else {
        x > y
    }
}

/// Highest (`up`) or lowest label in the component of `start` among vertices
/// strictly above (below) `level`.
fn extreme_beyond(g: &EditGraph, inc: &[Vec<usize>], start: usize, level: DVal, up: bool) -> DVal {
    let beyond = |v: usize| if up { g.values[v] > level } else { g.values[v] < level };
    let mut seen = alloc::vec![false; g.values.len()];
    let mut stack = alloc::vec![start];
    seen[start] = true;
    let mut best = g.values[start];
    while let Some(v) = stack.pop() {
        if younger(best, g.values[v], up) {
            best = g.values[v];
        }
        for &e in &inc[v] {
            let u = other(g, e, v);
            if !seen[u] && beyond(u) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    best
}

fn fresh(g: &EditGraph, v: DVal) -> bool {
    !g.values.contains(&v)
}

/// Applies one deformation.
pub fn apply(step: &Deformation, g: &EditGraph) -> Result<Applied, StepError> {
    let kind = step.kind();
    let n = g.values.len();
    let ident: Vec<Option<usize>> = (0..n).map(Some).collect();
    let inc = g.incidence();
    let vertex_ok = |v: usize| v < n;
    let edge_ok = |e: usize| e < g.edges.len();
    match step {
        Deformation::Birth { edge, root, tip } => {
            if !edge_ok(*edge) {
                return Err(err(kind, "no such edge"));
            }
            let (a, b) = g.edges[*edge];
            if !(g.values[a] < *root && *root < g.values[b]) {
                return Err(err(kind, "root must lie strictly inside the edge"));
            }
            let up = *tip > *root;
            let far = extreme_beyond(g, &inc, if up { b } else { a }, *root, up);
            if !younger(*tip, far, up) {
                return Err(err(kind, "the new leaf must be younger than the branch it joins"));
            }
            if root == tip || !fresh(g, *root) || !fresh(g, *tip) {
                return Err(err(kind, "new labels must be distinct from existing ones"));
            }
            let mut h = g.clone();
            let r = h.add_vertex(*root);
            let t = h.add_vertex(*tip);
            h.edges[*edge] = (a, r);
            h.edges.push((r, b));
            h.add_edge(r, t);
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::Death { tip } => {
            let t = *tip;
            if !vertex_ok(t) || inc[t].len() != 1 {
                return Err(err(kind, "tip must have degree 1"));
            }
            let l = inc[t][0];
            let r = other(g, l, t);
            if inc[r].len() != 3 {
                return Err(err(kind, "root must have degree 3"));
            }
            let rest: Vec<usize> = inc[r].iter().copied().filter(|&e| e != l).collect();
            let (down, up) = match (g.edges[rest[0]].1 == r, g.edges[rest[1]].1 == r) {
                (true, false) => (rest[0], rest[1]),
                (false, true) => (rest[1], rest[0]),
                _ => return Err(err(kind, "root must become regular once the leaf is gone")),
            };
            let rises = g.values[t] > g.values[r];
            let beside = if rises { g.edges[up].1 } else { g.edges[down].0 };
            if !younger(g.values[t], extreme_beyond(g, &inc, beside, g.values[r], rises), rises) {
                return Err(err(kind, "only a leaf younger than the branch beside it can die"));
            }
            let mut h = g.clone();
            h.edges[down] = (g.edges[down].0, g.edges[up].1);
            let (h, map) = remove(&h, &[r, t], &[l, up]);
            Ok(Applied { graph: h, vertex_map: map })
        }
        Deformation::Relabel { values } => {
            let mut h = g.clone();
            let mut seen = Vec::new();
            for &(v, x) in values {
                if !vertex_ok(v) || seen.contains(&v) {
                    return Err(err(kind, "bad or repeated vertex"));
                }
                seen.push(v);
                h.values[v] = x;
            }
            check_state(&h, kind)?;
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::K3 { lower, upper, lower_to, upper_to } => {
            let (p, q) = (*lower, *upper);
            if !vertex_ok(p) || !vertex_ok(q) || p == q {
                return Err(err(kind, "bad vertices"));
            }
            let conn: Vec<usize> = inc[p].iter().copied().filter(|&e| g.edges[e] == (p, q)).collect();
            let ud = g.up_down();
            if conn.len() != 1 || ud[p] != (1, 2) || ud[q] != (2, 1) {
                return Err(err(kind, "needs a split joined by one edge to a join above it"));
            }
            let k = conn[0];
            let a = inc[p].iter().copied().find(|&e| g.edges[e].1 == p).unwrap();
            let d = inc[q].iter().copied().find(|&e| g.edges[e].0 == q).unwrap();
            let mut h = g.clone();
            h.values[p] = *lower_to;
            h.values[q] = *upper_to;
            h.edges[a] = (g.edges[a].0, q);
            h.edges[d] = (p, g.edges[d].1);
            h.edges[k] = (q, p);
            check_state(&h, kind)?;
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::K2 { lower, upper, down_edge, up_edge, lower_to, upper_to } => {
            let (u, w) = (*lower, *upper);
            if !vertex_ok(u) || !vertex_ok(w) || u == w || !edge_ok(*down_edge) || !edge_ok(*up_edge) {
                return Err(err(kind, "bad ids"));
            }
            let conn: Vec<usize> = inc[u].iter().copied().filter(|&e| g.edges[e] == (u, w)).collect();
            let ud = g.up_down();
            if conn.len() != 1 || ud[u] != (2, 1) || ud[w] != (1, 2) {
                return Err(err(kind, "needs a join joined by one edge to a split above it"));
            }
            let k = conn[0];
            if g.edges[*down_edge].1 != u || *down_edge == k || g.edges[*up_edge].0 != w || *up_edge == k {
                return Err(err(kind, "moved edges must be a down edge of the join and an up edge of the split"));
            }
            let mut h = g.clone();
            h.values[u] = *lower_to;
            h.values[w] = *upper_to;
            h.edges[*down_edge] = (g.edges[*down_edge].0, w);
            h.edges[*up_edge] = (u, g.edges[*up_edge].1);
            h.edges[k] = (w, u);
            check_state(&h, kind)?;
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::K1 { root, leaf, onto, root_to, tip_to } => {
            let r = *root;
            if !vertex_ok(r) || !edge_ok(*leaf) || !edge_ok(*onto) || inc[r].len() != 3 || !inc[r].contains(leaf) {
                return Err(err(kind, "root must be a degree-3 end of the leaf"));
            }
            let t = other(g, *leaf, r);
            let up = g.values[t] > g.values[r];
            let side = |e: usize, v: usize| (g.values[other(g, e, v)] > g.values[v]) == up;
            let tip = |x: usize| inc[x].len() == 1;
            if !tip(t) {
                return Err(err(kind, "moved edge must be a leaf"));
            }
            let rest: Vec<usize> = inc[r].iter().copied().filter(|&e| e != *leaf).collect();
            let (e1, c) = match (side(rest[0], r), side(rest[1], r)) {
                (true, false) => (rest[0], rest[1]),
                (false, true) => (rest[1], rest[0]),
                _ => return Err(err(kind, "root must bisect a leaf on the same side")),
            };
            let (t1, s) = (other(g, e1, r), other(g, c, r));
            if !tip(t1) || *onto == c || !inc[s].contains(onto) || !side(*onto, s) {
                return Err(err(kind, "target must be a leaf on the same side sharing the root"));
            }
            let t2 = other(g, *onto, s);
            if !tip(t2) || t2 == r {
                return Err(err(kind, "target must be a leaf"));
            }
            let mut h = g.clone();
            h.values[r] = *root_to;
            h.values[t] = *tip_to;
            h.edges[e1] = oriented(&h, s, t1);
            h.edges[*onto] = oriented(&h, r, t2);
            h.edges[c] = oriented(&h, s, r);
            h.edges[*leaf] = oriented(&h, r, t);
            check_state(&h, kind)?;
            if (h.values[t] > h.values[r]) != up || (h.values[t2] > h.values[r]) != up || (h.values[r] > h.values[s]) != up {
                return Err(err(kind, "labels must keep the leaves on their side"));
            }
            // The moved leaf hangs off e1 and e2: its tip is the younger one under the elder rule.
            if !younger(g.values[t], g.values[t1], up) || !younger(h.values[t], h.values[t2], up) {
                return Err(err(kind, "moved leaf must be shorter than the leaves it bisects"));
            }
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::InsertEdge { vertex, value } => {
            if !vertex_ok(*vertex) || !fresh(g, *value) {
                return Err(err(kind, "bad vertex or label"));
            }
            let mut h = g.clone();
            let w = h.add_vertex(*value);
            h.add_edge(*vertex, w);
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::DeleteEdge { edge } => {
            if !edge_ok(*edge) {
                return Err(err(kind, "no such edge"));
            }
            let (a, b) = g.edges[*edge];
            let t = match (inc[a].len() == 1, inc[b].len() == 1) {
                (true, false) => a,
                (false, true) => b,
                _ => return Err(err(kind, "exactly one end must have degree 1")),
            };
            let (h, map) = remove(g, &[t], &[*edge]);
            Ok(Applied { graph: h, vertex_map: map })
        }
        Deformation::InsertLoop { edge, lo, hi } => {
            if !edge_ok(*edge) {
                return Err(err(kind, "no such edge"));
            }
            let (a, b) = g.edges[*edge];
            if !(g.values[a] < *lo && lo < hi && *hi < g.values[b]) || !fresh(g, *lo) || !fresh(g, *hi) {
                return Err(err(kind, "loop must sit strictly inside the edge"));
            }
            let mut h = g.clone();
            let x = h.add_vertex(*lo);
            let y = h.add_vertex(*hi);
            h.edges[*edge] = (a, x);
            h.edges.push((x, y));
            h.edges.push((x, y));
            h.edges.push((y, b));
            Ok(Applied { graph: h, vertex_map: ident })
        }
        Deformation::DeleteLoop { edge } => {
            if !edge_ok(*edge) {
                return Err(err(kind, "no such edge"));
            }
            let (x, y) = g.edges[*edge];
            let twins: Vec<usize> = inc[x].iter().copied().filter(|&e| g.edges[e] == (x, y)).collect();
            if twins.len() != 2 || inc[x].len() != 3 || inc[y].len() != 3 {
                return Err(err(kind, "needs a doubled segment between two degree-3 vertices"));
            }
            let below = inc[x].iter().copied().find(|e| !twins.contains(e)).unwrap();
            let above = inc[y].iter().copied().find(|e| !twins.contains(e)).unwrap();
            if g.edges[below].1 != x || g.edges[above].0 != y {
                return Err(err(kind, "segment must continue below and above"));
            }
            let mut h = g.clone();
            h.edges[below] = (g.edges[below].0, g.edges[above].1);
            let (h, map) = remove(&h, &[x, y], &[twins[0], twins[1], above]);
            Ok(Applied { graph: h, vertex_map: map })
        }
        Deformation::Slide { vertex, feature, past, onto, value } => {
            let (r, w) = (*vertex, *past);
            if !vertex_ok(r) || !vertex_ok(w) || !edge_ok(*onto) || inc[r].len() != 3 || !inc[r].contains(feature) {
                return Err(err(kind, "vertex must have degree 3 and carry the feature"));
            }
            let cw: Vec<usize> = inc[r].iter().copied().filter(|&e| e != *feature && other(g, e, r) == w).collect();
            if cw.len() != 1 {
                return Err(err(kind, "vertex must have exactly one edge to the passed vertex"));
            }
            let cw = cw[0];
            let cu = inc[r].iter().copied().find(|&e| e != *feature && e != cw).unwrap();
            let u = other(g, cu, r);
            let x = other(g, *feature, r);
            let lr = g.values[r];
            if u == w || (g.values[u] > lr) == (g.values[w] > lr) {
                return Err(err(kind, "vertex must sit on a monotone path through the passed vertex"));
            }
            if *onto == cw || !inc[w].contains(onto) || inc[r].contains(onto) {
                return Err(err(kind, "target edge must leave the passed vertex"));
            }
            let z = other(g, *onto, w);
            let (lw, lz) = (g.values[w], g.values[z]);
            if !((lw < *value && *value < lz) || (lz < *value && *value < lw)) {
                return Err(err(kind, "new label must lie inside the target edge"));
            }
            if (g.values[x] > lr) != (g.values[x] > *value) {
                return Err(err(kind, "feature must stay on its side"));
            }
            let mut h = g.clone();
            h.values[r] = *value;
            h.edges[cu] = oriented(&h, u, w);
            h.edges[cw] = oriented(&h, w, r);
            h.edges[*onto] = oriented(&h, r, z);
            h.edges[*feature] = oriented(&h, r, x);
            check_state(&h, kind)?;
            Ok(Applied { graph: h, vertex_map: ident })
        }
    }
}

/// Per-step cost. Births and deaths pay half the leaf height, relabels and
/// K-moves the largest label change. The universal kinds have no cost of
/// their own in this model; they are charged like their elementary
/// counterparts (half the inserted or removed feature, a slide like a
/// relabel of the moved vertex).
pub fn step_cost(step: &Deformation, before: &EditGraph, after: &Applied) -> DVal {
    let d = |a: DVal, b: DVal| (a - b).abs();
    let moved = |vs: &[usize]| {
        vs.iter()
            .map(|&v| d(before.values[v], after.graph.values[after.vertex_map[v].unwrap()]))
            .max()
            .unwrap_or_default()
    };
    match step {
        Deformation::Birth { root, tip, .. } => d(*root, *tip).half(),
        Deformation::Death { tip } => {
            let e = before.incidence()[*tip][0];
            let (a, b) = before.edges[e];
            d(before.values[a], before.values[b]).half()
        }
        Deformation::Relabel { values } => {
            values.iter().map(|&(v, x)| d(before.values[v], x)).max().unwrap_or_default()
        }
        Deformation::K1 { root, leaf, .. } => {
            let t = other(before, *leaf, *root);
            moved(&[*root, t])
        }
        Deformation::K2 { lower, upper, .. } | Deformation::K3 { lower, upper, .. } => moved(&[*lower, *upper]),
        Deformation::InsertEdge { vertex, value } => d(before.values[*vertex], *value).half(),
        Deformation::DeleteEdge { edge } | Deformation::DeleteLoop { edge } => {
            let (a, b) = before.edges[*edge];
            d(before.values[a], before.values[b]).half()
        }
        Deformation::InsertLoop { lo, hi, .. } => d(*lo, *hi).half(),
        Deformation::Slide { vertex, .. } => moved(&[*vertex]),
    }
}

/// A start graph and the steps applied to it in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EditSequence {
    pub start: EditGraph,
    pub steps: Vec<Deformation>,
}

impl EditSequence {
    pub fn new(start: EditGraph) -> Self {
        EditSequence { start, steps: Vec::new() }
    }

    /// Every intermediate result, starting with `start`.
    pub fn replay(&self) -> Result<Vec<Applied>, EditError> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let n = self.start.values.len();
        out.push(Applied { graph: self.start.clone(), vertex_map: (0..n).map(Some).collect() });
        for (index, s) in self.steps.iter().enumerate() {
            let next = apply(s, &out.last().unwrap().graph).map_err(|error| EditError::Step { index, error })?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<EditGraph, EditError> {
        Ok(self.replay()?.pop().unwrap().graph)
    }

    /// `c(S) = Σ c(T_i)`.
    pub fn cost(&self) -> Result<DVal, EditError> {
        let states = self.replay()?;
        let mut total = DVal::default();
        for (i, s) in self.steps.iter().enumerate() {
            total = total + step_cost(s, &states[i].graph, &states[i + 1]);
        }
        Ok(total)
    }

    /// The cost model that follows each vertex on its own: the largest
    /// range of labels any single vertex takes over the sequence. Chains of
    /// small insertions defeat it, which is why zigzag costs exist.
    pub fn vertex_tracking_cost(&self) -> Result<DVal, EditError> {
        let states = self.replay()?;
        let mut range: BTreeMap<usize, (DVal, DVal)> = BTreeMap::new();
        let mut ids: Vec<usize> = (0..self.start.values.len()).collect();
        let mut next_id = ids.len();
        let note = |ids: &[usize], g: &EditGraph, range: &mut BTreeMap<usize, (DVal, DVal)>| {
            for (v, &id) in ids.iter().enumerate() {
                let x = g.values[v];
                let e = range.entry(id).or_insert((x, x));
                e.0 = e.0.min(x);
                e.1 = e.1.max(x);
            }
        };
        note(&ids, &states[0].graph, &mut range);
        for st in &states[1..] {
            let mut new_ids = alloc::vec![usize::MAX; st.graph.values.len()];
            for (old, m) in st.vertex_map.iter().enumerate() {
                if let Some(v) = m {
                    new_ids[*v] = ids[old];
                }
            }
            for id in new_ids.iter_mut().filter(|x| **x == usize::MAX) {
                *id = next_id;
                next_id += 1;
            }
            ids = new_ids;
            note(&ids, &st.graph, &mut range);
        }
        Ok(range.values().map(|&(lo, hi)| hi - lo).max().unwrap_or_default())
    }

    /// A concrete `δ` small enough that substituting it keeps every label
    /// comparison in the sequence as it is symbolically.
    pub fn concrete_delta(&self) -> Value {
        let mut labels: Vec<DVal> = self.start.values.clone();
        for s in &self.steps {
            labels.extend(s.labels());
        }
        let mut stds: Vec<Value> = labels.iter().map(|x| x.std).collect();
        stds.sort_unstable();
        stds.dedup();
        let gap = stds.windows(2).map(|w| w[1] - w[0]).min().unwrap_or(Value::from_integer(1));
        let big = labels.iter().map(|x| x.inf.abs()).max().unwrap_or_default();
        gap / (Value::from_integer(1024) * (Value::from_integer(1) + big))
    }
}

/// Substitutes a concrete `δ` into a labeled graph.
pub fn at_delta(g: &EditGraph, delta: Value) -> ReebGraph {
    g.map_values(|x| x.at(delta))
}

use num_traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::is_isomorphic;
    use crate::value::{frac, int};

    fn same(a: &EditGraph, b: &EditGraph) -> bool {
        is_isomorphic(&a.canonicalize(), &b.canonicalize()).is_some()
    }

    fn dv(std: Value, inf: i128) -> DVal {
        DVal::new(std, int(inf))
    }

    fn run(g: &EditGraph, steps: &[Deformation]) -> EditGraph {
        let mut s = EditSequence::new(g.clone());
        s.steps = steps.to_vec();
        s.end().unwrap()
    }

    #[test]
    fn birth_adds_a_root_and_a_tip() {
        let g = lift(&fixtures::torus_graph());
        // a tip below the global minimum would be the elder branch
        assert!(apply(&Deformation::Birth { edge: 0, root: dv(frac(3, 2), 0), tip: dv(int(0), 0) }, &g).is_err());
        let h = apply(&Deformation::Birth { edge: 0, root: dv(frac(3, 2), 0), tip: dv(frac(5, 4), 0) }, &g).unwrap().graph;
        assert_eq!(h.values.len(), g.values.len() + 2);
        // the split edge counts twice
        assert_eq!(h.edges.len(), g.edges.len() + 2);
        assert_eq!(h.up_down()[4], (2, 1));
        assert_eq!(h.degrees()[5], 1);
    }

    #[test]
    fn death_undoes_birth() {
        let g = lift(&fixtures::example1().0);
        for (e, root, tip) in [(1, frac(7, 2), frac(13, 2)), (6, frac(9, 2), frac(11, 4)), (7, frac(15, 2), frac(3, 2))] {
            let step = Deformation::Birth { edge: e, root: DVal::exact(root), tip: DVal::exact(tip) };
            let h = apply(&step, &g).unwrap().graph;
            let back = apply(&Deformation::Death { tip: h.values.len() - 1 }, &h).unwrap().graph;
            assert!(same(&back, &g));
            assert_eq!(back, g);
        }
    }

    #[test]
    fn k1_moves_only_the_hanging_leaf() {
        // join 2 at 5 with down-leaves to 0 (at 1) and 1 (at 2); root 4 at 3
        // bisects the first and carries the short leaf to 5 (at 5/2)
        let vals = [int(1), int(2), int(5), int(6), int(3), frac(5, 2)];
        let g = lift(&Graph::from_parts(vals.to_vec(), &[(0, 4), (4, 2), (5, 4), (1, 2), (2, 3)]).unwrap());
        let k1 = |leaf, tip_to| Deformation::K1 { root: 4, leaf, onto: 3, root_to: dv(int(3), 0), tip_to: dv(tip_to, 0) };
        let h = apply(&k1(2, frac(5, 2)), &g).unwrap().graph;
        assert_eq!(h.degrees()[0], 1);
        assert!(h.edges.contains(&(0, 2)) && h.edges.contains(&(1, 4)));
        // moving the remainder of e1 rewires the merge order for free
        assert!(apply(&k1(0, int(1)), &g).is_err());
        // the moved tip has to stay younger than the tip of e2 too
        assert!(apply(&k1(2, frac(3, 2)), &g).is_err());
    }

    #[test]
    fn death_keeps_the_elder_branch() {
        // root 2 of the up-leaf has the trunk to 4 beside it, so the tip at 3 may die
        let g = lift(&fixtures::up_leaf_graph());
        assert!(apply(&Deformation::Death { tip: 2 }, &g).is_ok());
        // the trunk end is the elder branch: removing it would move the top of the diagram
        assert!(apply(&Deformation::Death { tip: 3 }, &g).is_err());
    }

    #[test]
    fn inverse_pairs() {
        let g = lift(&fixtures::example1().0);
        // insert/delete edge
        let h = run(&g, &[Deformation::InsertEdge { vertex: 4, value: dv(frac(11, 2), 0) }]);
        assert!(same(&run(&h, &[Deformation::DeleteEdge { edge: 8 }]), &g));
        // insert/delete loop
        let h = run(&g, &[Deformation::InsertLoop { edge: 7, lo: dv(frac(13, 2), 0), hi: dv(frac(15, 2), 0) }]);
        assert_eq!(h.betti1(), g.betti1() + 1);
        assert!(same(&run(&h, &[Deformation::DeleteLoop { edge: 8 }]), &g));
        // K3 then its K2 inverse
        let k3 = Deformation::K3 { lower: 2, upper: 3, lower_to: dv(frac(7, 2), 1), upper_to: dv(frac(7, 2), -1) };
        let h = run(&g, &[k3]);
        let k2 = Deformation::K2 {
            lower: 3,
            upper: 2,
            down_edge: 0,
            up_edge: 6,
            lower_to: dv(int(4), 0),
            upper_to: dv(int(3), 0),
        };
        assert!(same(&run(&h, &[k2]), &g));
        // relabel there and back
        let r = Deformation::Relabel { values: alloc::vec![(6, dv(int(9), 0))] };
        let h = run(&g, &[r]);
        assert_eq!(run(&h, &[Deformation::Relabel { values: alloc::vec![(6, dv(int(7), 0))] }]), g);
    }

    #[test]
    fn k2_gives_the_k3_pattern() {
        // join u (2,1) below split w (1,2), joined by one edge
        let g = lift(&crate::Graph::from_parts(
            alloc::vec![int(0), int(1), int(2), int(3), int(4), int(5)],
            &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)],
        )
        .unwrap());
        let h = run(
            &g,
            &[Deformation::K2 { lower: 2, upper: 3, down_edge: 0, up_edge: 3, lower_to: dv(int(3), 0), upper_to: dv(int(2), 0) }],
        );
        let ud = h.up_down();
        assert_eq!((ud[3], ud[2]), ((1, 2), (2, 1)));
        assert!(h.edges.contains(&(3, 2)));
        assert_eq!(h.edges[0], (0, 3));
        assert_eq!(h.edges[3], (2, 4));
    }

    #[test]
    fn relabel_rejects_flips_and_collisions() {
        let g = lift(&fixtures::example1().0);
        let flip = Deformation::Relabel { values: alloc::vec![(3, dv(int(7), 0))] };
        assert!(apply(&flip, &g).is_err());
        let clash = Deformation::Relabel { values: alloc::vec![(1, dv(int(3), 0))] };
        assert!(apply(&clash, &g).is_err());
        // non-adjacent vertices may swap order
        let swap = Deformation::Relabel { values: alloc::vec![(1, dv(frac(7, 2), 0))] };
        assert!(apply(&swap, &g).is_ok());
    }

    #[test]
    fn example1_sequence_costs() {
        let (_, g) = fixtures::example1();
        let s1 = fixtures::example1_s1();
        assert!(same(&s1.end().unwrap(), &lift(&g)));
        assert_eq!(s1.cost().unwrap(), dv(int(1), 1));
        let s2 = fixtures::example1_s2();
        assert!(same(&s2.end().unwrap(), &lift(&g)));
        assert_eq!(s2.cost().unwrap(), dv(int(1), 2));
    }

    #[test]
    fn empty_sequence_is_free() {
        let s = EditSequence::new(lift(&fixtures::fig4()));
        assert_eq!(s.cost().unwrap(), DVal::default());
        assert_eq!(s.vertex_tracking_cost().unwrap(), DVal::default());
    }

    #[test]
    fn example2_and_4_sequences() {
        let (_, g2) = fixtures::example2();
        let s = fixtures::example2_sequence();
        assert!(same(&s.end().unwrap(), &lift(&g2)));
        assert_eq!(s.cost().unwrap(), dv(frac(2, 5), 0));
        let (_, g4) = fixtures::example4();
        let s = fixtures::example4_sequence();
        assert!(same(&s.end().unwrap(), &lift(&g4)));
    }

    #[test]
    fn remark_bug_fools_vertex_tracking() {
        let s = fixtures::remark_bug(int(2), 4);
        assert_eq!(s.vertex_tracking_cost().unwrap(), dv(frac(1, 2), -1));
        let end = s.end().unwrap().canonicalize();
        assert_eq!(end.values.last(), Some(&dv(int(5), 0)));
        assert!(end.values.contains(&dv(int(4), 0)));
    }

    #[test]
    fn bad_steps_are_reported() {
        let g = lift(&fixtures::example1().0);
        let mut s = EditSequence::new(g);
        s.steps.push(Deformation::Death { tip: 2 });
        match s.cost() {
            Err(EditError::Step { index: 0, error }) => assert_eq!(error.kind, DeformationKind::Death),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn search_examples() {
        let (f, g) = fixtures::example1();
        let r = edit_search(&f, &g, 200_000).unwrap();
        assert!(r.complete);
        assert_eq!(r.bracket.hi, crate::Ext::Finite(int(1)));
        let seq = r.sequence.unwrap();
        assert!(same(&seq.end().unwrap(), &lift(&g.canonicalize())));
        assert_eq!(seq.cost().unwrap().std, int(1));

        let (f, g) = fixtures::example2();
        let r = edit_search(&f, &g, 200_000).unwrap();
        assert_eq!(r.bracket.hi, crate::Ext::Finite(frac(2, 5)));

        let f = fixtures::fig4();
        let r = edit_search(&f, &f, 1000).unwrap();
        assert!(r.exact);
        assert_eq!(r.bracket, crate::Bracket::exact(int(0)));

        let (f, g) = fixtures::example3();
        assert!(matches!(edit_search(&f, &g, 1000), Err(EditError::Undefined { .. })));
    }
}
