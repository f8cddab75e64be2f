//! Interlevel components, the path-height metric and leveled graphs.
//!
//! A leveled graph records, for a sorted grid of levels, the components of
//! `f⁻¹[l-ε, l+ε]` at each level and at each slab midpoint, together with
//! the attachments between them. With `ε = 0` this is a subdivision of the
//! graph; with `ε > 0` it encodes the smoothing `U_ε`, because the
//! components of `U_ε(R)` over `[a, b]` are those of `R` over
//! `[a-ε, b+ε]`.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Point, ReebGraph};
use crate::uf::UnionFind;
use crate::value::{half, Value};

/// A cell of a graph: a vertex or a whole edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Vertex(usize),
    Edge(usize),
}

impl From<Point> for Atom {
    fn from(p: Point) -> Atom {
        match p {
            Point::Vertex(v) => Atom::Vertex(v),
            Point::Edge(e, _) => Atom::Edge(e),
        }
    }
}

/// Components of `f⁻¹[lo, hi]`, labelled per atom meeting the window.
#[derive(Clone, Debug)]
pub struct WindowComps {
    pub vertex: Vec<Option<u32>>,
    pub edge: Vec<Option<u32>>,
    pub count: usize,
}

impl WindowComps {
    pub fn of(&self, a: Atom) -> Option<u32> {
        match a {
            Atom::Vertex(v) => self.vertex[v],
            Atom::Edge(e) => self.edge[e],
        }
    }
}

pub fn window_components(g: &ReebGraph, lo: Value, hi: Value) -> WindowComps {
    let n = g.values.len();
    let m = g.edges.len();
    let mut uf = UnionFind::new(n + m);
    let mut keep = alloc::vec![false; n + m];
    for v in 0..n {
        keep[v] = lo <= g.values[v] && g.values[v] <= hi;
    }
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if g.values[a] <= hi && g.values[b] >= lo {
            keep[n + e] = true;
            if keep[a] {
                uf.union(n + e, a);
            }
            if keep[b] {
                uf.union(n + e, b);
            }
        }
    }
    let (lab, count) = uf.labels(&keep);
    WindowComps {
        vertex: lab[..n].iter().map(|x| x.map(|y| y as u32)).collect(),
        edge: lab[n..].iter().map(|x| x.map(|y| y as u32)).collect(),
        count,
    }
}

/// `d_f(p, q)`: the least `max f - min f` over paths from `p` to `q`, or
/// `None` when they lie in different components.
pub fn path_height_distance(g: &ReebGraph, p: Point, q: Point) -> Option<Value> {
    let (fp, fq) = (g.value_of(p), g.value_of(q));
    let (lo0, hi0) = (fp.min(fq), fp.max(fq));
    let crit = g.critical_values();
    let mut los: Vec<Value> = crit.iter().copied().filter(|&c| c < lo0).collect();
    los.push(lo0);
    los.reverse();
    let mut his: Vec<Value> = crit.iter().copied().filter(|&c| c > hi0).collect();
    his.insert(0, hi0);
    let mut best: Option<Value> = None;
    for &lo in &los {
        if best.is_some_and(|b| hi0 - lo >= b) {
            break;
        }
        for &hi in &his {
            if best.is_some_and(|b| hi - lo >= b) {
                break;
            }
            let w = window_components(g, lo, hi);
            if w.of(p.into()) == w.of(q.into()) {
                best = Some(hi - lo);
                break;
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Level(usize),
    Slab(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strand {
    pub lower: usize,
    pub upper: usize,
    pub rep: Atom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledGraph {
    pub levels: Vec<Value>,
    pub eps: Value,
    /// Representative atom of every node, per level.
    pub nodes: Vec<Vec<Atom>>,
    /// Strands per slab `(levels[i], levels[i+1])`.
    pub strands: Vec<Vec<Strand>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelError {
    UnsortedGrid,
    MissingLevel(Value),
    NegativeEps,
}

impl fmt::Display for LevelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelError::UnsortedGrid => f.write_str("grid must be strictly increasing"),
            LevelError::MissingLevel(v) => {
                write!(f, "grid misses the critical level {}", crate::value::format_value(*v))
            }
            LevelError::NegativeEps => f.write_str("thickness must be non-negative"),
        }
    }
}

/// Sorted, deduplicated union of value lists.
pub fn merge_grid<I: IntoIterator<Item = Value>>(it: I) -> Vec<Value> {
    let mut v: Vec<Value> = it.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

impl LeveledGraph {
    /// Leveled `U_ε(g)` on `levels`. The grid must hold every `c ± ε` for
    /// critical `c` that falls inside its range; the part of the graph
    /// outside the grid range is not represented.
    pub fn interlevel(g: &ReebGraph, eps: Value, levels: &[Value]) -> Result<Self, LevelError> {
        if eps < Value::default() {
            return Err(LevelError::NegativeEps);
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LevelError::UnsortedGrid);
        }
        if let (Some(&first), Some(&last)) = (levels.first(), levels.last()) {
            for c in g.critical_values() {
                for x in [c - eps, c + eps] {
                    if first <= x && x <= last && levels.binary_search(&x).is_err() {
                        return Err(LevelError::MissingLevel(x));
                    }
                }
            }
        }
        let mut nodes = Vec::with_capacity(levels.len());
        for &l in levels {
            let w = window_components(g, l - eps, l + eps);
            nodes.push(reps(g, &w));
        }
        let mut strands = Vec::new();
        for i in 0..levels.len().saturating_sub(1) {
            let (a, b) = (levels[i], levels[i + 1]);
            let m = half(a + b);
            let w = window_components(g, m - eps, m + eps);
            let sreps = reps(g, &w);
            let low = window_components(g, a - eps, m + eps);
            let high = window_components(g, m - eps, b + eps);
            let lower_of = lookup(&low, &nodes[i]);
            let upper_of = lookup(&high, &nodes[i + 1]);
            let slab = sreps
                .into_iter()
                .map(|rep| Strand {
                    lower: lower_of[low.of(rep).unwrap() as usize],
                    upper: upper_of[high.of(rep).unwrap() as usize],
                    rep,
                })
                .collect();
            strands.push(slab);
        }
        Ok(LeveledGraph { levels: levels.to_vec(), eps, nodes, strands })
    }

    /// Plain subdivision; the grid must contain every critical value.
    pub fn subdivide(g: &ReebGraph, grid: &[Value]) -> Result<Self, LevelError> {
        for c in g.critical_values() {
            if grid.binary_search(&c).is_err() {
                return Err(LevelError::MissingLevel(c));
            }
        }
        Self::interlevel(g, Value::default(), grid)
    }

    pub fn height(&self, s: Slot) -> Value {
        match s {
            Slot::Level(i) => self.levels[i],
            Slot::Slab(i) => half(self.levels[i] + self.levels[i + 1]),
        }
    }

    pub fn slot_len(&self, s: Slot) -> usize {
        match s {
            Slot::Level(i) => self.nodes[i].len(),
            Slot::Slab(i) => self.strands[i].len(),
        }
    }

    pub fn rep(&self, s: Slot, k: usize) -> Atom {
        match s {
            Slot::Level(i) => self.nodes[i][k],
            Slot::Slab(i) => self.strands[i][k].rep,
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        let n = self.levels.len();
        (0..2 * n).filter(move |&k| k % 2 == 0 || k / 2 + 1 < n).map(|k| {
            if k % 2 == 0 {
                Slot::Level(k / 2)
            } else {
                Slot::Slab(k / 2)
            }
        })
    }

    pub fn element_count(&self) -> usize {
        self.nodes.iter().map(Vec::len).sum::<usize>() + self.strands.iter().map(Vec::len).sum::<usize>()
    }

    /// Strand counts per slab.
    pub fn strand_counts(&self) -> Vec<usize> {
        self.strands.iter().map(Vec::len).collect()
    }

    /// The encoded graph (nodes at level values, strands as edges),
    /// canonicalized.
    pub fn to_reeb(&self) -> ReebGraph {
        let mut base = Vec::with_capacity(self.levels.len());
        let mut values = Vec::new();
        for (i, ns) in self.nodes.iter().enumerate() {
            base.push(values.len());
            values.extend(core::iter::repeat_n(self.levels[i], ns.len()));
        }
        let mut g = ReebGraph { values, edges: Vec::new() };
        for (i, ss) in self.strands.iter().enumerate() {
            for s in ss {
                g.edges.push((base[i] + s.lower, base[i + 1] + s.upper));
            }
        }
        g.canonicalize()
    }
}

fn reps(g: &ReebGraph, w: &WindowComps) -> Vec<Atom> {
    let mut out = alloc::vec![None; w.count];
    for v in 0..g.values.len() {
        if let Some(c) = w.vertex[v] {
            out[c as usize].get_or_insert(Atom::Vertex(v));
        }
    }
    for e in 0..g.edges.len() {
        if let Some(c) = w.edge[e] {
            out[c as usize].get_or_insert(Atom::Edge(e));
        }
    }
    out.into_iter().map(|x| x.unwrap()).collect()
}

fn lookup(w: &WindowComps, nodes: &[Atom]) -> Vec<usize> {
    let mut t = alloc::vec![usize::MAX; w.count];
    for (k, &a) in nodes.iter().enumerate() {
        t[w.of(a).unwrap() as usize] = k;
    }
    t
}

/// A level-preserving map between two leveled graphs on the same grid,
/// given by the image of every node and strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledMap {
    pub nodes: Vec<Vec<usize>>,
    pub strands: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    GridMismatch,
    Shape,
    OutOfRange(Slot, usize),
    Discontinuous(usize, usize),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::GridMismatch => f.write_str("source and target grids differ"),
            MapError::Shape => f.write_str("map does not cover the source"),
            MapError::OutOfRange(s, k) => write!(f, "image of {:?}#{} is not a target element", s, k),
            MapError::Discontinuous(i, k) => {
                write!(f, "strand {} of slab {} loses an attachment", k, i)
            }
        }
    }
}

impl LeveledMap {
    pub fn image(&self, s: Slot, k: usize) -> usize {
        match s {
            Slot::Level(i) => self.nodes[i][k],
            Slot::Slab(i) => self.strands[i][k],
        }
    }

    pub fn identity(g: &LeveledGraph) -> Self {
        LeveledMap {
            nodes: g.nodes.iter().map(|n| (0..n.len()).collect()).collect(),
            strands: g.strands.iter().map(|s| (0..s.len()).collect()).collect(),
        }
    }

    /// Function preservation and continuity.
    pub fn validate(&self, src: &LeveledGraph, tgt: &LeveledGraph) -> Result<(), MapError> {
        if src.levels != tgt.levels {
            return Err(MapError::GridMismatch);
        }
        if self.nodes.len() != src.nodes.len() || self.strands.len() != src.strands.len() {
            return Err(MapError::Shape);
        }
        for (i, ns) in src.nodes.iter().enumerate() {
            if self.nodes[i].len() != ns.len() {
                return Err(MapError::Shape);
            }
            for (k, &img) in self.nodes[i].iter().enumerate() {
                if img >= tgt.nodes[i].len() {
                    return Err(MapError::OutOfRange(Slot::Level(i), k));
                }
            }
        }
        for (i, ss) in src.strands.iter().enumerate() {
            if self.strands[i].len() != ss.len() {
                return Err(MapError::Shape);
            }
            for (k, s) in ss.iter().enumerate() {
                let img = self.strands[i][k];
                let t = tgt.strands[i].get(img).ok_or(MapError::OutOfRange(Slot::Slab(i), k))?;
                if t.lower != self.nodes[i][s.lower] || t.upper != self.nodes[i + 1][s.upper] {
                    return Err(MapError::Discontinuous(i, k));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LeveledMap) -> LeveledMap {
        LeveledMap {
            nodes: self
                .nodes
                .iter()
                .zip(&other.nodes)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
            strands: self
                .strands
                .iter()
                .zip(&other.strands)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
        }
    }
}
