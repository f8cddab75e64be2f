//! Extended persistence of Reeb graphs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{GraphError, ReebGraph};
use crate::levels::window_components;
use crate::uf::UnionFind;
use crate::value::{half, int, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointClass {
    Ord0,
    Ext0,
    Rel1,
    Ext1,
}

impl PointClass {
    pub const ALL: [PointClass; 4] = [PointClass::Ord0, PointClass::Ext0, PointClass::Rel1, PointClass::Ext1];

    pub fn name(self) -> &'static str {
        match self {
            PointClass::Ord0 => "ord0",
            PointClass::Ext0 => "ext0",
            PointClass::Rel1 => "rel1",
            PointClass::Ext1 => "ext1",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        PointClass::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersistencePoint {
    pub class: PointClass,
    pub birth: Value,
    pub death: Value,
}

impl PersistencePoint {
    pub fn new(class: PointClass, birth: Value, death: Value) -> Self {
        PersistencePoint { class, birth, death }
    }

    pub fn persistence(&self) -> Value {
        if self.birth > self.death {
            self.birth - self.death
        } else {
            self.death - self.birth
        }
    }

    pub fn is_valid(&self) -> bool {
        match self.class {
            PointClass::Ord0 => self.birth < self.death,
            PointClass::Ext0 => self.birth <= self.death,
            PointClass::Rel1 | PointClass::Ext1 => self.birth > self.death,
        }
    }
}

/// Points are kept sorted, so equal diagrams compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtendedDiagram {
    pub points: Vec<PersistencePoint>,
    pub component_count: usize,
}

impl ExtendedDiagram {
    pub fn new(mut points: Vec<PersistencePoint>, component_count: usize) -> Self {
        points.sort();
        ExtendedDiagram { points, component_count }
    }

    pub fn class(&self, c: PointClass) -> Vec<PersistencePoint> {
        self.points.iter().copied().filter(|p| p.class == c).collect()
    }

    pub fn union(&self, other: &ExtendedDiagram) -> ExtendedDiagram {
        let mut pts = self.points.clone();
        pts.extend_from_slice(&other.points);
        ExtendedDiagram::new(pts, self.component_count + other.component_count)
    }

    pub fn shifted(&self, c: Value) -> ExtendedDiagram {
        let pts = self
            .points
            .iter()
            .map(|p| PersistencePoint::new(p.class, p.birth + c, p.death + c))
            .collect();
        ExtendedDiagram::new(pts, self.component_count)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    NonGeneric(GraphError),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::NonGeneric(e) => write!(f, "diagram needs a generic graph: {}", e),
        }
    }
}

/// Extended diagram by sweeps: elder-rule union-find up (Ord0) and down
/// (Rel1), one Ext0 point per component, and Ext1 read off the rank
/// function `#{u <= b, s < a} = β1(f⁻¹(-∞, b]) - β1(f⁻¹[a, b])`.
pub fn extended_diagram(g: &ReebGraph) -> Result<ExtendedDiagram, DiagramError> {
    g.check_generic().map_err(DiagramError::NonGeneric)?;
    let mut pts = Vec::new();
    pts.extend(sweep(g, false));
    pts.extend(sweep(g, true));

    let (lab, k) = g.components();
    let mut ext: Vec<Option<(Value, Value)>> = alloc::vec![None; k];
    for (v, &c) in lab.iter().enumerate() {
        let x = g.values[v];
        ext[c] = Some(match ext[c] {
            None => (x, x),
            Some((lo, hi)) => (lo.min(x), hi.max(x)),
        });
    }
    pts.extend(ext.into_iter().flatten().map(|(lo, hi)| PersistencePoint::new(PointClass::Ext0, lo, hi)));
    pts.extend(ext1_points(g));
    Ok(ExtendedDiagram::new(pts, k))
}

fn sweep(g: &ReebGraph, down: bool) -> Vec<PersistencePoint> {
    let n = g.values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.values[v]);
    if down {
        order.reverse();
    }
    let inc = g.incidence();
    let mut uf = UnionFind::new(n);
    // extremal value of each root's component
    let mut ext: Vec<Value> = g.values.clone();
    let mut seen = alloc::vec![false; n];
    let mut out = Vec::new();
    for &v in &order {
        seen[v] = true;
        for &e in &inc[v] {
            let (a, b) = g.edges[e];
            let w = if a == v { b } else { a };
            if !seen[w] {
                continue;
            }
            let (rv, rw) = (uf.find(v), uf.find(w));
            if rv == rw {
                continue;
            }
            let (ev, ew) = (ext[rv], ext[rw]);
            // the younger extremum dies here
            let (young, old) = if (ev > ew) != down { (ev, ew) } else { (ew, ev) };
            uf.union(rv, rw);
            let r = uf.find(rv);
            ext[r] = old;
            if young != g.values[v] {
                let class = if down { PointClass::Rel1 } else { PointClass::Ord0 };
                out.push(PersistencePoint::new(class, young, g.values[v]));
            }
        }
    }
    out
}

/// β1 of `f⁻¹[lo, hi]` for window ends that are not vertex values.
fn window_betti1(g: &ReebGraph, lo: Value, hi: Value) -> i64 {
    if lo > hi {
        return 0;
    }
    let w = window_components(g, lo, hi);
    let mut verts = w.vertex.iter().filter(|x| x.is_some()).count() as i64;
    let mut edges = 0i64;
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if w.edge[e].is_none() {
            continue;
        }
        edges += 1;
        if g.values[a] < lo {
            verts += 1;
        }
        if g.values[b] > hi {
            verts += 1;
        }
    }
    edges - verts + w.count as i64
}

fn ext1_points(g: &ReebGraph) -> Vec<PersistencePoint> {
    let crit = g.critical_values();
    if crit.is_empty() {
        return Vec::new();
    }
    let below = crit[0] - int(1);
    let above = crit[crit.len() - 1] + int(1);
    // off-grid probes just below / above each critical value
    let minus = |i: usize| if i == 0 { below } else { half(crit[i - 1] + crit[i]) };
    let plus = |i: usize| if i + 1 == crit.len() { above } else { half(crit[i] + crit[i + 1]) };
    let count = |b: Value, a: Value| window_betti1(g, below, b) - window_betti1(g, a, b);
    let mut out = Vec::new();
    for ui in 0..crit.len() {
        for si in 0..ui {
            let m = count(plus(ui), plus(si)) - count(minus(ui), plus(si)) - count(plus(ui), minus(si))
                + count(minus(ui), minus(si));
            debug_assert!(m >= 0);
            for _ in 0..m {
                out.push(PersistencePoint::new(PointClass::Ext1, crit[ui], crit[si]));
            }
        }
    }
    out
}

/// Rank over GF(2) of a set of sparse rows (sorted column indices).
pub fn gf2_rank(rows: Vec<Vec<usize>>) -> usize {
    let mut pivots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut rank = 0;
    for mut r in rows {
        while let Some(&p) = r.last() {
            match pivots.get(&p) {
                Some(q) => r = xor(&r, q),
                None => {
                    pivots.insert(p, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn xor(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Cone,
    Vertex(usize),
    Edge(usize),
    ConeVertex(usize),
    ConeEdge(usize),
}

/// Independent oracle: boundary-matrix reduction over the coned filtration
/// of the midpoint subdivision. The ordinary part adds cells by increasing
/// value, then the cone over superlevel sets is added by decreasing value.
pub fn extended_diagram_oracle(g: &ReebGraph) -> Result<ExtendedDiagram, DiagramError> {
    g.check_generic().map_err(DiagramError::NonGeneric)?;
    let s = g.subdivide_midpoints();
    let (n, m) = (s.values.len(), s.edges.len());
    let mut cells: Vec<(u8, Value, u8, usize, Cell)> = Vec::with_capacity(2 * (n + m) + 1);
    for v in 0..n {
        cells.push((0, s.values[v], 0, v, Cell::Vertex(v)));
        cells.push((1, -s.values[v], 1, v, Cell::ConeVertex(v)));
    }
    for (e, &(a, b)) in s.edges.iter().enumerate() {
        cells.push((0, s.values[b], 1, e, Cell::Edge(e)));
        cells.push((1, -s.values[a], 2, e, Cell::ConeEdge(e)));
    }
    cells.sort_by(|x, y| (x.0, x.1, x.2, x.3).cmp(&(y.0, y.1, y.2, y.3)));
    let mut all = Vec::with_capacity(cells.len() + 1);
    all.push(Cell::Cone);
    all.extend(cells.into_iter().map(|c| c.4));

    let mut pos_v = alloc::vec![0; n];
    let mut pos_e = alloc::vec![0; m];
    let mut pos_cv = alloc::vec![0; n];
    for (i, c) in all.iter().enumerate() {
        match *c {
            Cell::Vertex(v) => pos_v[v] = i,
            Cell::Edge(e) => pos_e[e] = i,
            Cell::ConeVertex(v) => pos_cv[v] = i,
            _ => {}
        }
    }
    let value = |c: Cell| -> Value {
        match c {
            Cell::Cone => Value::default(),
            Cell::Vertex(v) | Cell::ConeVertex(v) => s.values[v],
            Cell::Edge(e) => s.values[s.edges[e].1],
            Cell::ConeEdge(e) => s.values[s.edges[e].0],
        }
    };
    let mut low_owner: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut pts = Vec::new();
    for c in all.iter() {
        let mut col: Vec<usize> = match *c {
            Cell::Cone | Cell::Vertex(_) => Vec::new(),
            Cell::Edge(e) => {
                let (a, b) = s.edges[e];
                alloc::vec![pos_v[a], pos_v[b]]
            }
            Cell::ConeVertex(v) => alloc::vec![0, pos_v[v]],
            Cell::ConeEdge(e) => {
                let (a, b) = s.edges[e];
                alloc::vec![pos_e[e], pos_cv[a], pos_cv[b]]
            }
        };
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match low_owner.get(&low) {
                Some(other) => col = xor(&col, other),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            let (b, d) = (all[low], *c);
            let (bv, dv) = (value(b), value(d));
            let class = match (b, d) {
                (Cell::Vertex(_), Cell::Edge(_)) => PointClass::Ord0,
                (Cell::Vertex(_), Cell::ConeVertex(_)) => PointClass::Ext0,
                (Cell::Edge(_), Cell::ConeEdge(_)) => PointClass::Ext1,
                (Cell::ConeVertex(_), Cell::ConeEdge(_)) => PointClass::Rel1,
                _ => unreachable!("pairing across incompatible cells"),
            };
            if bv != dv || class == PointClass::Ext0 {
                pts.push(PersistencePoint::new(class, bv, dv));
            }
            low_owner.insert(low, col);
        }
    }
    Ok(ExtendedDiagram::new(pts, g.component_count()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockKind {
    ClosedClosed,
    ClosedOpen,
    OpenClosed,
    OpenOpen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    pub low: Value,
    pub high: Value,
    pub kind: BlockKind,
}

/// Interlevel-set blocks: each point becomes the interval between its
/// coordinates, with endpoints open or closed by class.
pub fn diagram_to_blocks(d: &ExtendedDiagram) -> Vec<Block> {
    let mut out: Vec<Block> = d
        .points
        .iter()
        .map(|p| Block {
            low: p.birth.min(p.death),
            high: p.birth.max(p.death),
            kind: match p.class {
                PointClass::Ext0 => BlockKind::ClosedClosed,
                PointClass::Ord0 => BlockKind::ClosedOpen,
                PointClass::Rel1 => BlockKind::OpenClosed,
                PointClass::Ext1 => BlockKind::OpenOpen,
            },
        })
        .collect();
    out.sort();
    out
}
