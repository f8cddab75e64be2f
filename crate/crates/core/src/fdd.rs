//! Functional distortion: the path-height metric `d_f`, explicit map-pair
//! certificates with exact and sampled distortion, and `d_FD` brackets.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::graph::{Point, ReebGraph};
use crate::interleaving::{interleaving_distance, InterleaveError};
use crate::levels::{merge_grid as merge_values, window_components, Atom, WindowComps};
use crate::metrics::bottleneck_class;
use crate::persistence::{extended_diagram, DiagramError, PointClass};
use crate::value::{abs_diff, frac, int, Bracket, Ext, Value};

/// `d_f` with the window components for every pair of vertex values
/// precomputed.
pub struct HeightMetric<'g> {
    g: &'g ReebGraph,
    levels: Vec<Value>,
    /// `win[i][j - i]` is the component labelling of `f⁻¹[levels[i], levels[j]]`.
    win: Vec<Vec<WindowComps>>,
    comp: Vec<usize>,
}

/// The cheapest feasible window of each shape for a pair of points at
/// heights `a <= b`: `hi - lo` with each end either a vertex value or the
/// point's own height.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Forms {
    /// `c_j - c_i`.
    fixed: Option<Value>,
    /// `c_j - a`, stores `c_j`.
    var_lo: Option<Value>,
    /// `b - c_i`, stores `c_i`.
    var_hi: Option<Value>,
    /// `b - a`.
    both: bool,
}

impl Forms {
    fn eval(&self, a: Value, b: Value) -> Option<Value> {
        let mut best: Option<Value> = None;
        let mut take = |v: Value| best = Some(best.map_or(v, |x: Value| x.min(v)));
        if let Some(c) = self.fixed {
            take(c);
        }
        if let Some(c) = self.var_lo {
            take(c - a);
        }
        if let Some(c) = self.var_hi {
            take(b - c);
        }
        if self.both {
            take(b - a);
        }
        best
    }
}

impl<'g> HeightMetric<'g> {
    pub fn new(g: &'g ReebGraph) -> Self {
        let levels = merge_values(g.values.iter().copied());
        let win = (0..levels.len())
            .map(|i| (i..levels.len()).map(|j| window_components(g, levels[i], levels[j])).collect())
            .collect();
        let comp = g.components().0;
        HeightMetric { g, levels, win, comp }
    }

    fn atom_component(&self, a: Atom) -> usize {
        match a {
            Atom::Vertex(v) => self.comp[v],
            Atom::Edge(e) => self.comp[self.g.edges[e].0],
        }
    }

    /// Window ends available below (`down`) or above a height: every vertex
    /// value on that side, plus the height itself when it is not a vertex
    /// value (mapped to the nearest level inward).
    fn ends(&self, h: Value, down: bool) -> Vec<(usize, Option<Value>)> {
        let mut out = Vec::new();
        match self.levels.binary_search(&h) {
            Ok(i) => {
                if down {
                    out.extend((0..=i).rev().map(|k| (k, Some(self.levels[k]))));
                } else {
                    out.extend((i..self.levels.len()).map(|k| (k, Some(self.levels[k]))));
                }
            }
            Err(i) => {
                if down {
                    out.push((i, None));
                    out.extend((0..i).rev().map(|k| (k, Some(self.levels[k]))));
                } else {
                    out.push((i.wrapping_sub(1), None));
                    out.extend((i..self.levels.len()).map(|k| (k, Some(self.levels[k]))));
                }
            }
        }
        out
    }

    fn forms(&self, x: Atom, hx: Value, y: Atom, hy: Value) -> Forms {
        let mut f = Forms::default();
        if self.atom_component(x) != self.atom_component(y) {
            return f;
        }
        let (a, b) = (hx.min(hy), hx.max(hy));
        let los = self.ends(a, true);
        let his = self.ends(b, false);
        for &(i, lo) in &los {
            for &(j, hi) in &his {
                let ok = if lo.is_none() && hi.is_none() && (j == usize::MAX || i > j) {
                    x == y
                } else if j == usize::MAX || i > j {
                    false
                } else {
                    let w = &self.win[i][j - i];
                    let c = w.of(x);
                    c.is_some() && c == w.of(y)
                };
                if !ok {
                    continue;
                }
                match (lo, hi) {
                    (Some(l), Some(h)) => f.fixed = Some(f.fixed.map_or(h - l, |v| v.min(h - l))),
                    (None, Some(h)) => f.var_lo = Some(f.var_lo.map_or(h, |v| v.min(h))),
                    (Some(l), None) => f.var_hi = Some(f.var_hi.map_or(l, |v| v.max(l))),
                    (None, None) => f.both = true,
                }
            }
        }
        f
    }

    /// Exact `d_f(p, q)`, `None` across components.
    pub fn dist(&self, p: Point, q: Point) -> Option<Value> {
        let (p, q) = (self.g.normalize_point(p), self.g.normalize_point(q));
        let (hp, hq) = (self.g.value_of(p), self.g.value_of(q));
        self.forms(p.into(), hp, q.into(), hq).eval(hp.min(hq), hp.max(hq))
    }
}

// ---------------------------------------------------------------------------
// Certificates.

/// A continuous PL map between Reeb graphs. Each source edge carries the
/// interior breakpoints `(source value, target point)`; between consecutive
/// breakpoints (the vertex images included) the map runs linearly along a
/// single target edge. A target point `Edge(e, t)` with `t` at an end of `e`
/// names that edge explicitly, which parallel edges need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlMap {
    pub vertex: Vec<Point>,
    pub edge: Vec<Vec<(Value, Point)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCertificate {
    /// `Φ: R_f → R_g`.
    pub forward: PlMap,
    /// `Ψ: R_g → R_f`.
    pub backward: PlMap,
    /// Boundary vertices of `R_f` and `R_g` that must map into each other.
    pub boundary: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertError {
    Shape { forward: bool },
    BadPoint { forward: bool, vertex: Option<usize>, edge: Option<usize> },
    Breakpoints { forward: bool, edge: usize },
    Piece { forward: bool, edge: usize, piece: usize },
    Boundary { forward: bool, vertex: usize },
}

impl fmt::Display for CertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = |fw: &bool| if *fw { "forward" } else { "backward" };
        match self {
            CertError::Shape { forward } => write!(f, "{} map does not match the source graph", dir(forward)),
            CertError::BadPoint { forward, vertex, edge } => {
                write!(f, "{} map: invalid target point (vertex {:?}, edge {:?})", dir(forward), vertex, edge)
            }
            CertError::Breakpoints { forward, edge } => {
                write!(f, "{} map: breakpoints on edge {} are not strictly inside and increasing", dir(forward), edge)
            }
            CertError::Piece { forward, edge, piece } => write!(
                f,
                "{} map: piece {} of edge {} does not lie along a single target edge",
                dir(forward),
                piece,
                edge
            ),
            CertError::Boundary { forward, vertex } => {
                write!(f, "{} map sends boundary vertex {} off the boundary", dir(forward), vertex)
            }
        }
    }
}

/// Where a linear piece lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    Vertex(usize),
    /// Edge with the target values at the two piece ends.
    Edge(usize, Value, Value),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Piece {
    pub(crate) src_edge: usize,
    pub(crate) t0: Value,
    pub(crate) t1: Value,
    pub(crate) target: Target,
}

impl Piece {
    pub(crate) fn target_value(&self, tgt: &ReebGraph, t: Value) -> Value {
        match self.target {
            Target::Vertex(v) => tgt.values[v],
            Target::Edge(_, v0, v1) => v0 + (v1 - v0) * (t - self.t0) / (self.t1 - self.t0),
        }
    }

    pub(crate) fn target_point(&self, tgt: &ReebGraph, t: Value) -> Point {
        match self.target {
            Target::Vertex(v) => Point::Vertex(v),
            Target::Edge(e, ..) => tgt.normalize_point(Point::Edge(e, self.target_value(tgt, t))),
        }
    }

    /// Target value slope per unit of source value.
    fn slope(&self) -> Value {
        match self.target {
            Target::Vertex(_) => Value::default(),
            Target::Edge(_, v0, v1) => (v1 - v0) / (self.t1 - self.t0),
        }
    }
}

fn on_edge(g: &ReebGraph, e: usize, p: Point) -> Option<Value> {
    let (a, b) = g.edges[e];
    match p {
        Point::Vertex(v) if v == a || v == b => Some(g.values[v]),
        Point::Edge(e2, t) if e2 == e => Some(t),
        _ => None,
    }
}

fn resolve(p: Point, q: Point, tgt: &ReebGraph) -> Option<Target> {
    let (np, nq) = (tgt.normalize_point(p), tgt.normalize_point(q));
    if let (Point::Vertex(u), Point::Vertex(v)) = (np, nq) {
        if u == v {
            return Some(Target::Vertex(u));
        }
    }
    let named: Vec<usize> = [p, q].iter().filter_map(|x| if let Point::Edge(e, _) = x { Some(*e) } else { None }).collect();
    let candidates: Vec<usize> = if let Some(&e) = named.first() {
        vec![e]
    } else {
        (0..tgt.edges.len()).filter(|&e| on_edge(tgt, e, p).is_some() && on_edge(tgt, e, q).is_some()).collect()
    };
    if candidates.len() != 1 {
        return None;
    }
    let e = candidates[0];
    let (vp, vq) = (on_edge(tgt, e, p)?, on_edge(tgt, e, q)?);
    if vp == vq {
        // A constant piece sits at one point of the edge.
        return Some(match tgt.normalize_point(Point::Edge(e, vp)) {
            Point::Vertex(v) => Target::Vertex(v),
            _ => Target::Edge(e, vp, vq),
        });
    }
    Some(Target::Edge(e, vp, vq))
}

impl PlMap {
    /// Identity map of a graph. Parallel edges get a midpoint breakpoint so
    /// each piece names its edge.
    pub fn identity(g: &ReebGraph) -> Self {
        let edge = g
            .edges
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                if g.edges.iter().filter(|&&x| x == (a, b)).count() > 1 {
                    let mid = (g.values[a] + g.values[b]) / int(2);
                    vec![(mid, Point::Edge(e, mid))]
                } else {
                    Vec::new()
                }
            })
            .collect();
        PlMap { vertex: (0..g.values.len()).map(Point::Vertex).collect(), edge }
    }

    pub(crate) fn pieces(&self, src: &ReebGraph, tgt: &ReebGraph, forward: bool) -> Result<Vec<Piece>, CertError> {
        if self.vertex.len() != src.values.len() || self.edge.len() != src.edges.len() {
            return Err(CertError::Shape { forward });
        }
        for (v, &p) in self.vertex.iter().enumerate() {
            if !tgt.point_is_valid(p) {
                return Err(CertError::BadPoint { forward, vertex: Some(v), edge: None });
            }
        }
        let mut out = Vec::new();
        for (e, brk) in self.edge.iter().enumerate() {
            let (u, w) = src.edges[e];
            let mut pts = vec![(src.values[u], self.vertex[u])];
            for &(t, p) in brk {
                if !tgt.point_is_valid(p) {
                    return Err(CertError::BadPoint { forward, vertex: None, edge: Some(e) });
                }
                pts.push((t, p));
            }
            pts.push((src.values[w], self.vertex[w]));
            if pts.windows(2).any(|x| x[0].0 >= x[1].0) {
                return Err(CertError::Breakpoints { forward, edge: e });
            }
            for (k, x) in pts.windows(2).enumerate() {
                let target = resolve(x[0].1, x[1].1, tgt).ok_or(CertError::Piece { forward, edge: e, piece: k })?;
                out.push(Piece { src_edge: e, t0: x[0].0, t1: x[1].0, target });
            }
        }
        Ok(out)
    }
}

/// One linear piece of the supergraph `G(Φ, Ψ)`, parameterized by the
/// source value `t ∈ [t0, t1]`.
#[derive(Clone, Copy, Debug)]
struct Cell {
    forward: bool,
    piece: Piece,
}

impl Cell {
    fn points(&self, f: &ReebGraph, g: &ReebGraph, t: Value) -> (Point, Point) {
        let p = &self.piece;
        if self.forward {
            (f.normalize_point(Point::Edge(p.src_edge, t)), p.target_point(g, t))
        } else {
            (p.target_point(f, t), g.normalize_point(Point::Edge(p.src_edge, t)))
        }
    }

    /// `(f, g)` values as `k + c·t`.
    fn lines(&self, f: &ReebGraph, g: &ReebGraph) -> ((Value, Value), (Value, Value)) {
        let p = &self.piece;
        let tgt = if self.forward { g } else { f };
        let tgt_line = match p.target {
            Target::Vertex(v) => (tgt.values[v], Value::default()),
            Target::Edge(_, v0, _) => (v0 - p.slope() * p.t0, p.slope()),
        };
        let src_line = (Value::default(), int(1));
        if self.forward {
            (src_line, tgt_line)
        } else {
            (tgt_line, src_line)
        }
    }

    fn atoms(&self, t: Value, f: &ReebGraph, g: &ReebGraph) -> (Atom, Atom) {
        let (p, q) = self.points(f, g, t);
        (p.into(), q.into())
    }

    fn rate(&self) -> Value {
        int(1) + self.piece.slope().abs()
    }

    fn width(&self) -> Value {
        self.piece.t1 - self.piece.t0
    }
}

#[derive(Clone, Debug)]
pub struct CheckedCertificate<'a> {
    f: &'a ReebGraph,
    g: &'a ReebGraph,
    cells: Vec<Cell>,
    /// Supergraph points of isolated vertices.
    singles: Vec<(Point, Point)>,
}

impl MapCertificate {
    /// Identity pair on one graph.
    pub fn identity(g: &ReebGraph) -> Self {
        MapCertificate { forward: PlMap::identity(g), backward: PlMap::identity(g), boundary: None }
    }

    pub fn validate<'a>(&self, f: &'a ReebGraph, g: &'a ReebGraph) -> Result<CheckedCertificate<'a>, CertError> {
        let fw = self.forward.pieces(f, g, true)?;
        let bw = self.backward.pieces(g, f, false)?;
        if let Some((bf, bg)) = &self.boundary {
            for (forward, src_b, tgt_b, map) in [(true, bf, bg, &self.forward), (false, bg, bf, &self.backward)] {
                let tgt = if forward { g } else { f };
                for &v in src_b {
                    let ok = match map.vertex.get(v).map(|&p| tgt.normalize_point(p)) {
                        Some(Point::Vertex(u)) => tgt_b.contains(&u),
                        _ => false,
                    };
                    if !ok {
                        return Err(CertError::Boundary { forward, vertex: v });
                    }
                }
            }
        }
        let mut cells = Vec::new();
        for (forward, pieces) in [(true, fw), (false, bw)] {
            for piece in pieces {
                cells.push(Cell { forward, piece });
            }
        }
        let mut singles = Vec::new();
        for (v, d) in f.degrees().iter().enumerate() {
            if *d == 0 {
                singles.push((Point::Vertex(v), g.normalize_point(self.forward.vertex[v])));
            }
        }
        for (v, d) in g.degrees().iter().enumerate() {
            if *d == 0 {
                singles.push((f.normalize_point(self.backward.vertex[v]), Point::Vertex(v)));
            }
        }
        Ok(CheckedCertificate { f, g, cells, singles })
    }
}

/// `‖f - g∘Φ‖_∞` and `‖f∘Ψ - g‖_∞`, exact (the difference is linear on
/// each piece).
pub fn evaluate_supnorms(cert: &CheckedCertificate) -> (Value, Value) {
    let mut out = (Value::default(), Value::default());
    for c in &cert.cells {
        let (f_line, g_line) = c.lines(cert.f, cert.g);
        for t in [c.piece.t0, c.piece.t1] {
            let fv = f_line.0 + f_line.1 * t;
            let gv = g_line.0 + g_line.1 * t;
            let d = abs_diff(fv, gv);
            let slot = if c.forward { &mut out.0 } else { &mut out.1 };
            if d > *slot {
                *slot = d;
            }
        }
    }
    for &(p, q) in &cert.singles {
        let d = abs_diff(cert.f.value_of(p), cert.g.value_of(q));
        // Isolated vertices count for the map they are the source of.
        if d > out.0.max(out.1) {
            out.0 = out.0.max(d);
        }
    }
    out
}

/// `2λ` at a pair of supergraph points; `None` means infinite (one metric
/// separates the points and the other does not).
fn twice_lambda(mf: &HeightMetric, mg: &HeightMetric, a: (Point, Point), b: (Point, Point)) -> Ext {
    match (mf.dist(a.0, b.0), mg.dist(a.1, b.1)) {
        (Some(x), Some(y)) => Ext::Finite(abs_diff(x, y)),
        (None, None) => Ext::Finite(Value::default()),
        _ => Ext::Infinite,
    }
}

/// Sampled distortion: `(D_lower, D_upper)` with `D_upper - D_lower = δ`.
/// Samples are spaced `2δ / (1 + K)` along a piece of slope `K`; moving a
/// point by `Δ` along it changes `λ` by at most `(1 + K)Δ / 2`, so every
/// pair is within `δ` of a sampled pair.
pub fn evaluate_distortion(cert: &CheckedCertificate, delta: Value) -> (Ext, Ext) {
    let (mf, mg) = (HeightMetric::new(cert.f), HeightMetric::new(cert.g));
    let mut pts: Vec<(Point, Point)> = cert.singles.clone();
    for c in &cert.cells {
        let h = delta * int(2) / c.rate();
        let n = ((c.width() / h).ceil().to_integer()).max(1);
        for k in 0..=n {
            let t = c.piece.t0 + c.width() * frac(k, n);
            pts.push(c.points(cert.f, cert.g, t));
        }
    }
    pts.sort_by(|a, b| format_key(a).cmp(&format_key(b)));
    pts.dedup();
    let mut best = Ext::Finite(Value::default());
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(twice_lambda(&mf, &mg, pts[i], pts[j]));
        }
    }
    let lower = best.scale(frac(1, 2));
    let upper = match lower {
        Ext::Finite(v) => Ext::Finite(v + delta),
        e => e,
    };
    (lower, upper)
}

fn format_key(p: &(Point, Point)) -> (u8, usize, Value, u8, usize, Value) {
    let k = |p: Point| match p {
        Point::Vertex(v) => (0u8, v, Value::default()),
        Point::Edge(e, t) => (1u8, e, t),
    };
    let (a, b) = (k(p.0), k(p.1));
    (a.0, a.1, a.2, b.0, b.1, b.2)
}

// Exact distortion. On a pair of cells, split so that neither the f- nor
// the g-coordinate of either point crosses a vertex value, and further by
// the two diagonals where the points swap height order, each metric is
// the minimum of at most four affine functions of `(s, t)`. `|d_f - d_g|`
// then peaks at a vertex of the arrangement of the polygon and the tie
// lines of either family.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lin {
    k: Value,
    s: Value,
    t: Value,
}

impl Lin {
    fn at(&self, p: (Value, Value)) -> Value {
        self.k + self.s * p.0 + self.t * p.1
    }

    fn sub(&self, o: &Lin) -> Lin {
        Lin { k: self.k - o.k, s: self.s - o.s, t: self.t - o.t }
    }

    fn konst(k: Value) -> Lin {
        Lin { k, s: Value::default(), t: Value::default() }
    }
}

type Poly = Vec<(Value, Value)>;

/// Keeps the part of a convex polygon where `l <= 0`.
fn clip(poly: &Poly, l: &Lin) -> Poly {
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let (vp, vq) = (l.at(p), l.at(q));
        if vp <= Value::default() {
            out.push(p);
        }
        if (vp < Value::default() && vq > Value::default()) || (vp > Value::default() && vq < Value::default()) {
            let r = vp / (vp - vq);
            out.push((p.0 + (q.0 - p.0) * r, p.1 + (q.1 - p.1) * r));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn area2(poly: &Poly) -> Value {
    let n = poly.len();
    let mut a = Value::default();
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        a += p.0 * q.1 - q.0 * p.1;
    }
    a.abs()
}

fn inside(poly: &Poly, x: (Value, Value)) -> bool {
    let n = poly.len();
    let mut sign = 0i8;
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let c = (q.0 - p.0) * (x.1 - p.1) - (q.1 - p.1) * (x.0 - p.0);
        let s = if c > Value::default() { 1 } else if c < Value::default() { -1 } else { 0 };
        if s != 0 {
            if sign != 0 && s != sign {
                return false;
            }
            sign = s;
        }
    }
    true
}

/// Arrangement vertices of `lines` inside `poly`, plus its corners.
fn arrangement_points(poly: &Poly, lines: &[Lin], out: &mut Vec<(Value, Value)>) {
    out.extend(poly.iter().copied());
    let n = poly.len();
    for l in lines {
        for i in 0..n {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            let (vp, vq) = (l.at(p), l.at(q));
            if vp != vq && (vp <= Value::default()) != (vq < Value::default()) {
                let r = vp / (vp - vq);
                if r >= Value::default() && r <= int(1) {
                    out.push((p.0 + (q.0 - p.0) * r, p.1 + (q.1 - p.1) * r));
                }
            }
        }
    }
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            let det = a.s * b.t - b.s * a.t;
            if det == Value::default() {
                continue;
            }
            let x = ((a.t * b.k - b.t * a.k) / det, (b.s * a.k - a.s * b.k) / det);
            if inside(poly, x) {
                out.push(x);
            }
        }
    }
}

fn forms_lins(fm: &Forms, a: Lin, b: Lin) -> Vec<Lin> {
    let mut out = Vec::new();
    if let Some(c) = fm.fixed {
        out.push(Lin::konst(c));
    }
    if let Some(c) = fm.var_lo {
        out.push(Lin::konst(c).sub(&a));
    }
    if let Some(c) = fm.var_hi {
        out.push(b.sub(&Lin::konst(c)));
    }
    if fm.both {
        out.push(b.sub(&a));
    }
    out
}

fn ties(ls: &[Lin]) -> Vec<Lin> {
    let mut out = Vec::new();
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i + 1..] {
            let d = a.sub(b);
            if d.s != Value::default() || d.t != Value::default() {
                out.push(d);
            }
        }
    }
    out
}

fn min_at(ls: &[Lin], p: (Value, Value)) -> Option<Value> {
    ls.iter().map(|l| l.at(p)).min()
}

/// Sub-cells of a cell: parameter intervals on which neither coordinate
/// crosses a vertex value.
fn split_cell(c: &Cell, f: &ReebGraph, g: &ReebGraph, f_levels: &[Value], g_levels: &[Value]) -> Vec<Cell> {
    let (fl, gl) = c.lines(f, g);
    let mut cuts = vec![c.piece.t0, c.piece.t1];
    for (line, levels) in [(fl, f_levels), (gl, g_levels)] {
        if line.1 == Value::default() {
            continue;
        }
        for &v in levels {
            let t = (v - line.0) / line.1;
            if t > c.piece.t0 && t < c.piece.t1 {
                cuts.push(t);
            }
        }
    }
    let cuts = merge_values(cuts);
    let tgt = if c.forward { g } else { f };
    cuts.windows(2)
        .map(|w| {
            let mut p = c.piece;
            if let Target::Edge(e, ..) = p.target {
                let (tv0, tv1) = (c.piece.target_value(tgt, w[0]), c.piece.target_value(tgt, w[1]));
                p.target = Target::Edge(e, tv0, tv1);
            }
            p.t0 = w[0];
            p.t1 = w[1];
            Cell { forward: c.forward, piece: p }
        })
        .collect()
}

struct Exact<'a> {
    f: &'a ReebGraph,
    g: &'a ReebGraph,
    mf: HeightMetric<'a>,
    mg: HeightMetric<'a>,
}

impl Exact<'_> {
    /// Exact `sup 2λ` over a pair of sub-cells.
    fn cell_pair(&self, c1: &Cell, c2: &Cell) -> Ext {
        let (f1, g1) = c1.lines(self.f, self.g);
        let (f2, g2) = c2.lines(self.f, self.g);
        let lf1 = Lin { k: f1.0, s: f1.1, t: Value::default() };
        let lf2 = Lin { k: f2.0, s: Value::default(), t: f2.1 };
        let lg1 = Lin { k: g1.0, s: g1.1, t: Value::default() };
        let lg2 = Lin { k: g2.0, s: Value::default(), t: g2.1 };
        let rect: Poly = vec![
            (c1.piece.t0, c2.piece.t0),
            (c1.piece.t1, c2.piece.t0),
            (c1.piece.t1, c2.piece.t1),
            (c1.piece.t0, c2.piece.t1),
        ];
        let df = lf1.sub(&lf2);
        let dg = lg1.sub(&lg2);
        let neg = |l: Lin| Lin { k: -l.k, s: -l.s, t: -l.t };
        let mut best = Ext::Finite(Value::default());
        for f_low in [true, false] {
            for g_low in [true, false] {
                let mut poly = clip(&rect, &if f_low { df } else { neg(df) });
                poly = clip(&poly, &if g_low { dg } else { neg(dg) });
                if poly.len() < 3 || area2(&poly) == Value::default() {
                    continue;
                }
                let n = int(poly.len() as i128);
                let centroid = (poly.iter().map(|p| p.0).sum::<Value>() / n, poly.iter().map(|p| p.1).sum::<Value>() / n);
                let (x1, y1) = c1.atoms(centroid.0, self.f, self.g);
                let (x2, y2) = c2.atoms(centroid.1, self.f, self.g);
                let (hf1, hf2) = (lf1.at(centroid), lf2.at(centroid));
                let (hg1, hg2) = (lg1.at(centroid), lg2.at(centroid));
                let ff = self.mf.forms(x1, hf1, x2, hf2);
                let fg = self.mg.forms(y1, hg1, y2, hg2);
                let (af, bf) = if f_low { (lf1, lf2) } else { (lf2, lf1) };
                let (ag, bg) = if g_low { (lg1, lg2) } else { (lg2, lg1) };
                let lf = forms_lins(&ff, af, bf);
                let lg = forms_lins(&fg, ag, bg);
                match (lf.is_empty(), lg.is_empty()) {
                    (true, true) => continue,
                    (true, false) | (false, true) => return Ext::Infinite,
                    _ => {}
                }
                let mut pts = Vec::new();
                arrangement_points(&poly, &ties(&lf), &mut pts);
                arrangement_points(&poly, &ties(&lg), &mut pts);
                for p in pts {
                    let v = abs_diff(min_at(&lf, p).unwrap(), min_at(&lg, p).unwrap());
                    best = best.max(Ext::Finite(v));
                }
            }
        }
        best
    }
}

/// Exact distortion `D(Φ, Ψ)`. Pairs of cells whose corner values plus the
/// Lipschitz slack cannot beat the running maximum are skipped.
pub fn exact_distortion(cert: &CheckedCertificate) -> Ext {
    let ex = Exact { f: cert.f, g: cert.g, mf: HeightMetric::new(cert.f), mg: HeightMetric::new(cert.g) };
    let (fl, gl) = (ex.mf.levels.clone(), ex.mg.levels.clone());
    let cells: Vec<Cell> = cert.cells.iter().flat_map(|c| split_cell(c, cert.f, cert.g, &fl, &gl)).collect();
    // Corner points, shared by neighbouring cells.
    let mut corners: Vec<(Point, Point)> = cert.singles.clone();
    let mut ends = Vec::with_capacity(cells.len());
    for c in &cells {
        let p0 = c.points(cert.f, cert.g, c.piece.t0);
        let p1 = c.points(cert.f, cert.g, c.piece.t1);
        let mut id = |p: (Point, Point)| match corners.iter().position(|q| *q == p) {
            Some(i) => i,
            None => {
                corners.push(p);
                corners.len() - 1
            }
        };
        ends.push([id(p0), id(p1)]);
    }
    let n = corners.len();
    let mut lam = vec![Ext::Finite(Value::default()); n * n];
    let mut best = Ext::Finite(Value::default());
    for i in 0..n {
        for j in i + 1..n {
            let v = twice_lambda(&ex.mf, &ex.mg, corners[i], corners[j]);
            lam[i * n + j] = v;
            lam[j * n + i] = v;
            best = best.max(v);
        }
    }
    if best == Ext::Infinite {
        return Ext::Infinite;
    }
    for i in 0..cells.len() {
        for j in i..cells.len() {
            let corner_max = ends[i].iter().flat_map(|&a| ends[j].iter().map(move |&b| (a, b))).map(|(a, b)| lam[a * n + b]).max().unwrap();
            let slack = (cells[i].rate() * cells[i].width() + cells[j].rate() * cells[j].width()) / int(2);
            if let Ext::Finite(m) = corner_max {
                if Ext::Finite(m + slack) <= best {
                    continue;
                }
            }
            best = best.max(ex.cell_pair(&cells[i], &cells[j]));
            if best == Ext::Infinite {
                return best;
            }
        }
    }
    best.scale(frac(1, 2))
}

/// Certified `d_FD` upper bound of one certificate: `max(D, sup-norms)`,
/// all exact.
pub fn fdd_upper(cert: &CheckedCertificate) -> Ext {
    let (s1, s2) = evaluate_supnorms(cert);
    exact_distortion(cert).max(Ext::Finite(s1.max(s2)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FddBounds {
    pub bracket: Bracket,
    pub interleaving: Bracket,
    /// Differences of global maxima and of global minima.
    pub global_pair: Value,
    /// `d_b` per class, in [`PointClass::ALL`] order (Ext1 not yet divided).
    pub class_bottleneck: [Value; 4],
    pub certificate_upper: Option<Ext>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FddError {
    Diagram(DiagramError),
    Interleave(InterleaveError),
    Certificate(CertError),
}

impl fmt::Display for FddError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FddError::Diagram(e) => write!(f, "{}", e),
            FddError::Interleave(e) => write!(f, "{}", e),
            FddError::Certificate(e) => write!(f, "{}", e),
        }
    }
}

/// Bracket for `d_FD`: lower from `d_I`, the global extrema and the
/// classwise bottleneck bounds; upper from `3·d_I` and the certificates.
pub fn fdd_bounds(a: &ReebGraph, b: &ReebGraph, certs: &[MapCertificate], tol: Value, budget: u64) -> Result<FddBounds, FddError> {
    let il = interleaving_distance(a, b, tol, budget).map_err(FddError::Interleave)?.bracket;
    fdd_bounds_with(a, b, certs, il)
}

/// [`fdd_bounds`] with the interleaving bracket already known.
pub fn fdd_bounds_with(a: &ReebGraph, b: &ReebGraph, certs: &[MapCertificate], il: Bracket) -> Result<FddBounds, FddError> {
    let (da, db) = (
        extended_diagram(a).map_err(FddError::Diagram)?,
        extended_diagram(b).map_err(FddError::Diagram)?,
    );
    let mut class_bottleneck = [Value::default(); 4];
    for (k, c) in PointClass::ALL.iter().enumerate() {
        class_bottleneck[k] = bottleneck_class(&da, &db, *c);
    }
    let global_pair = match (a.value_range(), b.value_range()) {
        (Some((l1, h1)), Some((l2, h2))) => abs_diff(l1, l2).max(abs_diff(h1, h2)),
        _ => Value::default(),
    };
    let mut lower = il.lo.max(Ext::Finite(global_pair));
    for (k, c) in PointClass::ALL.iter().enumerate() {
        let v = if *c == PointClass::Ext1 { class_bottleneck[k] / int(3) } else { class_bottleneck[k] };
        lower = lower.max(Ext::Finite(v));
    }
    let mut certificate_upper: Option<Ext> = None;
    for c in certs {
        let checked = c.validate(a, b).map_err(FddError::Certificate)?;
        let u = fdd_upper(&checked);
        certificate_upper = Some(certificate_upper.map_or(u, |x| x.min(u)));
    }
    let mut upper = il.hi.scale(int(3));
    if let Some(u) = certificate_upper {
        upper = upper.min(u);
    }
    Ok(FddBounds { bracket: Bracket { lo: lower, hi: upper }, interleaving: il, global_pair, class_bottleneck, certificate_upper })
}

/// Default sampling resolution: 1/64 of the smaller value range.
pub fn default_delta(a: &ReebGraph, b: &ReebGraph) -> Value {
    let span = |g: &ReebGraph| g.value_range().map(|(l, h)| h - l);
    match (span(a), span(b)) {
        (Some(x), Some(y)) if x.min(y) > Value::default() => x.min(y) / int(64),
        (Some(x), _) | (_, Some(x)) if x > Value::default() => x / int(64),
        _ => frac(1, 64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::levels::path_height_distance;

    fn all_points(g: &ReebGraph) -> Vec<Point> {
        let mut pts: Vec<Point> = (0..g.values.len()).map(Point::Vertex).collect();
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            for k in 1..4 {
                pts.push(Point::Edge(e, g.values[a] + (g.values[b] - g.values[a]) * frac(k, 4)));
            }
        }
        pts
    }

    #[test]
    fn metric_matches_direct_search() {
        for g in [fig4(), example1().0, example1().1, example3().0, example4().1] {
            let m = HeightMetric::new(&g);
            let pts = all_points(&g);
            for &p in &pts {
                for &q in &pts {
                    assert_eq!(m.dist(p, q), path_height_distance(&g, p, q), "{:?} {:?}", p, q);
                }
            }
        }
    }

    #[test]
    fn identity_certificate_is_zero() {
        let g = fig4();
        let c = MapCertificate::identity(&g);
        let checked = c.validate(&g, &g).unwrap();
        assert_eq!(fdd_upper(&checked), Ext::Finite(int(0)));
        assert_eq!(evaluate_supnorms(&checked), (int(0), int(0)));
    }

    fn upper(pair: (ReebGraph, ReebGraph), c: &MapCertificate) -> Ext {
        let checked = c.validate(&pair.0, &pair.1).unwrap();
        let exact = fdd_upper(&checked);
        let (lo, hi) = evaluate_distortion(&checked, frac(1, 16));
        let d = exact_distortion(&checked);
        assert!(lo <= d && d <= hi, "sampled [{:?}, {:?}] vs exact {:?}", lo, hi, d);
        exact
    }

    #[test]
    fn example_certificates() {
        assert_eq!(upper(example2(), &example2_fdd()), Ext::Finite(frac(2, 5)));
        assert_eq!(upper(example3(), &example3_fdd()), Ext::Finite(int(1)));
        assert_eq!(upper(example4(), &example4_fdd()), Ext::Finite(int(1)));
        let eta = frac(1, 1000);
        assert_eq!(upper(example1(), &example1_fdd(eta)), Ext::Finite(frac(1, 2) + eta));
    }

    #[test]
    fn rejects_broken_certificates() {
        let (f, g) = example2();
        let mut c = example2_fdd();
        c.forward.edge[1].clear();
        assert!(matches!(c.validate(&f, &g), Err(CertError::Piece { .. })));
        let (f, g) = example4();
        let mut c = example4_fdd();
        c.forward.vertex[1] = Point::Vertex(0);
        assert!(matches!(c.validate(&f, &g), Err(CertError::Boundary { .. })));
    }

    fn bounds(pair: (ReebGraph, ReebGraph), certs: &[MapCertificate]) -> FddBounds {
        fdd_bounds(&pair.0, &pair.1, certs, crate::interleaving::default_tol(), crate::interleaving::DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn bounds_collapse_with_certificates() {
        let g = example3().0;
        let b = bounds((g.clone(), g.clone()), &[MapCertificate::identity(&g)]);
        assert_eq!(b.bracket, Bracket::exact(int(0)));
        let b = bounds(example2(), &[example2_fdd()]);
        assert_eq!(b.bracket, Bracket::exact(frac(2, 5)));
        let b = bounds(example3(), &[example3_fdd()]);
        assert_eq!(b.bracket, Bracket::exact(int(1)));
        let b = bounds(example4(), &[example4_fdd()]);
        assert_eq!(b.bracket, Bracket::exact(int(1)));
    }

    #[test]
    fn bounds_without_certificates_use_interleaving() {
        let b = bounds(example1(), &[]);
        assert_eq!(b.bracket.lo, Ext::Finite(frac(1, 2)));
        assert_eq!(b.bracket.hi, Ext::Finite(frac(3, 2)));
        assert!(b.certificate_upper.is_none());
    }
}
