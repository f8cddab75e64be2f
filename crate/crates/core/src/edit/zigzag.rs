//! Zigzag certificates for the universal edit distance.
//!
//! A certificate is a chain `R_1 ← X_1 → R_2 ← X_2 → … → R_n` of Reeb
//! graphs and 1-complexes with PL quotient maps. The values stored on each
//! `X_i` only parameterize its edges; the functions that matter are the
//! pullbacks `f_i ∘ p`. The cost is the largest spread `max_i f_i − min_i f_i`
//! over the iterated pullback `X_1 ×_{R_2} X_2 ×_{R_3} … X_{n-1}`.
//!
//! Every `f_i` is linear on each cell of the pullback, so the spread is
//! convex there and peaks at cell vertices. Those vertices are chains of
//! points where each run of rigidly linked coordinates contains a piece
//! endpoint; [`zigzag_cost`] enumerates exactly those chains.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::fdd::{fdd_bounds, CertError, FddError, Piece, PlMap, Target};
use crate::graph::{Point, ReebGraph};
use crate::iso::is_isomorphic;
use crate::metrics::bottleneck_graded;
use crate::persistence::extended_diagram;
use crate::uf::UnionFind;
use crate::value::{int, Bracket, Ext, Value};

use super::{edit_search, transcribe, EditSearchResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagCertificate {
    /// `R_1 … R_n`.
    pub reeb: Vec<ReebGraph>,
    /// `X_1 … X_{n-1}`.
    pub spaces: Vec<ReebGraph>,
    /// `p_{i,i}: X_i → R_i`.
    pub left: Vec<PlMap>,
    /// `p_{i,i+1}: X_i → R_{i+1}`.
    pub right: Vec<PlMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZigzagError {
    Shape,
    Map { space: usize, left: bool, error: CertError },
    /// A map misses part of its target.
    NotSurjective { space: usize, left: bool, value: Value },
    /// Some fiber has two components.
    Fiber { space: usize, left: bool, value: Value },
    Endpoint { first: bool },
    Lower(FddError),
}

impl fmt::Display for ZigzagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |l: &bool| if *l { "left" } else { "right" };
        match self {
            ZigzagError::Shape => write!(f, "zigzag needs n Reeb graphs, n-1 spaces and n-1 maps on each side"),
            ZigzagError::Map { space, left, error } => write!(f, "{} map of X_{}: {}", side(left), space + 1, error),
            ZigzagError::NotSurjective { space, left, value } => {
                write!(f, "{} map of X_{} misses its target at value {}", side(left), space + 1, value)
            }
            ZigzagError::Fiber { space, left, value } => {
                write!(f, "{} map of X_{} has a disconnected fiber at value {}", side(left), space + 1, value)
            }
            ZigzagError::Endpoint { first } => {
                write!(f, "{} Reeb graph is not isomorphic to the compared graph", if *first { "first" } else { "last" })
            }
            ZigzagError::Lower(e) => write!(f, "{}", e),
        }
    }
}

/// A map with its pieces grouped by source edge.
struct Mapped<'a> {
    src: &'a ReebGraph,
    tgt: &'a ReebGraph,
    vertex: Vec<Point>,
    pieces: Vec<Vec<Piece>>,
}

impl<'a> Mapped<'a> {
    fn new(m: &PlMap, src: &'a ReebGraph, tgt: &'a ReebGraph, left: bool) -> Result<Self, CertError> {
        let all = m.pieces(src, tgt, left)?;
        let mut pieces = alloc::vec![Vec::new(); src.edges.len()];
        for p in all {
            pieces[p.src_edge].push(p);
        }
        let vertex = m.vertex.iter().map(|&p| tgt.normalize_point(p)).collect();
        Ok(Mapped { src, tgt, vertex, pieces })
    }

    fn eval(&self, x: Point) -> Point {
        match x {
            Point::Vertex(v) => self.vertex[v],
            Point::Edge(e, t) => {
                let p = self.pieces[e].iter().find(|p| p.t0 <= t && t <= p.t1).expect("point inside its edge");
                p.target_point(self.tgt, t)
            }
        }
    }

    fn x_point(&self, e: usize, t: Value) -> Point {
        self.src.normalize_point(Point::Edge(e, t))
    }

    /// Piece ends and vertices of the source.
    fn anchors(&self) -> Vec<Point> {
        let mut out: Vec<Point> = (0..self.src.values.len()).map(Point::Vertex).collect();
        for (e, ps) in self.pieces.iter().enumerate() {
            for p in ps {
                out.push(self.x_point(e, p.t0));
                out.push(self.x_point(e, p.t1));
            }
        }
        out
    }

    /// Source parameter where a non-constant piece passes `y`.
    fn crossing(&self, p: &Piece, y: Point) -> Option<Value> {
        let Target::Edge(_, v0, v1) = p.target else { return None };
        if v0 == v1 {
            return None;
        }
        let val = self.tgt.value_of(y);
        if val < v0.min(v1) || val > v0.max(v1) {
            return None;
        }
        let t = p.t0 + (val - v0) / (v1 - v0) * (p.t1 - p.t0);
        (p.target_point(self.tgt, t) == y).then_some(t)
    }

    /// Preimage points of `y` on non-constant pieces.
    fn preimages(&self, y: Point) -> Vec<Point> {
        let mut out = Vec::new();
        for (e, ps) in self.pieces.iter().enumerate() {
            for p in ps {
                if let Some(t) = self.crossing(p, y) {
                    out.push(self.x_point(e, t));
                }
            }
        }
        out
    }

    /// Number of components of the fiber over `y` (0 if empty).
    fn fiber_components(&self, y: Point) -> usize {
        let mut ids: BTreeMap<Point, usize> = BTreeMap::new();
        let mut links = Vec::new();
        let id = |p: Point, ids: &mut BTreeMap<Point, usize>| {
            let n = ids.len();
            *ids.entry(p).or_insert(n)
        };
        for (v, &img) in self.vertex.iter().enumerate() {
            if img == y {
                id(Point::Vertex(v), &mut ids);
            }
        }
        for (e, ps) in self.pieces.iter().enumerate() {
            for p in ps {
                let constant = match p.target {
                    Target::Vertex(w) => (Point::Vertex(w) == y).then_some(()),
                    Target::Edge(te, v0, v1) => {
                        (v0 == v1 && self.tgt.normalize_point(Point::Edge(te, v0)) == y).then_some(())
                    }
                };
                if constant.is_some() {
                    let a = id(self.x_point(e, p.t0), &mut ids);
                    let b = id(self.x_point(e, p.t1), &mut ids);
                    links.push((a, b));
                } else if let Some(t) = self.crossing(p, y) {
                    id(self.x_point(e, t), &mut ids);
                }
            }
        }
        let mut uf = UnionFind::new(ids.len());
        for (a, b) in links {
            uf.union(a, b);
        }
        let keep = alloc::vec![true; ids.len()];
        uf.labels(&keep).1
    }

    /// Surjective with connected fibers, tested at every event value and
    /// between consecutive ones (fibers cannot change in between).
    fn check_quotient(&self) -> Result<(), (bool, Value)> {
        let mut vals: Vec<Value> = self.tgt.values.clone();
        for ps in &self.pieces {
            for p in ps {
                match p.target {
                    Target::Vertex(w) => vals.push(self.tgt.values[w]),
                    Target::Edge(_, v0, v1) => {
                        vals.push(v0);
                        vals.push(v1);
                    }
                }
            }
        }
        vals.sort_unstable();
        vals.dedup();
        let mut levels = vals.clone();
        levels.extend(vals.windows(2).map(|w| (w[0] + w[1]) / int(2)));
        for y in levels {
            let mut pts: Vec<Point> =
                (0..self.tgt.values.len()).filter(|&v| self.tgt.values[v] == y).map(Point::Vertex).collect();
            for (e, &(a, b)) in self.tgt.edges.iter().enumerate() {
                if self.tgt.values[a] < y && y < self.tgt.values[b] {
                    pts.push(Point::Edge(e, y));
                }
            }
            for p in pts {
                match self.fiber_components(p) {
                    0 => return Err((false, y)),
                    1 => {}
                    _ => return Err((true, y)),
                }
            }
        }
        Ok(())
    }
}

struct Checked<'a> {
    left: Vec<Mapped<'a>>,
    right: Vec<Mapped<'a>>,
}

impl ZigzagCertificate {
    /// `R ← R → R`, all identities.
    pub fn constant(g: &ReebGraph) -> Self {
        ZigzagCertificate {
            reeb: alloc::vec![g.clone(), g.clone()],
            spaces: alloc::vec![g.clone()],
            left: alloc::vec![PlMap::identity(g)],
            right: alloc::vec![PlMap::identity(g)],
        }
    }

    fn checked(&self) -> Result<Checked<'_>, ZigzagError> {
        let n = self.reeb.len();
        if n == 0 || self.spaces.len() + 1 != n || self.left.len() + 1 != n || self.right.len() + 1 != n {
            return Err(ZigzagError::Shape);
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, x) in self.spaces.iter().enumerate() {
            for (is_left, map, tgt) in [(true, &self.left[i], &self.reeb[i]), (false, &self.right[i], &self.reeb[i + 1])] {
                let m = Mapped::new(map, x, tgt, is_left).map_err(|error| ZigzagError::Map { space: i, left: is_left, error })?;
                m.check_quotient().map_err(|(fiber, value)| {
                    if fiber {
                        ZigzagError::Fiber { space: i, left: is_left, value }
                    } else {
                        ZigzagError::NotSurjective { space: i, left: is_left, value }
                    }
                })?;
                if is_left {
                    left.push(m);
                } else {
                    right.push(m);
                }
            }
        }
        Ok(Checked { left, right })
    }

    /// Checks the maps are surjective with connected fibers.
    pub fn validate(&self) -> Result<(), ZigzagError> {
        self.checked().map(|_| ())
    }

    /// Also checks the ends are `a` and `b` up to isomorphism.
    pub fn validate_between(&self, a: &ReebGraph, b: &ReebGraph) -> Result<(), ZigzagError> {
        self.validate()?;
        let same = |x: &ReebGraph, y: &ReebGraph| is_isomorphic(&x.canonicalize(), &y.canonicalize()).is_some();
        if !same(&self.reeb[0], a) {
            return Err(ZigzagError::Endpoint { first: true });
        }
        if !same(self.reeb.last().unwrap(), b) {
            return Err(ZigzagError::Endpoint { first: false });
        }
        Ok(())
    }
}

/// Candidate coordinates per space: anchors, plus their images pushed
/// through the chain in one direction.
fn candidates(c: &Checked) -> Vec<BTreeSet<Point>> {
    let k = c.left.len();
    let mut out: Vec<BTreeSet<Point>> = alloc::vec![BTreeSet::new(); k];
    for i in 0..k {
        let anchors: BTreeSet<Point> = c.left[i].anchors().into_iter().chain(c.right[i].anchors()).collect();
        out[i].extend(anchors.iter().copied());
        // rightwards
        let mut front: BTreeSet<Point> = anchors.clone();
        for j in i + 1..k {
            let mut next = BTreeSet::new();
            for &x in &front {
                next.extend(c.left[j].preimages(c.right[j - 1].eval(x)));
            }
            out[j].extend(next.iter().copied());
            front = next;
        }
        // leftwards
        let mut front = anchors;
        for j in (0..i).rev() {
            let mut next = BTreeSet::new();
            for &x in &front {
                next.extend(c.right[j].preimages(c.left[j + 1].eval(x)));
            }
            out[j].extend(next.iter().copied());
            front = next;
        }
    }
    out
}

/// `sup` of the spread over the iterated pullback, exact.
pub fn zigzag_cost(z: &ZigzagCertificate) -> Result<Value, ZigzagError> {
    let c = z.checked()?;
    let k = c.left.len();
    if k == 0 {
        return Ok(Value::default());
    }
    let cand = candidates(&c);
    // index candidates of X_{i} by their left image
    let by_left: Vec<BTreeMap<Point, Vec<Point>>> = (0..k)
        .map(|i| {
            let mut m: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
            for &x in &cand[i] {
                m.entry(c.left[i].eval(x)).or_default().push(x);
            }
            m
        })
        .collect();

    fn walk(c: &Checked, by_left: &[BTreeMap<Point, Vec<Point>>], i: usize, x: Point, lo: Value, hi: Value, best: &mut Value) {
        let y = c.right[i].eval(x);
        let v = c.right[i].tgt.value_of(y);
        let (lo, hi) = (lo.min(v), hi.max(v));
        if i + 1 == by_left.len() {
            if hi - lo > *best {
                *best = hi - lo;
            }
            return;
        }
        if let Some(next) = by_left[i + 1].get(&y) {
            for &x2 in next {
                walk(c, by_left, i + 1, x2, lo, hi, best);
            }
        }
    }

    let mut best = Value::default();
    for &x in &cand[0] {
        let v = c.left[0].tgt.value_of(c.left[0].eval(x));
        walk(&c, &by_left, 0, x, v, v, &mut best);
    }
    Ok(best)
}

/// Fiber product of two maps into a common graph, as a 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    /// Point pairs `(x1, x2)` with equal images.
    pub points: Vec<(Point, Point)>,
    /// Value of the common image.
    pub values: Vec<Value>,
    pub edges: Vec<(usize, usize)>,
}

impl Pullback {
    /// As a Reeb graph, when no edge is flat.
    pub fn to_graph(&self) -> Option<ReebGraph> {
        ReebGraph::from_parts(self.values.clone(), &self.edges).ok()
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.values.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.labels(&alloc::vec![true; self.values.len()]).1
    }
}

/// Cells of a refined source edge between consecutive candidates.
fn segments(m: &Mapped, pts: &BTreeSet<Point>) -> Vec<(Point, Point)> {
    let mut out = Vec::new();
    for (e, &(a, b)) in m.src.edges.iter().enumerate() {
        let mut ts: Vec<Value> = alloc::vec![m.src.values[a], m.src.values[b]];
        for p in pts {
            if let Point::Edge(pe, t) = *p {
                if pe == e {
                    ts.push(t);
                }
            }
        }
        ts.sort_unstable();
        ts.dedup();
        for w in ts.windows(2) {
            out.push((m.x_point(e, w[0]), m.x_point(e, w[1])));
        }
    }
    out
}

/// `X_1 ×_R X_2` for `pa: X_1 → R` and `pb: X_2 → R`.
pub fn pullback(
    x1: &ReebGraph,
    pa: &PlMap,
    x2: &ReebGraph,
    pb: &PlMap,
    r: &ReebGraph,
) -> Result<Pullback, ZigzagError> {
    let ma = Mapped::new(pa, x1, r, true).map_err(|error| ZigzagError::Map { space: 0, left: true, error })?;
    let mb = Mapped::new(pb, x2, r, false).map_err(|error| ZigzagError::Map { space: 1, left: false, error })?;
    let mut ca: BTreeSet<Point> = ma.anchors().into_iter().collect();
    let mut cb: BTreeSet<Point> = mb.anchors().into_iter().collect();
    let a0: Vec<Point> = ca.iter().copied().collect();
    let b0: Vec<Point> = cb.iter().copied().collect();
    for x in a0 {
        cb.extend(mb.preimages(ma.eval(x)));
    }
    for x in b0 {
        ca.extend(ma.preimages(mb.eval(x)));
    }
    let mut index: BTreeMap<(Point, Point), usize> = BTreeMap::new();
    let mut out = Pullback { points: Vec::new(), values: Vec::new(), edges: Vec::new() };
    let mut b_by_img: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    for &x in &cb {
        b_by_img.entry(mb.eval(x)).or_default().push(x);
    }
    for &x in &ca {
        let y = ma.eval(x);
        for &w in b_by_img.get(&y).map(|v| v.as_slice()).unwrap_or(&[]) {
            index.insert((x, w), out.points.len());
            out.points.push((x, w));
            out.values.push(r.value_of(y));
        }
    }
    let (sa, sb) = (segments(&ma, &ca), segments(&mb, &cb));
    let mut edges = BTreeSet::new();
    let mut link = |p: (Point, Point), q: (Point, Point)| {
        if let (Some(&i), Some(&j)) = (index.get(&p), index.get(&q)) {
            if i != j {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    };
    let constant = |m: &Mapped, s: &(Point, Point)| m.eval(s.0) == m.eval(s.1);
    for s in &sa {
        let ca_s = constant(&ma, s);
        if ca_s {
            // segment over a point: pair it with every point over that point
            let y = ma.eval(s.0);
            for &w in b_by_img.get(&y).map(|v| v.as_slice()).unwrap_or(&[]) {
                link((s.0, w), (s.1, w));
            }
        }
        for u in &sb {
            if ca_s || constant(&mb, u) {
                continue;
            }
            // both move: the segments ride together when their ends match
            let mid_a = ma.eval(mid(&ma, s));
            let mid_b = mb.eval(mid(&mb, u));
            if mid_a != mid_b {
                continue;
            }
            if ma.eval(s.0) == mb.eval(u.0) {
                link((s.0, u.0), (s.1, u.1));
            } else {
                link((s.0, u.1), (s.1, u.0));
            }
        }
    }
    for u in &sb {
        if constant(&mb, u) {
            let y = mb.eval(u.0);
            for &x in &ca {
                if ma.eval(x) == y {
                    link((x, u.0), (x, u.1));
                }
            }
        }
    }
    out.edges = edges.into_iter().collect();
    Ok(out)
}

fn mid(m: &Mapped, s: &(Point, Point)) -> Point {
    let e = match (s.0, s.1) {
        (Point::Edge(e, _), _) | (_, Point::Edge(e, _)) => e,
        (Point::Vertex(a), Point::Vertex(b)) => {
            m.src.edges.iter().position(|&(x, y)| (x, y) == (a.min(b), a.max(b)) || (x, y) == (a, b) || (x, y) == (b, a)).unwrap()
        }
    };
    let t = |p: Point| m.src.value_of(p);
    Point::Edge(e, (t(s.0) + t(s.1)) / int(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalBounds {
    pub bracket: Bracket,
    pub bottleneck: Value,
    /// Cost of each supplied certificate, in order.
    pub certificate_costs: Vec<Value>,
    /// Cost of the zigzag transcribed from the edit search, if any.
    pub transcribed: Option<Value>,
    /// Cost of collapsing both graphs to a point.
    pub collapse: Option<Value>,
}

/// `R_f ← R_f → • ← R_g → R_g`.
pub fn collapse_zigzag(a: &ReebGraph, b: &ReebGraph) -> Option<ZigzagCertificate> {
    if a.component_count() != 1 || b.component_count() != 1 {
        return None;
    }
    let mid = a.values[0];
    let point = ReebGraph { values: alloc::vec![mid], edges: Vec::new() };
    let to_point = |g: &ReebGraph| PlMap {
        vertex: alloc::vec![Point::Vertex(0); g.values.len()],
        edge: alloc::vec![Vec::new(); g.edges.len()],
    };
    Some(ZigzagCertificate {
        reeb: alloc::vec![a.clone(), point, b.clone()],
        spaces: alloc::vec![a.clone(), b.clone()],
        left: alloc::vec![PlMap::identity(a), to_point(b)],
        right: alloc::vec![to_point(a), PlMap::identity(b)],
    })
}

/// Bracket for `δ_E`: below by every stable distance we can bound, above
/// by the cheapest available zigzag.
pub fn universal_bounds(
    a: &ReebGraph,
    b: &ReebGraph,
    certs: &[ZigzagCertificate],
    tol: Value,
    budget: u64,
) -> Result<UniversalBounds, ZigzagError> {
    if a.component_count() != b.component_count() {
        return Ok(UniversalBounds {
            bracket: Bracket::infinite(),
            bottleneck: Value::default(),
            certificate_costs: Vec::new(),
            transcribed: None,
            collapse: None,
        });
    }
    let fb = fdd_bounds(a, b, &[], tol, budget).map_err(ZigzagError::Lower)?;
    let search = edit_search(a, b, budget).ok();
    universal_bounds_with(a, b, certs, fb.bracket.lo, search.as_ref())
}

/// [`universal_bounds`] from a known lower bound and an optional edit
/// search result.
pub fn universal_bounds_with(
    a: &ReebGraph,
    b: &ReebGraph,
    certs: &[ZigzagCertificate],
    lower: Ext,
    search: Option<&EditSearchResult>,
) -> Result<UniversalBounds, ZigzagError> {
    if a.component_count() != b.component_count() {
        return Ok(UniversalBounds {
            bracket: Bracket::infinite(),
            bottleneck: Value::default(),
            certificate_costs: Vec::new(),
            transcribed: None,
            collapse: None,
        });
    }
    let bottleneck = match (extended_diagram(a), extended_diagram(b)) {
        (Ok(x), Ok(y)) => bottleneck_graded(&x, &y),
        _ => Value::default(),
    };
    let lo = lower.max(Ext::Finite(bottleneck));
    let mut hi = Ext::Infinite;
    let mut certificate_costs = Vec::new();
    for z in certs {
        z.validate_between(a, b)?;
        let c = zigzag_cost(z)?;
        certificate_costs.push(c);
        hi = hi.min(Ext::Finite(c));
    }
    let collapse = match collapse_zigzag(a, b) {
        Some(z) => Some(zigzag_cost(&z)?),
        None => None,
    };
    if let Some(c) = collapse {
        hi = hi.min(Ext::Finite(c));
    }
    let mut transcribed = None;
    if let Some(res) = search {
        if let Some(seq) = &res.sequence {
            if let Ok(z) = transcribe(seq, seq.concrete_delta()) {
                let c = zigzag_cost(&z)?;
                transcribed = Some(c);
                hi = hi.min(Ext::Finite(c));
            }
        }
    }
    Ok(UniversalBounds { bracket: Bracket { lo, hi }, bottleneck, certificate_costs, transcribed, collapse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::{quotient_map, transcribe};
    use crate::fixtures;
    use crate::value::frac;

    fn tol() -> Value {
        crate::interleaving::default_tol()
    }

    #[test]
    fn constant_zigzag_is_free() {
        for g in [fixtures::fig4(), fixtures::example1().0, fixtures::torus_graph()] {
            let z = ZigzagCertificate::constant(&g);
            z.validate_between(&g, &g).unwrap();
            assert_eq!(zigzag_cost(&z).unwrap(), Value::default());
        }
        let single = ZigzagCertificate { reeb: alloc::vec![fixtures::fig4()], spaces: Vec::new(), left: Vec::new(), right: Vec::new() };
        assert_eq!(zigzag_cost(&single).unwrap(), Value::default());
    }

    #[test]
    fn example_certificates() {
        let (f, g) = fixtures::example1();
        let z = fixtures::example1_zigzag();
        z.validate_between(&f, &g).unwrap();
        assert_eq!(zigzag_cost(&z).unwrap(), int(1));

        let (f, g) = fixtures::example2();
        let z = transcribe(&fixtures::example2_sequence(), frac(1, 100)).unwrap();
        z.validate_between(&f, &g).unwrap();
        assert_eq!(zigzag_cost(&z).unwrap(), frac(2, 5));

        let (f, g) = fixtures::example3();
        let z = fixtures::example3_zigzag();
        z.validate_between(&f, &g).unwrap();
        assert_eq!(zigzag_cost(&z).unwrap(), int(1));

        let (f, g) = fixtures::example4();
        let z = transcribe(&fixtures::example4_sequence(), frac(1, 100)).unwrap();
        z.validate_between(&f, &g).unwrap();
        assert_eq!(zigzag_cost(&z).unwrap(), int(1));
    }

    #[test]
    fn transcribed_k_moves_and_births() {
        let (f, g) = fixtures::example1();
        let d = frac(1, 1000);
        for (s, slack) in [(fixtures::example1_s1(), 4), (fixtures::example1_s2(), 4)] {
            let z = transcribe(&s, d).unwrap();
            z.validate_between(&f, &g).unwrap();
            let c = zigzag_cost(&z).unwrap();
            assert!(c >= int(1) && c <= int(1) + d * int(slack), "{}", c);
        }
    }

    #[test]
    fn remark_bug_keeps_full_cost() {
        let a = int(2);
        for k in [1, 2, 4, 8] {
            let s = fixtures::remark_bug(a, k);
            let z = transcribe(&s, s.concrete_delta()).unwrap();
            z.validate().unwrap();
            assert_eq!(zigzag_cost(&z).unwrap(), a);
            assert_eq!(s.vertex_tracking_cost().unwrap().std, a / int(k as i128));
        }
    }

    #[test]
    fn quotient_checks() {
        // a loop folded onto a path has two-point fibers
        let t = fixtures::torus_graph();
        let path = ReebGraph::from_parts(t.values.clone(), &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let v = |i| Point::Vertex(i);
        let fold = quotient_map(&t, &path, &[v(0), v(1), v(2), v(3)], &[Some(0), Some(1), Some(1), Some(2)]);
        let z = ZigzagCertificate {
            reeb: alloc::vec![t.clone(), path.clone()],
            spaces: alloc::vec![t.clone()],
            left: alloc::vec![PlMap::identity(&t)],
            right: alloc::vec![fold],
        };
        assert!(matches!(z.validate(), Err(ZigzagError::Fiber { left: false, .. })));
        // missing the top edge
        let short = quotient_map(&path, &path, &[v(0), v(1), v(2), v(2)], &[Some(0), Some(1), None]);
        let z = ZigzagCertificate {
            reeb: alloc::vec![path.clone(), path.clone()],
            spaces: alloc::vec![path.clone()],
            left: alloc::vec![PlMap::identity(&path)],
            right: alloc::vec![short],
        };
        assert!(matches!(z.validate(), Err(ZigzagError::NotSurjective { .. })));
        let (f, g) = fixtures::example1();
        assert_eq!(ZigzagCertificate::constant(&f).validate_between(&f, &g), Err(ZigzagError::Endpoint { first: false }));
    }

    #[test]
    fn pullback_of_identities_is_the_diagonal() {
        for g in [fixtures::fig4(), fixtures::torus_graph(), fixtures::example3().0] {
            let id = PlMap::identity(&g);
            let p = pullback(&g, &id, &g, &id, &g).unwrap();
            assert!(p.points.iter().all(|(x, y)| x == y));
            let pg = p.to_graph().unwrap();
            assert!(is_isomorphic(&pg.canonicalize(), &g.canonicalize()).is_some());
        }
    }

    #[test]
    fn pullback_of_two_strands() {
        // two parallel strands over one edge, against the identity of that edge
        let strands = ReebGraph::from_parts(alloc::vec![int(0), int(1), int(0), int(1)], &[(0, 1), (2, 3)]).unwrap();
        let edge = ReebGraph::from_parts(alloc::vec![int(0), int(1)], &[(0, 1)]).unwrap();
        let v = |i| Point::Vertex(i);
        let down = quotient_map(&strands, &edge, &[v(0), v(1), v(0), v(1)], &[Some(0), Some(0)]);
        let p = pullback(&strands, &down, &edge, &PlMap::identity(&edge), &edge).unwrap();
        assert_eq!(p.component_count(), 2);
        // the quotient map breaks each strand at its midpoint
        assert_eq!(p.points.len(), 6);
        assert_eq!(p.edges.len(), p.points.len() - 2);
    }

    #[test]
    fn pullback_realizes_the_example1_spread() {
        // X_1 ×_{R_2} X_1 over the Example 1 right map: every pair sits over
        // one point, and the spread of the certificate is attained there.
        let z = fixtures::example1_zigzag();
        let p = pullback(&z.spaces[0], &z.right[0], &z.spaces[0], &z.right[0], &z.reeb[1]).unwrap();
        assert!(p.points.len() >= z.spaces[0].values.len());
        assert!(p.points.iter().any(|(x, y)| x != y));
    }

    #[test]
    fn universal_bracket() {
        let f = fixtures::fig4();
        let u = universal_bounds(&f, &f, &[], tol(), crate::interleaving::DEFAULT_BUDGET).unwrap();
        assert_eq!(u.bracket, Bracket::exact(Value::default()));

        let (f, g) = fixtures::example4();
        let z = transcribe(&fixtures::example4_sequence(), frac(1, 100)).unwrap();
        let u = universal_bounds(&f, &g, &[z], tol(), crate::interleaving::DEFAULT_BUDGET).unwrap();
        assert_eq!(u.bracket.hi, Ext::Finite(int(1)));
        assert!(u.bracket.lo <= u.bracket.hi);

        let (f, g) = fixtures::example3();
        let u = universal_bounds(&f, &g, &[fixtures::example3_zigzag()], tol(), crate::interleaving::DEFAULT_BUDGET).unwrap();
        assert_eq!(u.bracket, Bracket::exact(int(1)));

        let two = f.disjoint_union(&f);
        let u = universal_bounds(&f, &two, &[], tol(), crate::interleaving::DEFAULT_BUDGET).unwrap();
        assert_eq!(u.bracket, Bracket::infinite());
    }
}
