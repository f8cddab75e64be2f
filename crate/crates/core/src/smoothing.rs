//! Reeb smoothing `U_ε`, truncation `T^τ` and the maps between them.

use alloc::vec::Vec;
use core::fmt;

use crate::field::{build_reeb, BuildOptions, ScalarField};
use crate::graph::{Graph, ReebGraph};
use crate::levels::{merge_grid, window_components, LevelError, LeveledGraph, LeveledMap, MapError, Slot};
use crate::value::{half, int, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothError {
    NegativeEps,
    NegativeTau,
    TauAboveTwiceEps,
    Level(LevelError),
    Map(MapError),
}

impl fmt::Display for SmoothError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothError::NegativeEps => f.write_str("smoothing parameter must be non-negative"),
            SmoothError::NegativeTau => f.write_str("truncation parameter must be non-negative"),
            SmoothError::TauAboveTwiceEps => {
                f.write_str("truncated smoothing needs tau <= 2 eps; larger tau is not functorial")
            }
            SmoothError::Level(e) => write!(f, "{}", e),
            SmoothError::Map(e) => write!(f, "input map: {}", e),
        }
    }
}

impl From<LevelError> for SmoothError {
    fn from(e: LevelError) -> Self {
        SmoothError::Level(e)
    }
}

#[derive(Clone, Debug)]
pub struct SmoothingResult {
    pub graph: ReebGraph,
    /// Grid used for the natural map.
    pub grid: Vec<Value>,
    /// `ι_ε`, from the subdivision of the input to the leveled smoothing.
    pub source: LeveledGraph,
    pub target: LeveledGraph,
    pub forward_map: LeveledMap,
}

/// `graph × [-ε, ε]` valued by `f(x) + t`. Parallel edges are split at
/// their midpoints first so the prisms are simplicial; each prism is two
/// triangles, on which `f + t` is affine.
pub fn product_field(g: &ReebGraph, eps: Value) -> ScalarField {
    let s = g.subdivide_midpoints();
    let n = s.values.len();
    let mut values = Vec::with_capacity(2 * n);
    for &v in &s.values {
        values.push(v - eps);
        values.push(v + eps);
    }
    let (lo, hi) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
    let mut tris = Vec::with_capacity(2 * s.edges.len());
    for &(a, b) in &s.edges {
        tris.push([lo(a), lo(b), hi(b)]);
        tris.push([lo(a), hi(a), hi(b)]);
    }
    let verticals: Vec<(usize, usize)> = (0..n).map(|v| (lo(v), hi(v))).collect();
    ScalarField::from_triangles(values, &tris, &verticals)
}

/// Grid on which `U_ε(g)` and the map `ι_ε` are exact.
pub fn smoothing_grid(graphs: &[&ReebGraph], eps: Value, extra: &[Value]) -> Vec<Value> {
    let mut all = extra.to_vec();
    for g in graphs {
        for c in g.critical_values() {
            all.extend([c - eps, c, c + eps]);
        }
    }
    merge_grid(all)
}

pub fn smooth(g: &ReebGraph, eps: Value) -> Result<SmoothingResult, SmoothError> {
    if eps < Value::default() {
        return Err(SmoothError::NegativeEps);
    }
    let graph = if eps == Value::default() {
        g.canonicalize()
    } else {
        build_reeb(&product_field(g, eps), BuildOptions { allow_ties: true })
            .expect("product complex is valid")
    };
    let grid = smoothing_grid(&[g], eps, &[]);
    let source = LeveledGraph::subdivide(g, &grid)?;
    let target = LeveledGraph::interlevel(g, eps, &grid)?;
    let forward_map = natural_map(g, &source, &target);
    Ok(SmoothingResult { graph, grid, source, target, forward_map })
}

/// The inclusion-induced map from a thinner to a thicker leveled encoding
/// of the same graph on the same grid: every element goes to the component
/// of the wider window that contains it.
pub fn natural_map(g: &ReebGraph, src: &LeveledGraph, tgt: &LeveledGraph) -> LeveledMap {
    let mut map = LeveledMap { nodes: Vec::new(), strands: Vec::new() };
    for s in src.slots() {
        let h = tgt.height(s);
        let w = window_components(g, h - tgt.eps, h + tgt.eps);
        let table = slot_table(tgt, s, &w);
        let img: Vec<usize> = (0..src.slot_len(s)).map(|k| table[w.of(src.rep(s, k)).unwrap() as usize]).collect();
        match s {
            Slot::Level(_) => map.nodes.push(img),
            Slot::Slab(_) => map.strands.push(img),
        }
    }
    map
}

/// Window component id → element index in a slot.
fn slot_table(lg: &LeveledGraph, s: Slot, w: &crate::levels::WindowComps) -> Vec<usize> {
    let mut t = alloc::vec![usize::MAX; w.count];
    for k in 0..lg.slot_len(s) {
        t[w.of(lg.rep(s, k)).unwrap() as usize] = k;
    }
    t
}

/// Per-vertex maximal value reachable by a monotone path up (`true`) or
/// down (`false`).
pub fn reach(g: &ReebGraph, up: bool) -> Vec<Value> {
    let n = g.values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.values[v]);
    if up {
        order.reverse();
    }
    let inc = g.incidence();
    let mut r = g.values.clone();
    for &v in &order {
        for &e in &inc[v] {
            let (a, b) = g.edges[e];
            if up && a == v {
                r[v] = r[v].max(r[b]);
            }
            if !up && b == v {
                r[v] = r[v].min(r[a]);
            }
        }
    }
    r
}

/// `T^τ`: keeps the points with a monotone path of height `τ` both up and
/// down.
pub fn truncate(g: &ReebGraph, tau: Value) -> Result<ReebGraph, SmoothError> {
    if tau < Value::default() {
        return Err(SmoothError::NegativeTau);
    }
    let (up, down) = (reach(g, true), reach(g, false));
    let n = g.values.len();
    let mut out: ReebGraph = Graph::new();
    let mut id = alloc::vec![usize::MAX; n];
    for v in 0..n {
        if up[v] - g.values[v] >= tau && g.values[v] - down[v] >= tau {
            id[v] = out.add_vertex(g.values[v]);
        }
    }
    for &(a, b) in &g.edges {
        let lo = g.values[a].max(down[a] + tau);
        let hi = g.values[b].min(up[b] - tau);
        if lo > hi {
            continue;
        }
        let bottom = if lo == g.values[a] { id[a] } else { usize::MAX };
        let top = if hi == g.values[b] { id[b] } else { usize::MAX };
        if lo == hi {
            if bottom == usize::MAX && top == usize::MAX {
                out.add_vertex(lo);
            }
            continue;
        }
        let bottom = if bottom == usize::MAX { out.add_vertex(lo) } else { bottom };
        let top = if top == usize::MAX { out.add_vertex(hi) } else { top };
        out.add_edge(bottom, top);
    }
    Ok(out.canonicalize())
}

/// `S^τ_ε = T^τ ∘ U_ε`, defined for `0 <= τ <= 2ε`.
pub fn truncated_smooth(g: &ReebGraph, eps: Value, tau: Value) -> Result<ReebGraph, SmoothError> {
    if tau < Value::default() {
        return Err(SmoothError::NegativeTau);
    }
    if tau > eps * int(2) {
        return Err(SmoothError::TauAboveTwiceEps);
    }
    truncate(&smooth(g, eps)?.graph, tau)
}

/// Elements of a leveled graph that survive truncation by `τ`. Exact when
/// the grid holds every node level `± τ`.
pub fn truncation_mask(lg: &LeveledGraph, tau: Value) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let n = lg.levels.len();
    let mut up: Vec<Vec<Value>> = (0..n).map(|i| alloc::vec![lg.levels[i]; lg.nodes[i].len()]).collect();
    let mut down = up.clone();
    for i in (0..n.saturating_sub(1)).rev() {
        for s in &lg.strands[i] {
            let u = up[i + 1][s.upper];
            if u > up[i][s.lower] {
                up[i][s.lower] = u;
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        for s in &lg.strands[i] {
            let d = down[i][s.lower];
            if d < down[i + 1][s.upper] {
                down[i + 1][s.upper] = d;
            }
        }
    }
    let nodes = (0..n)
        .map(|i| {
            (0..lg.nodes[i].len())
                .map(|k| up[i][k] - lg.levels[i] >= tau && lg.levels[i] - down[i][k] >= tau)
                .collect()
        })
        .collect();
    let strands = (0..n.saturating_sub(1))
        .map(|i| {
            let m = half(lg.levels[i] + lg.levels[i + 1]);
            lg.strands[i]
                .iter()
                .map(|s| up[i + 1][s.upper] - m >= tau && m - down[i][s.lower] >= tau)
                .collect()
        })
        .collect();
    (nodes, strands)
}

/// The kept part of a masked leveled graph as a Reeb graph.
pub fn masked_reeb(lg: &LeveledGraph, mask: &(Vec<Vec<bool>>, Vec<Vec<bool>>)) -> ReebGraph {
    let mut g: ReebGraph = Graph::new();
    let mut ids: Vec<Vec<usize>> = Vec::new();
    for (i, ns) in lg.nodes.iter().enumerate() {
        ids.push(
            (0..ns.len())
                .map(|k| if mask.0[i][k] { g.add_vertex(lg.levels[i]) } else { usize::MAX })
                .collect(),
        );
    }
    for (i, ss) in lg.strands.iter().enumerate() {
        for (k, s) in ss.iter().enumerate() {
            if mask.1[i][k] {
                g.add_edge(ids[i][s.lower], ids[i + 1][s.upper]);
            }
        }
    }
    g.canonicalize()
}

/// `S_ε[α]`: the image of a level-preserving map `α: A → B` (given on the
/// subdivisions `src`, `tgt` of a shared grid) as a map between the leveled
/// smoothings on `out_grid`.
pub fn smoothing_image(
    a: &ReebGraph,
    b: &ReebGraph,
    src: &LeveledGraph,
    tgt: &LeveledGraph,
    map: &LeveledMap,
    eps: Value,
    out_grid: &[Value],
) -> Result<(LeveledGraph, LeveledGraph, LeveledMap), SmoothError> {
    if eps < Value::default() {
        return Err(SmoothError::NegativeEps);
    }
    map.validate(src, tgt).map_err(SmoothError::Map)?;
    let sa = LeveledGraph::interlevel(a, eps, out_grid)?;
    let sb = LeveledGraph::interlevel(b, eps, out_grid)?;
    let mut out = LeveledMap { nodes: Vec::new(), strands: Vec::new() };
    for s in sa.slots() {
        let h = sa.height(s);
        let (lo, hi) = (h - eps, h + eps);
        let wa = window_components(a, lo, hi);
        let wb = window_components(b, lo, hi);
        let table_b = slot_table(&sb, s, &wb);
        let mut img = Vec::with_capacity(sa.slot_len(s));
        for k in 0..sa.slot_len(s) {
            let cid = wa.of(sa.rep(s, k)).unwrap();
            let y = preimage_rep(src, tgt, map, &wa, cid, lo, hi).expect("every window component meets the grid");
            img.push(table_b[wb.of(y).unwrap() as usize]);
        }
        match s {
            Slot::Level(_) => out.nodes.push(img),
            Slot::Slab(_) => out.strands.push(img),
        }
    }
    Ok((sa, sb, out))
}

/// Some source element inside window component `cid`, pushed through `map`;
/// returns the target atom carrying the image point.
fn preimage_rep(
    src: &LeveledGraph,
    tgt: &LeveledGraph,
    map: &LeveledMap,
    wa: &crate::levels::WindowComps,
    cid: u32,
    lo: Value,
    hi: Value,
) -> Option<crate::levels::Atom> {
    for (i, &l) in src.levels.iter().enumerate() {
        if l < lo || l > hi {
            continue;
        }
        for (k, &rep) in src.nodes[i].iter().enumerate() {
            if wa.of(rep) == Some(cid) {
                return Some(tgt.nodes[i][map.nodes[i][k]]);
            }
        }
    }
    for i in 0..src.strands.len() {
        let (l0, l1) = (src.levels[i], src.levels[i + 1]);
        if !(l0 < hi && l1 > lo) {
            continue;
        }
        for (k, s) in src.strands[i].iter().enumerate() {
            if wa.of(s.rep) == Some(cid) {
                return Some(tgt.strands[i][map.strands[i][k]].rep);
            }
        }
    }
    None
}

/// The map `η: S^τ_ε → S^τ'_ε'` for `0 <= τ' - τ <= ε' - ε`, on `grid`.
/// Returns the leveled source, target and the map; fails if an image
/// leaves the truncated target.
pub fn eta_map(
    g: &ReebGraph,
    eps: Value,
    tau: Value,
    eps2: Value,
    tau2: Value,
    grid: &[Value],
) -> Result<(LeveledGraph, LeveledGraph, LeveledMap), SmoothError> {
    let src = LeveledGraph::interlevel(g, eps, grid)?;
    let tgt = LeveledGraph::interlevel(g, eps2, grid)?;
    let map = natural_map(g, &src, &tgt);
    let ms = truncation_mask(&src, tau);
    let mt = truncation_mask(&tgt, tau2);
    for (i, row) in map.nodes.iter().enumerate() {
        for (k, &img) in row.iter().enumerate() {
            if ms.0[i][k] && !mt.0[i][img] {
                return Err(SmoothError::Map(MapError::OutOfRange(Slot::Level(i), k)));
            }
        }
    }
    for (i, row) in map.strands.iter().enumerate() {
        for (k, &img) in row.iter().enumerate() {
            if ms.1[i][k] && !mt.1[i][img] {
                return Err(SmoothError::Map(MapError::OutOfRange(Slot::Slab(i), k)));
            }
        }
    }
    map.validate(&src, &tgt).map_err(SmoothError::Map)?;
    Ok((src, tgt, map))
}

/// Grid for truncated smoothings: node levels `c ± ε` shifted by `± τ`.
pub fn truncation_grid(graphs: &[&ReebGraph], eps: Value, tau: Value) -> Vec<Value> {
    let base = smoothing_grid(graphs, eps, &[]);
    let mut all = base.clone();
    for &x in &base {
        all.extend([x - tau, x + tau]);
    }
    merge_grid(all)
}
