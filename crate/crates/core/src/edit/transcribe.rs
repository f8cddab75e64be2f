//! Edit sequence → zigzag, at a concrete `δ`.
//!
//! * Relabel: `G ← G → G'` with identity structure.
//! * Birth/Death, insert/delete: the larger graph maps identically onto
//!   itself and collapses the extra leaf, edge or loop onto the smaller one
//!   (leaves and loops to their mid-height, clamped into the host edge).
//! * K-moves and slides: both graphs collapse the edge joining the two
//!   moving vertices into one shared graph. A relabel first brings the pair
//!   as close together as it ends up.

use alloc::vec::Vec;

use super::zigzag::ZigzagCertificate;
use super::{at_delta, remove, Deformation, EditError, EditSequence};
use crate::fdd::PlMap;
use crate::graph::{Point, ReebGraph};
use crate::value::{int, Value};

/// Map `src → tgt` from vertex images and, per edge, the target edge it runs
/// along (`None` collapses it).
pub fn quotient_map(src: &ReebGraph, tgt: &ReebGraph, vimg: &[Point], eimg: &[Option<usize>]) -> PlMap {
    let vertex: Vec<Point> = vimg.iter().map(|&p| tgt.normalize_point(p)).collect();
    let edge = src
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| match eimg[e] {
            Some(te) if vertex[a] != vertex[b] => {
                let t = (src.values[a] + src.values[b]) / int(2);
                let y = (tgt.value_of(vertex[a]) + tgt.value_of(vertex[b])) / int(2);
                alloc::vec![(t, Point::Edge(te, y))]
            }
            _ => Vec::new(),
        })
        .collect();
    PlMap { vertex, edge }
}

fn identity(g: &ReebGraph) -> PlMap {
    let vimg: Vec<Point> = (0..g.values.len()).map(Point::Vertex).collect();
    let eimg: Vec<Option<usize>> = (0..g.edges.len()).map(Some).collect();
    quotient_map(g, g, &vimg, &eimg)
}

/// Same structure, new values.
fn restructure(src: &ReebGraph, tgt: &ReebGraph) -> PlMap {
    let vimg: Vec<Point> = (0..src.values.len()).map(Point::Vertex).collect();
    let eimg: Vec<Option<usize>> = (0..src.edges.len()).map(Some).collect();
    quotient_map(src, tgt, &vimg, &eimg)
}

fn edge_map(n: usize, removed: &[usize]) -> Vec<Option<usize>> {
    let mut k = 0;
    (0..n)
        .map(|e| {
            if removed.contains(&e) {
                None
            } else {
                k += 1;
                Some(k - 1)
            }
        })
        .collect()
}

fn clamp(x: Value, lo: Value, hi: Value) -> Value {
    x.max(lo.min(hi)).min(lo.max(hi))
}

struct Builder {
    z: ZigzagCertificate,
}

impl Builder {
    fn push(&mut self, x: ReebGraph, left: PlMap, right: PlMap, r: ReebGraph) {
        self.z.spaces.push(x);
        self.z.left.push(left);
        self.z.right.push(right);
        self.z.reeb.push(r);
    }

    fn relabel(&mut self, g: &ReebGraph, h: &ReebGraph) {
        self.push(g.clone(), identity(g), restructure(g, h), h.clone());
    }

    /// `big` collapses onto `small`: `vimg`/`eimg` describe `big → small`.
    /// `grow` says the step goes small → big.
    fn collapse(&mut self, small: &ReebGraph, big: &ReebGraph, vimg: &[Point], eimg: &[Option<usize>], grow: bool) {
        let down = quotient_map(big, small, vimg, eimg);
        if grow {
            self.push(big.clone(), down, identity(big), big.clone());
        } else {
            self.push(big.clone(), identity(big), down, small.clone());
        }
    }
}

/// `g` with edge `k` contracted to one vertex at `mu`. Returns the graph
/// and the vertex and edge maps.
fn contract(g: &ReebGraph, k: usize, mu: Value) -> Option<(ReebGraph, Vec<Point>, Vec<Option<usize>>)> {
    // keep the smaller index so both ends of a move agree on numbering
    let (p, q) = (g.edges[k].0.min(g.edges[k].1), g.edges[k].0.max(g.edges[k].1));
    let mut h = g.clone();
    h.values[p] = mu;
    for (e, x) in h.edges.iter_mut().enumerate() {
        if e != k {
            if x.0 == q {
                x.0 = p;
            }
            if x.1 == q {
                x.1 = p;
            }
        }
    }
    let (h, vmap) = remove(&h, &[q], &[k]);
    let h = ReebGraph::from_parts(h.values, &h.edges).ok()?;
    let vimg = (0..g.values.len()).map(|v| Point::Vertex(vmap[if v == q { p } else { v }].unwrap())).collect();
    Some((h, vimg, edge_map(g.edges.len(), &[k])))
}

fn valid(g: &ReebGraph) -> bool {
    let mut v = g.values.clone();
    v.sort_unstable();
    g.edges.iter().all(|&(a, b)| g.values[a] < g.values[b]) && v.windows(2).all(|w| w[0] < w[1])
}

/// Zigzag for `seq` with `δ` replaced by `delta`.
pub fn transcribe(seq: &EditSequence, delta: Value) -> Result<ZigzagCertificate, EditError> {
    let states = seq.replay()?;
    let conc: Vec<ReebGraph> = states.iter().map(|s| at_delta(&s.graph, delta)).collect();
    let mut b = Builder {
        z: ZigzagCertificate { reeb: alloc::vec![conc[0].clone()], spaces: Vec::new(), left: Vec::new(), right: Vec::new() },
    };
    let fail = |index: usize, kind, reason| EditError::Step { index, error: super::StepError { kind, reason } };
    for (i, step) in seq.steps.iter().enumerate() {
        let (g, h) = (&conc[i], &conc[i + 1]);
        let sym = &states[i].graph;
        match step {
            Deformation::Relabel { .. } => b.relabel(g, h),
            Deformation::Birth { edge, .. } => {
                // h = g + root, tip; g's edge runs (a, root) then (root, b)
                let (r, t) = (g.values.len(), g.values.len() + 1);
                let (x, y) = g.edges[*edge];
                let c = clamp((h.values[r] + h.values[t]) / int(2), g.values[x], g.values[y]);
                let mut vimg: Vec<Point> = (0..g.values.len()).map(Point::Vertex).collect();
                vimg.push(Point::Edge(*edge, c));
                vimg.push(Point::Edge(*edge, c));
                let mut eimg: Vec<Option<usize>> = (0..g.edges.len()).map(Some).collect();
                eimg.push(Some(*edge));
                eimg.push(None);
                b.collapse(g, h, &vimg, &eimg, true);
            }
            Deformation::Death { tip } => {
                let inc = sym.incidence();
                let l = inc[*tip][0];
                let r = if g.edges[l].0 == *tip { g.edges[l].1 } else { g.edges[l].0 };
                let rest: Vec<usize> = inc[r].iter().copied().filter(|&e| e != l).collect();
                let (down, up) = if g.edges[rest[0]].1 == r { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
                let emap = edge_map(g.edges.len(), &[l, up]);
                let merged = emap[down].unwrap();
                let vmap = &states[i + 1].vertex_map;
                let (x, y) = (g.edges[down].0, g.edges[up].1);
                let c = clamp((g.values[r] + g.values[*tip]) / int(2), g.values[x], g.values[y]);
                let vimg: Vec<Point> = (0..g.values.len())
                    .map(|v| match vmap[v] {
                        Some(w) => Point::Vertex(w),
                        None => Point::Edge(merged, c),
                    })
                    .collect();
                let mut eimg = emap;
                eimg[up] = Some(merged);
                b.collapse(h, g, &vimg, &eimg, false);
            }
            Deformation::InsertEdge { vertex, .. } => {
                let mut vimg: Vec<Point> = (0..g.values.len()).map(Point::Vertex).collect();
                vimg.push(Point::Vertex(*vertex));
                let mut eimg: Vec<Option<usize>> = (0..g.edges.len()).map(Some).collect();
                eimg.push(None);
                b.collapse(g, h, &vimg, &eimg, true);
            }
            Deformation::DeleteEdge { edge } => {
                let vmap = &states[i + 1].vertex_map;
                let (x, y) = g.edges[*edge];
                let keep = if vmap[x].is_some() { x } else { y };
                let vimg: Vec<Point> =
                    (0..g.values.len()).map(|v| Point::Vertex(vmap[v].unwrap_or_else(|| vmap[keep].unwrap()))).collect();
                let eimg = edge_map(g.edges.len(), &[*edge]);
                b.collapse(h, g, &vimg, &eimg, false);
            }
            Deformation::InsertLoop { edge, .. } => {
                let (x, y) = (g.values.len(), g.values.len() + 1);
                let (a, bb) = g.edges[*edge];
                let c = clamp((h.values[x] + h.values[y]) / int(2), g.values[a], g.values[bb]);
                let mut vimg: Vec<Point> = (0..g.values.len()).map(Point::Vertex).collect();
                vimg.push(Point::Edge(*edge, c));
                vimg.push(Point::Edge(*edge, c));
                let mut eimg: Vec<Option<usize>> = (0..g.edges.len()).map(Some).collect();
                eimg.extend([None, None, Some(*edge)]);
                b.collapse(g, h, &vimg, &eimg, true);
            }
            Deformation::DeleteLoop { edge } => {
                let inc = sym.incidence();
                let (x, y) = g.edges[*edge];
                let twins: Vec<usize> = inc[x].iter().copied().filter(|&e| g.edges[e] == (x, y)).collect();
                let below = inc[x].iter().copied().find(|e| !twins.contains(e)).unwrap();
                let above = inc[y].iter().copied().find(|e| !twins.contains(e)).unwrap();
                let emap = edge_map(g.edges.len(), &[twins[0], twins[1], above]);
                let merged = emap[below].unwrap();
                let (a, bb) = (g.edges[below].0, g.edges[above].1);
                let c = clamp((g.values[x] + g.values[y]) / int(2), g.values[a], g.values[bb]);
                let vmap = &states[i + 1].vertex_map;
                let vimg: Vec<Point> = (0..g.values.len())
                    .map(|v| match vmap[v] {
                        Some(w) => Point::Vertex(w),
                        None => Point::Edge(merged, c),
                    })
                    .collect();
                let mut eimg = emap;
                eimg[above] = Some(merged);
                b.collapse(h, g, &vimg, &eimg, false);
            }
            Deformation::K1 { root, .. } | Deformation::Slide { vertex: root, .. } => {
                let k = connecting(step, sym, *root);
                contract_step(&mut b, g, h, k).ok_or_else(|| fail(i, step.kind(), "no common contraction"))?;
            }
            Deformation::K2 { lower, upper, .. } | Deformation::K3 { lower, upper, .. } => {
                let k = sym
                    .edges
                    .iter()
                    .position(|&e| e == (*lower, *upper))
                    .ok_or_else(|| fail(i, step.kind(), "no connecting edge"))?;
                contract_step(&mut b, g, h, k).ok_or_else(|| fail(i, step.kind(), "no common contraction"))?;
            }
        }
    }
    Ok(b.z)
}

/// The edge the moving vertex keeps across the move.
fn connecting(step: &Deformation, g: &super::EditGraph, root: usize) -> usize {
    let inc = g.incidence();
    let other = |e: usize| if g.edges[e].0 == root { g.edges[e].1 } else { g.edges[e].0 };
    match step {
        Deformation::K1 { leaf, .. } => {
            // the carrier sits on the side opposite the leaf
            let up = g.values[other(*leaf)] > g.values[root];
            inc[root].iter().copied().find(|&e| e != *leaf && (g.values[other(e)] > g.values[root]) != up).unwrap()
        }
        Deformation::Slide { feature, past, .. } => {
            inc[root].iter().copied().find(|&e| e != *feature && other(e) == *past).unwrap()
        }
        _ => unreachable!(),
    }
}

fn contract_step(b: &mut Builder, g: &ReebGraph, h: &ReebGraph, k: usize) -> Option<()> {
    let (p, q) = g.edges[k];
    let mu = (h.values[p] + h.values[q]) / int(2);
    let eps = (h.values[p] - h.values[q]).abs() / int(2);
    // pair brought together, keeping g's order
    let mut g2 = g.clone();
    g2.values[p] = mu - eps;
    g2.values[q] = mu + eps;
    let g2 = if eps > Value::default() && valid(&g2) { g2 } else { g.clone() };
    let (m, vg, eg) = contract(&g2, k, mu)?;
    let (mh, vh, eh) = contract(h, k, mu)?;
    if mh != m {
        return None;
    }
    if &g2 != g {
        b.relabel(g, &g2);
    }
    b.push(g2.clone(), identity(&g2), quotient_map(&g2, &m, &vg, &eg), m.clone());
    b.push(h.clone(), quotient_map(h, &m, &vh, &eh), identity(h), h.clone());
    Some(())
}

use num_traits::Signed;
