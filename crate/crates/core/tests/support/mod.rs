#![allow(dead_code)]

use rand::rngs::SmallRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use reeb_metrics::field::{build_reeb, BuildOptions, ScalarField};
use reeb_metrics::persistence::{ExtendedDiagram, PersistencePoint};
use reeb_metrics::value::{frac, Value};
use reeb_metrics::ReebGraph;

pub fn rng(seed: u64) -> SmallRng {
    SmallRng::seed_from_u64(seed)
}

pub fn ties() -> BuildOptions {
    BuildOptions { allow_ties: true }
}

pub fn reeb(f: &ScalarField) -> ReebGraph {
    build_reeb(f, ties()).unwrap()
}

/// Same graph with vertex ids shuffled and edges listed in random order.
pub fn permute(g: &ReebGraph, rng: &mut SmallRng) -> ReebGraph {
    let n = g.values.len();
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    let mut values = vec![Value::default(); n];
    for v in 0..n {
        values[p[v]] = g.values[v];
    }
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|&(a, b)| (p[a], p[b])).collect();
    edges.shuffle(rng);
    ReebGraph::from_parts(values, &edges).unwrap()
}

/// Splits the complex edge `(a, b)` at a new vertex carrying the
/// interpolated value, so the PL function is unchanged.
pub fn split_edge(f: &ScalarField, a: usize, b: usize) -> ScalarField {
    let m = f.values.len();
    let mut values = f.values.clone();
    values.push((f.values[a] + f.values[b]) * frac(1, 2));
    let has = |t: &[usize; 3], x: usize| t.contains(&x);
    let mut tris = Vec::new();
    for t in &f.triangles {
        if has(t, a) && has(t, b) {
            let c = *t.iter().find(|&&x| x != a && x != b).unwrap();
            tris.push([a, m, c]);
            tris.push([m, b, c]);
        } else {
            tris.push(*t);
        }
    }
    let in_tri = |&(x, y): &(usize, usize)| f.triangles.iter().any(|t| has(t, x) && has(t, y));
    let mut extra: Vec<(usize, usize)> = f.edges.iter().copied().filter(|e| !in_tri(e)).collect();
    if let Some(i) = extra.iter().position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) {
        extra.swap_remove(i);
        extra.push((a, m));
        extra.push((m, b));
    }
    ScalarField::from_triangles(values, &tris, &extra)
}

fn linf(x: &PersistencePoint, y: &PersistencePoint) -> Value {
    let d = |p: Value, q: Value| if p > q { p - q } else { q - p };
    d(x.birth, y.birth).max(d(x.death, y.death))
}

fn to_diag(x: &PersistencePoint) -> Value {
    let p = if x.birth > x.death { x.birth - x.death } else { x.death - x.birth };
    p * frac(1, 2)
}

/// Exhaustive bottleneck: every partial injection from `a` into `b`,
/// leftovers go to the diagonal. `graded` forbids cross-class pairs.
pub fn brute_bottleneck(a: &[PersistencePoint], b: &[PersistencePoint], graded: bool) -> Value {
    fn go(i: usize, a: &[PersistencePoint], b: &[PersistencePoint], used: &mut Vec<bool>, graded: bool, acc: Value, best: &mut Value) {
        if acc >= *best {
            return;
        }
        if i == a.len() {
            let rest = b.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(y, _)| to_diag(y)).max().unwrap_or_default();
            *best = (*best).min(acc.max(rest));
            return;
        }
        go(i + 1, a, b, used, graded, acc.max(to_diag(&a[i])), best);
        for j in 0..b.len() {
            if !used[j] && (!graded || a[i].class == b[j].class) {
                used[j] = true;
                go(i + 1, a, b, used, graded, acc.max(linf(&a[i], &b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = a.iter().chain(b).map(to_diag).max().unwrap_or_default();
    go(0, a, b, &mut vec![false; b.len()], graded, Value::default(), &mut best);
    best
}

pub fn brute_diagrams(d1: &ExtendedDiagram, d2: &ExtendedDiagram, graded: bool) -> Value {
    brute_bottleneck(&d1.points, &d2.points, graded)
}

/// Splits edge `e` at a fresh value strictly inside it.
pub fn split_graph_edge(g: &ReebGraph, e: usize) -> ReebGraph {
    let (a, b) = g.edges[e];
    let (lo, hi) = (g.values[a], g.values[b]);
    let mut t = lo + (hi - lo) * frac(1, 3);
    while g.values.contains(&t) {
        t = (t + hi) * frac(1, 2);
    }
    let mut values = g.values.clone();
    values.push(t);
    let v = values.len() - 1;
    let mut edges = g.edges.clone();
    edges[e] = (a, v);
    edges.push((v, b));
    ReebGraph::from_parts(values, &edges).unwrap()
}
