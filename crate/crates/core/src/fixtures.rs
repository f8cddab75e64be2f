//! Worked examples with concrete values `a_i = i`, and small mesh
//! generators. Vertex `k` of each graph is the `k+1`-th named vertex of the
//! example (`v1` is index 0).

use alloc::vec::Vec;

use crate::field::ScalarField;
use crate::graph::{Graph, ReebGraph};
use crate::value::{frac, int, Value};

fn graph(vals: &[Value], edges: &[(usize, usize)]) -> ReebGraph {
    Graph::from_parts(vals.to_vec(), edges).expect("fixture graphs are well formed")
}

fn ints(v: &[i128]) -> Vec<Value> {
    v.iter().map(|&x| int(x)).collect()
}

/// Genus-two example: minima at 1 and 2, splits at 3, 5, 7, joins at 4, 6,
/// 8, an up-leaf tip at 9 and the maximum at 10. Loops are born at 6 and 8
/// and closed from below at 3 and 5.
pub fn fig4() -> ReebGraph {
    graph(
        &ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
        &[(0, 2), (1, 3), (2, 4), (2, 3), (3, 5), (4, 5), (4, 7), (5, 6), (6, 7), (6, 8), (7, 9)],
    )
}

/// Loop between 2 and 4 against an up-leaf from 2 to 3.8, both spanning
/// `[1, 5]`.
pub fn fig8() -> (ReebGraph, ReebGraph) {
    let a = graph(&ints(&[1, 2, 4, 5]), &[(0, 1), (1, 2), (1, 2), (2, 3)]);
    let b = graph(&[int(1), int(2), frac(19, 5), int(5)], &[(0, 1), (1, 2), (1, 3)]);
    (a, b)
}

/// Two graphs with the same diagram and isomorphic underlying multigraphs:
/// a loop from 3 to 6 carrying a down-leaf (tip 2, join 4) and an up-leaf
/// (fork 5, tip 7). In `f` the leaves hang on opposite arcs of the loop,
/// in `g` both hang on the same arc.
///
/// Index order: v1=1, v2=2, v3=3, v4=4, q=5, t=6, tip=7, max=8.
pub fn example1() -> (ReebGraph, ReebGraph) {
    let vals = ints(&[1, 2, 3, 4, 5, 6, 7, 8]);
    let f = graph(&vals, &[(0, 2), (2, 4), (4, 5), (4, 6), (2, 3), (1, 3), (3, 5), (5, 7)]);
    let g = graph(&vals, &[(0, 2), (2, 3), (1, 3), (3, 4), (4, 6), (4, 5), (2, 5), (5, 7)]);
    (f, g)
}

/// Two stretched tori: loops `(1, 2, 3, 4)` and `(1, 1.8, 3.4, 4)`.
pub fn example2() -> (ReebGraph, ReebGraph) {
    let e = [(0, 1), (1, 2), (1, 2), (2, 3)];
    let f = graph(&ints(&[1, 2, 3, 4]), &e);
    let g = graph(&[int(1), frac(9, 5), frac(17, 5), int(4)], &e);
    (f, g)
}

/// Genus-two Reeb graph (loops `[2,3]` and `[5,7]`) against a tree with a
/// down-leaf (tip 3, join 4) and an up-leaf (fork 6, tip 8). The shared
/// maximum is placed at 9.
pub fn example3() -> (ReebGraph, ReebGraph) {
    let f = graph(&ints(&[1, 2, 3, 5, 7, 9]), &[(0, 1), (1, 2), (1, 2), (2, 3), (3, 4), (3, 4), (4, 5)]);
    let g = graph(&ints(&[1, 3, 4, 6, 8, 9]), &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]);
    (f, g)
}

/// Contour trees: minima 1 and 2 (the latter on the boundary) join at 3;
/// in `f` the split at 4 carries a leaf to 7 and the split at 5 carries
/// leaves to 6 and 8. In `g` the tip at index 6 is raised to 9 and becomes
/// the maximum; it is re-rooted at 4, with the split at 5 keeping tips 6
/// and 8.
pub fn example4() -> (ReebGraph, ReebGraph) {
    let f = graph(&ints(&[1, 2, 3, 4, 5, 6, 7, 8]), &[(0, 2), (1, 2), (2, 3), (3, 6), (3, 4), (4, 5), (4, 7)]);
    let g = graph(&ints(&[1, 2, 3, 4, 5, 6, 8, 9]), &[(0, 2), (1, 2), (2, 3), (3, 7), (3, 4), (4, 5), (4, 6)]);
    (f, g)
}

/// Boundary vertices of example 4 (the minimum `v2`), in both graphs.
pub fn example4_boundary() -> (Vec<usize>, Vec<usize>) {
    (alloc::vec![1], alloc::vec![1])
}

/// Loop `a1 < a2 < a3 < a4`.
pub fn torus_graph() -> ReebGraph {
    graph(&ints(&[1, 2, 3, 4]), &[(0, 1), (1, 2), (1, 2), (2, 3)])
}

/// Up-leaf (root 2, tip 3) on a trunk from 1 to 4.
pub fn up_leaf_graph() -> ReebGraph {
    graph(&ints(&[1, 2, 3, 4]), &[(0, 1), (1, 2), (1, 3)])
}

/// Triangulated torus in `n × m` grid form. Heights come from an embedded
/// torus lying on its side with a small generic tilt, rounded to exact
/// rationals. `cos`/`sin` samples are supplied by the caller so the crate
/// stays free of float math.
pub fn torus_field(heights: &dyn Fn(usize, usize) -> Value, n: usize, m: usize) -> ScalarField {
    let id = |i: usize, j: usize| (i % n) * m + (j % m);
    let mut values = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            values.push(heights(i, j));
        }
    }
    let mut tris = Vec::with_capacity(2 * n * m);
    for i in 0..n {
        for j in 0..m {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    ScalarField::from_triangles(values, &tris, &[])
}

/// `g × S¹` with a `k`-gon cross-section (`k >= 3`), valued by `g`. Every
/// ring is flat, so building its Reeb graph needs ties allowed; the result
/// is `g` again.
pub fn tube_field(g: &ReebGraph, k: usize) -> ScalarField {
    // parallel edges would produce identical prisms, so split them first
    let s = g.subdivide_midpoints();
    let n = s.values.len();
    let id = |v: usize, j: usize| v * k + (j % k);
    let mut values = Vec::with_capacity(n * k);
    for v in 0..n {
        values.extend(core::iter::repeat_n(s.values[v], k));
    }
    let mut tris = Vec::new();
    for &(a, b) in &s.edges {
        for j in 0..k {
            tris.push([id(a, j), id(b, j), id(b, j + 1)]);
            tris.push([id(a, j), id(a, j + 1), id(b, j + 1)]);
        }
    }
    let mut extra = Vec::new();
    for v in 0..n {
        for j in 0..k {
            extra.push((id(v, j), id(v, j + 1)));
        }
    }
    ScalarField::from_triangles(values, &tris, &extra)
}


// Map-pair certificates for the functional distortion examples.

use crate::fdd::{MapCertificate, PlMap};
use crate::graph::Point;

fn pl(vertex: &[Point], edge: Vec<Vec<(Value, Point)>>) -> PlMap {
    PlMap { vertex: vertex.to_vec(), edge }
}

const fn v(i: usize) -> Point {
    Point::Vertex(i)
}

/// Example 1: the graphs minus their down-leaves are matched isomorphically;
/// each down-leaf runs from its root down to the loop bottom, across to the
/// other leaf's root and down that leaf. Passing both the bottom (3) and the
/// root (4) within ½ of the source height is only possible in the limit, so
/// the crossing takes a source interval of length `eta`.
pub fn example1_fdd(eta: Value) -> MapCertificate {
    let (a, b) = (frac(7, 2) - eta, frac(7, 2));
    let forward = pl(
        &[v(0), v(1), v(2), Point::Edge(6, int(4)), v(4), v(5), v(6), v(7)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![(int(4), v(3))],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![(a, v(3)), (b, v(2))],
            alloc::vec![],
            alloc::vec![],
        ],
    );
    let backward = pl(
        &[v(0), v(1), v(2), Point::Edge(1, int(4)), v(4), v(5), v(6), v(7)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![],
            alloc::vec![(a, v(3)), (b, v(2))],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![(int(4), v(3))],
            alloc::vec![],
        ],
    );
    MapCertificate { forward, backward, boundary: None }
}

/// Example 2: the loop of `f` stretched onto the loop of `g` and back.
pub fn example2_fdd() -> MapCertificate {
    let forward = pl(
        &[v(0), v(1), v(2), v(3)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![(frac(5, 2), Point::Edge(1, frac(13, 5)))],
            alloc::vec![(frac(5, 2), Point::Edge(2, frac(13, 5)))],
            alloc::vec![],
        ],
    );
    let backward = pl(
        &[v(0), v(1), v(2), v(3)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![(frac(13, 5), Point::Edge(1, frac(5, 2)))],
            alloc::vec![(frac(13, 5), Point::Edge(2, frac(5, 2)))],
            alloc::vec![],
        ],
    );
    MapCertificate { forward, backward, boundary: None }
}

/// Example 3: every point goes straight across to the same height.
pub fn example3_fdd() -> MapCertificate {
    let forward = pl(
        &[v(0), Point::Edge(0, int(2)), Point::Edge(0, int(3)), Point::Edge(2, int(5)), Point::Edge(4, int(7)), v(5)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![(int(4), v(2))],
            alloc::vec![(int(6), v(3))],
            alloc::vec![(int(6), v(3))],
            alloc::vec![],
        ],
    );
    let backward = pl(
        &[v(0), v(2), Point::Edge(3, int(4)), Point::Edge(4, int(6)), Point::Edge(6, int(8)), v(5)],
        alloc::vec![
            alloc::vec![(int(2), v(1)), (frac(5, 2), Point::Edge(1, frac(5, 2))), (int(3), v(2))],
            alloc::vec![],
            alloc::vec![(int(5), v(3))],
            alloc::vec![(int(7), v(4))],
            alloc::vec![(int(7), v(4))],
        ],
    );
    MapCertificate { forward, backward, boundary: None }
}

/// Example 4: the maximum branch of `f` (from the split at 5) is sent to
/// the maximum branch of `g` (from the split at 4), so the split at 5 folds
/// back onto 4 and the edge between them is covered twice. Boundary minima
/// map to each other.
pub fn example4_fdd() -> MapCertificate {
    let forward = pl(
        &[v(0), v(1), v(2), v(3), v(3), v(5), v(6), v(7)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![(int(5), v(4))],
            alloc::vec![(frac(9, 2), v(4))],
            alloc::vec![(frac(11, 2), v(4))],
            alloc::vec![],
        ],
    );
    let backward = pl(
        &[v(0), v(1), v(2), v(3), v(3), v(5), v(6), v(7)],
        alloc::vec![
            alloc::vec![],
            alloc::vec![],
            alloc::vec![],
            alloc::vec![(int(5), v(4))],
            alloc::vec![(frac(9, 2), v(4))],
            alloc::vec![(frac(11, 2), v(4))],
            alloc::vec![],
        ],
    );
    let (bf, bg) = example4_boundary();
    MapCertificate { forward, backward, boundary: Some((bf, bg)) }
}

// Edit sequences and zigzags.

use crate::edit::{lift, quotient_map, Deformation, EditSequence, ZigzagCertificate};
use crate::value::DVal;

fn dv(std: Value, inf: i128) -> DVal {
    DVal::new(std, int(inf))
}

/// Example 1, cheap route: birth a `2δ` down-leaf on the other arc, grow it
/// while flattening the old leaf in one relabel, then remove the old leaf.
/// Cost `1 + δ`.
pub fn example1_s1() -> EditSequence {
    let (f, _) = example1();
    let mut s = EditSequence::new(lift(&f));
    s.steps.push(Deformation::Birth { edge: 1, root: dv(int(3), 1), tip: dv(int(3), -1) });
    s.steps.push(Deformation::Relabel {
        values: alloc::vec![(8, dv(int(4), 0)), (9, dv(int(2), 0)), (3, dv(int(3), 1)), (1, dv(int(3), -1))],
    });
    s.steps.push(Deformation::Death { tip: 1 });
    s
}

/// Example 1 via K-moves: K3 pulls the leaf's join below the split, K2
/// pushes it back up on the other arc. Cost `1 + 2δ`.
pub fn example1_s2() -> EditSequence {
    let (f, _) = example1();
    let mid = frac(7, 2);
    let mut s = EditSequence::new(lift(&f));
    s.steps.push(Deformation::K3 { lower: 2, upper: 3, lower_to: dv(mid, 1), upper_to: dv(mid, -1) });
    s.steps.push(Deformation::K2 {
        lower: 3,
        upper: 2,
        down_edge: 0,
        up_edge: 1,
        lower_to: dv(int(4), 0),
        upper_to: dv(int(3), 0),
    });
    s
}

/// Example 2: one relabel.
pub fn example2_sequence() -> EditSequence {
    let (f, g) = example2();
    let mut s = EditSequence::new(lift(&f));
    s.steps.push(Deformation::Relabel { values: (0..4).map(|v| (v, DVal::exact(g.values[v]))).collect() });
    s
}

/// Example 4: slide the fork at 5 off the path to 8 onto the edge to 7,
/// then stretch the two tips.
pub fn example4_sequence() -> EditSequence {
    let (f, _) = example4();
    let mut s = EditSequence::new(lift(&f));
    s.steps.push(Deformation::Slide { vertex: 4, feature: 5, past: 3, onto: 3, value: DVal::exact(int(5)) });
    s.steps.push(Deformation::Relabel { values: alloc::vec![(6, DVal::exact(int(8))), (7, DVal::exact(int(9)))] });
    s
}

/// Raises the tip of an up-leaf (root 1, tip 2, trunk 0 to 5) by `a` in `k`
/// rounds of "hang a `δ`-edge off the tip, stretch it by `a/k`". No single
/// vertex moves more than `a/k`.
pub fn remark_bug(a: Value, k: usize) -> EditSequence {
    let g = graph(&ints(&[0, 1, 2, 5]), &[(0, 1), (1, 2), (1, 3)]);
    let mut s = EditSequence::new(lift(&g));
    let mut tip = 2;
    let mut cur = int(2);
    for j in 0..k {
        let w = 4 + j;
        s.steps.push(Deformation::InsertEdge { vertex: tip, value: dv(cur, 1) });
        cur += a / int(k as i128);
        s.steps.push(Deformation::Relabel { values: alloc::vec![(w, DVal::exact(cur))] });
        tip = w;
    }
    s
}

/// Example 1 in one step: `f` plus `g`'s down-leaf, collapsing the new leaf
/// into `f` (at the loop bottom) and `f`'s leaf into `g` (at the split).
/// Cost 1.
pub fn example1_zigzag() -> ZigzagCertificate {
    let (f, g) = example1();
    let mut vals = f.values.clone();
    vals.extend([int(4), int(2)]);
    let x = graph(
        &vals,
        &[(0, 2), (2, 8), (4, 5), (4, 6), (2, 3), (1, 3), (3, 5), (5, 7), (8, 4), (9, 8)],
    );
    let left = quotient_map(
        &x,
        &f,
        &[v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(2), v(2)],
        &[Some(0), None, Some(2), Some(3), Some(4), Some(5), Some(6), Some(7), Some(1), None],
    );
    let right = quotient_map(
        &x,
        &g,
        &[v(0), v(2), v(2), v(2), v(4), v(5), v(6), v(7), v(3), v(1)],
        &[Some(0), Some(1), Some(5), Some(4), None, None, Some(6), Some(7), Some(3), Some(2)],
    );
    ZigzagCertificate { reeb: alloc::vec![f, g], spaces: alloc::vec![x], left: alloc::vec![left], right: alloc::vec![right] }
}

/// Example 3: both sides collapse onto the path `1, 5/2, 7/2, 6, 7, 9`; the
/// loops go to 5/2 and 6, the leaves to 7/2 and 7. Each side carries one
/// extra edge, collapsed in its own graph, so that `f = 7` over 7 and
/// `g = 6` over 6. Cost 1.
pub fn example3_zigzag() -> ZigzagCertificate {
    let (f, g) = example3();
    let r = graph(
        &[int(1), frac(5, 2), frac(7, 2), int(6), int(7), int(9)],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
    );
    // f with the top loop vertex (7) pulled out along an edge to 8
    let x1 = graph(&ints(&[1, 2, 3, 5, 7, 9, 8]), &[(0, 1), (1, 2), (1, 2), (2, 3), (3, 4), (3, 4), (6, 5), (4, 6)]);
    let l1 = quotient_map(
        &x1,
        &f,
        &[v(0), v(1), v(2), v(3), v(4), v(5), v(4)],
        &[Some(0), Some(1), Some(2), Some(3), Some(4), Some(5), Some(6), None],
    );
    let mut r1 = quotient_map(
        &x1,
        &r,
        &[v(0), v(1), v(1), v(3), v(3), v(5), v(4)],
        &[Some(0), None, None, None, None, None, Some(4), Some(3)],
    );
    r1.edge[3] = alloc::vec![(int(3) + frac(4, 7), v(2))];
    // g with the fork (6) pulled down along an edge from 5
    let x2 = graph(&ints(&[1, 3, 4, 6, 8, 9, 5]), &[(0, 2), (1, 2), (2, 6), (6, 3), (3, 4), (3, 5)]);
    let mut l2 = quotient_map(
        &x2,
        &r,
        &[v(0), v(2), v(2), v(4), v(4), v(5), v(3)],
        &[None, None, Some(2), Some(3), None, Some(4)],
    );
    l2.edge[0] = alloc::vec![(frac(14, 5), v(1))];
    let r2 = quotient_map(
        &x2,
        &g,
        &[v(0), v(1), v(2), v(3), v(4), v(5), v(3)],
        &[Some(0), Some(1), Some(2), None, Some(3), Some(4)],
    );
    ZigzagCertificate {
        reeb: alloc::vec![f, r, g],
        spaces: alloc::vec![x1, x2],
        left: alloc::vec![l1, l2],
        right: alloc::vec![r1, r2],
    }
}
