//! Seeded generators for property runs: generic Reeb graphs, persistence
//! diagrams, and field pairs on a shared triangulated grid.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, RngExt};

use crate::field::ScalarField;
use crate::graph::ReebGraph;
use crate::persistence::{ExtendedDiagram, PersistencePoint, PointClass};
use crate::value::{frac, Value};

/// `n` distinct values `k/den` with `0 <= k < span·den`, in random order.
pub fn distinct_values<R: Rng + ?Sized>(rng: &mut R, n: usize, span: i128, den: i128) -> Vec<Value> {
    let top = span * den;
    assert!(top >= n as i128, "not enough room for {} distinct values", n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k = rng.random_range(0..top);
        if seen.insert(k) {
            out.push(frac(k, den));
        }
    }
    out
}

/// Connected generic graph: a random tree on `2..=max_vertices` vertices
/// plus up to `max_extra` extra edges (each closing a loop), canonicalized.
pub fn generic_graph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_extra: usize) -> ReebGraph {
    let n = rng.random_range(2..=max_vertices.max(2));
    let values = distinct_values(rng, n, 4 * n as i128, 4);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..rng.random_range(0..=max_extra) {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            edges.push((a, b));
        }
    }
    ReebGraph::from_parts(values, &edges).expect("distinct values give no flat edges").canonicalize()
}

/// Diagram of up to `max_points` valid points with values on the `1/4` grid
/// in `[0, 8]`.
pub fn diagram<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> ExtendedDiagram {
    let n = rng.random_range(0..=max_points);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let class = PointClass::ALL[rng.random_range(0..4)];
        let p = PersistencePoint::new(class, frac(rng.random_range(0..=32), 4), frac(rng.random_range(0..=32), 4));
        if p.is_valid() {
            pts.push(p);
        }
    }
    ExtendedDiagram::new(pts, 1)
}

/// Triangles of an `n × m` grid, wrapped into a torus (`n, m >= 3`) or
/// left as a disk.
pub fn grid_triangles(n: usize, m: usize, wrap: bool) -> Vec<[usize; 3]> {
    let id = |i: usize, j: usize| (i % n) * m + (j % m);
    let (rows, cols) = if wrap { (n, m) } else { (n - 1, m - 1) };
    let mut tris = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    tris
}

/// Generic field on the grid with values on the `1/den` lattice of `[0, span)`.
pub fn grid_field<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, wrap: bool, span: i128, den: i128) -> ScalarField {
    let mut values = distinct_values(rng, n * m, span, den);
    values.shuffle(rng);
    ScalarField::from_triangles(values, &grid_triangles(n, m, wrap), &[])
}

/// `f + noise` with every noise value on the `1/den` lattice and
/// `|noise| <= bound`. Values are redrawn until distinct, so the result
/// stays generic whenever that is possible at all.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, f: &ScalarField, bound: Value, den: i128) -> ScalarField {
    let steps = (bound * Value::from(den)).floor().to_integer();
    let mut g = f.clone();
    let mut seen = BTreeSet::new();
    for (i, v) in g.values.iter_mut().enumerate() {
        for attempt in 0.. {
            let x = f.values[i] + frac(rng.random_range(-steps..=steps), den);
            if seen.insert(x) || attempt == 64 {
                *v = x;
                break;
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{build_reeb, linf_distance, BuildOptions};
    use rand::rngs::SmallRng;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = SmallRng::seed_from_u64(7);
        for _ in 0..50 {
            let g = generic_graph(&mut rng, 8, 3);
            g.check_generic().unwrap();
            assert_eq!(g.component_count(), 1);
            assert!(diagram(&mut rng, 6).points.iter().all(|p| p.is_valid()));
            let f = grid_field(&mut rng, 3, 4, true, 10, 8);
            f.validate(false).unwrap();
            let h = perturb(&mut rng, &f, frac(1, 10), 40);
            assert!(linf_distance(&f, &h).unwrap() <= frac(1, 10));
            assert!(build_reeb(&h, BuildOptions { allow_ties: true }).is_ok());
        }
    }

    #[test]
    fn grids_have_the_right_topology() {
        let mut rng = SmallRng::seed_from_u64(1);
        let torus = grid_field(&mut rng, 3, 3, true, 4, 8);
        assert_eq!(torus.betti1(), 2);
        let disk = grid_field(&mut rng, 3, 4, false, 4, 8);
        assert_eq!(disk.betti1(), 0);
    }
}
