mod support;

use proptest::prelude::*;
use rand::RngExt;
use reeb_metrics::random::{generic_graph, grid_field};
use reeb_metrics::value::frac;
use reeb_metrics::{is_isomorphic, path_height_distance, Point};
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subdividing_the_complex_keeps_the_graph(seed in any::<u64>()) {
        let mut r = rng(seed);
        let wrap = r.random_bool(0.5);
        let f = grid_field(&mut r, 3, 4, wrap, 6, 8);
        let mut g = f.clone();
        for _ in 0..r.random_range(1..4usize) {
            let (a, b) = g.edges[r.random_range(0..g.edges.len())];
            g = split_edge(&g, a, b);
        }
        prop_assert!(is_isomorphic(&reeb(&f), &reeb(&g)).is_some());
    }

    #[test]
    fn reeb_betti_is_bounded_by_the_domain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let wrap = r.random_bool(0.5);
        let m = 3 + r.random_range(0..3usize);
        let f = grid_field(&mut r, 3, m, wrap, 6, 8);
        prop_assert!(reeb(&f).betti1() <= f.betti1());
    }

    #[test]
    fn canonicalize_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = generic_graph(&mut r, 9, 3).subdivide_midpoints();
        let c = g.canonicalize();
        prop_assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn isomorphism_is_an_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = generic_graph(&mut r, 8, 3);
        let b = permute(&a, &mut r);
        let c = permute(&b, &mut r);
        prop_assert!(is_isomorphic(&a, &a).is_some());
        prop_assert!(is_isomorphic(&a, &b).is_some() && is_isomorphic(&b, &a).is_some());
        prop_assert!(is_isomorphic(&a, &c).is_some());
        let other = generic_graph(&mut r, 8, 3);
        prop_assert_eq!(is_isomorphic(&a, &other).is_some(), is_isomorphic(&other, &a).is_some());
    }

    #[test]
    fn path_height_is_a_pseudometric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = generic_graph(&mut r, 6, 2);
        let mut pts: Vec<Point> = (0..g.values.len()).map(Point::Vertex).collect();
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            pts.push(Point::Edge(e, (g.values[a] + g.values[b]) * frac(1, 2)));
        }
        let d = |p, q| path_height_distance(&g, p, q).unwrap();
        for &p in &pts {
            prop_assert_eq!(d(p, p), frac(0, 1));
            for &q in &pts {
                prop_assert_eq!(d(p, q), d(q, p));
                for &s in &pts {
                    prop_assert!(d(p, s) <= d(p, q) + d(q, s));
                }
            }
        }
    }
}
