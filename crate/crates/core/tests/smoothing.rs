mod support;

use proptest::prelude::*;
use rand::RngExt;
use reeb_metrics::persistence::PointClass;
use reeb_metrics::random::generic_graph;
use reeb_metrics::smoothing::{eta_map, smooth, truncate, truncation_grid};
use reeb_metrics::value::frac;
use reeb_metrics::{extended_diagram, is_isomorphic};
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smoothing_is_a_semigroup(seed in any::<u64>(), e1 in 1i128..8, e2 in 1i128..8) {
        let g = generic_graph(&mut rng(seed), 7, 2);
        let (e1, e2) = (frac(e1, 8), frac(e2, 8));
        let twice = smooth(&smooth(&g, e1).unwrap().graph, e2).unwrap().graph;
        let once = smooth(&g, e1 + e2).unwrap().graph;
        prop_assert!(is_isomorphic(&twice.canonicalize(), &once.canonicalize()).is_some());
    }

    #[test]
    fn extrema_shift_and_topology_shrinks(seed in any::<u64>(), e in 1i128..16) {
        let g = generic_graph(&mut rng(seed), 8, 3);
        let eps = frac(e, 8);
        let s = smooth(&g, eps).unwrap().graph;
        let (lo, hi) = g.value_range().unwrap();
        prop_assert_eq!(s.value_range().unwrap(), (lo - eps, hi + eps));
        prop_assert_eq!(s.component_count(), g.component_count());
        prop_assert!(s.betti1() <= g.betti1());
    }

    #[test]
    fn loops_close_once_twice_eps_reaches_their_height(seed in any::<u64>(), e in 1i128..24) {
        let g = generic_graph(&mut rng(seed), 8, 3);
        let eps = frac(e, 8);
        let d = extended_diagram(&g).unwrap();
        let surviving = d.class(PointClass::Ext1).iter().filter(|p| p.persistence() > eps * frac(2, 1)).count();
        prop_assert_eq!(smooth(&g, eps).unwrap().graph.betti1(), surviving);
    }

    #[test]
    fn truncation_only_trims(seed in any::<u64>(), t in 1i128..12) {
        let g = generic_graph(&mut rng(seed), 8, 3);
        let tau = frac(t, 8);
        let Ok(h) = truncate(&g, tau) else { return Ok(()) };
        for v in &h.values {
            prop_assert!(g.values.iter().any(|x| x == v || *x - tau == *v || *x + tau == *v));
        }
    }

    #[test]
    fn eta_maps_exist(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = generic_graph(&mut r, 6, 2);
        let eps = frac(r.random_range(1..6i128), 8);
        let grow = frac(r.random_range(0..4i128), 8);
        let tau = eps * frac(r.random_range(0..4i128), 4);
        let dt = grow * frac(r.random_range(0..=4i128), 4);
        let (eps2, tau2) = (eps + grow, tau + dt);
        let mut grid = truncation_grid(&[&g], eps, tau);
        grid.extend(truncation_grid(&[&g], eps2, tau2));
        grid.sort();
        grid.dedup();
        prop_assert!(eta_map(&g, eps, tau, eps2, tau2, &grid).is_ok());
    }
}
