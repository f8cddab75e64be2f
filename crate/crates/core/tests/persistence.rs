mod support;

use proptest::prelude::*;
use reeb_metrics::persistence::PointClass;
use reeb_metrics::random::generic_graph;
use reeb_metrics::value::int;
use reeb_metrics::{extended_diagram, extended_diagram_oracle};
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_matches_the_oracle(seed in any::<u64>()) {
        let g = generic_graph(&mut rng(seed), 10, 4);
        prop_assert_eq!(extended_diagram(&g).unwrap(), extended_diagram_oracle(&g).unwrap());
    }

    #[test]
    fn class_counts_follow_topology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = generic_graph(&mut r, 8, 3);
        let b = generic_graph(&mut r, 8, 3).map_values(|v| *v + int(100));
        let g = a.disjoint_union(&b);
        let d = extended_diagram(&g).unwrap();
        prop_assert_eq!(d.class(PointClass::Ext1).len(), g.betti1());
        prop_assert_eq!(d.class(PointClass::Ext0).len(), g.component_count());
    }

    #[test]
    fn invariant_under_subdivision_and_relabeling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = generic_graph(&mut r, 9, 3);
        let d = extended_diagram(&g).unwrap();
        let e = rand::RngExt::random_range(&mut r, 0..g.edges.len());
        prop_assert_eq!(&extended_diagram(&split_graph_edge(&g, e)).unwrap(), &d);
        prop_assert_eq!(&extended_diagram(&permute(&g, &mut r)).unwrap(), &d);
    }

    #[test]
    fn disjoint_union_is_diagram_union(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = generic_graph(&mut r, 7, 2);
        let b = generic_graph(&mut r, 7, 2).map_values(|v| *v + int(50));
        let u = extended_diagram(&a.disjoint_union(&b)).unwrap();
        prop_assert_eq!(u, extended_diagram(&a).unwrap().union(&extended_diagram(&b).unwrap()));
    }
}
