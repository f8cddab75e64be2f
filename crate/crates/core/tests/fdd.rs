mod support;

use proptest::prelude::*;
use reeb_metrics::fdd::{fdd_bounds, fdd_upper, MapCertificate};
use reeb_metrics::fixtures;
use reeb_metrics::interleaving::{default_tol, DEFAULT_BUDGET};
use reeb_metrics::metrics::bottleneck_graded;
use reeb_metrics::random::generic_graph;
use reeb_metrics::value::{frac, int, Ext, Value};
use reeb_metrics::{extended_diagram, ReebGraph};
use support::*;

fn fixture_certificates() -> Vec<((ReebGraph, ReebGraph), MapCertificate)> {
    vec![
        (fixtures::example1(), fixtures::example1_fdd(frac(1, 1000))),
        (fixtures::example2(), fixtures::example2_fdd()),
        (fixtures::example3(), fixtures::example3_fdd()),
        (fixtures::example4(), fixtures::example4_fdd()),
    ]
}

#[test]
fn certificates_sit_above_every_lower_bound() {
    for ((f, g), c) in fixture_certificates() {
        let b = fdd_bounds(&f, &g, &[], default_tol(), DEFAULT_BUDGET).unwrap();
        let up = fdd_upper(&c.validate(&f, &g).unwrap());
        assert!(b.bracket.lo <= up);
        assert!(b.interleaving.lo <= up);
        // Ord0, Ext0, Rel1 against 1, Ext1 against 3
        let k = b.class_bottleneck;
        for (i, factor) in [(0, 1), (1, 1), (2, 1), (3, 3)] {
            assert!(Ext::Finite(k[i]) <= up.scale(int(factor)), "class {} of {:?}", i, k);
        }
        if f.betti1() == 0 && g.betti1() == 0 {
            let d = bottleneck_graded(&extended_diagram(&f).unwrap(), &extended_diagram(&g).unwrap());
            assert!(Ext::Finite(d) <= up);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_are_ordered(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (generic_graph(&mut r, 5, 1), generic_graph(&mut r, 5, 1));
        let bd = fdd_bounds(&a, &b, &[], default_tol(), DEFAULT_BUDGET).unwrap();
        prop_assert!(bd.bracket.lo <= bd.bracket.hi);
        prop_assert!(bd.interleaving.lo <= bd.bracket.hi);
    }

    #[test]
    fn identity_certificate_costs_nothing(seed in any::<u64>()) {
        let g = generic_graph(&mut rng(seed), 7, 2);
        let c = MapCertificate::identity(&g);
        prop_assert_eq!(fdd_upper(&c.validate(&g, &g).unwrap()), Ext::Finite(Value::default()));
    }
}
