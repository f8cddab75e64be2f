mod support;

use proptest::prelude::*;
use reeb_metrics::metrics::{bottleneck_graded, bottleneck_ungraded};
use reeb_metrics::random::diagram;
use reeb_metrics::value::frac;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn binary_search_matches_exhaustive_matching(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (diagram(&mut r, 6), diagram(&mut r, 6));
        prop_assert_eq!(bottleneck_ungraded(&a, &b), brute_diagrams(&a, &b, false));
        prop_assert_eq!(bottleneck_graded(&a, &b), brute_diagrams(&a, &b, true));
    }

    #[test]
    fn ungraded_is_below_graded(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (diagram(&mut r, 8), diagram(&mut r, 8));
        prop_assert!(bottleneck_ungraded(&a, &b) <= bottleneck_graded(&a, &b));
    }

    #[test]
    fn both_are_pseudometrics(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (diagram(&mut r, 6), diagram(&mut r, 6), diagram(&mut r, 6));
        for d in [bottleneck_ungraded, bottleneck_graded] {
            prop_assert_eq!(d(&a, &a), frac(0, 1));
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        }
    }

    #[test]
    fn common_shift_changes_nothing(seed in any::<u64>(), k in -20i128..20) {
        let mut r = rng(seed);
        let (a, b) = (diagram(&mut r, 6), diagram(&mut r, 6));
        let s = frac(k, 3);
        let (x, y) = (a.shifted(s), b.shifted(s));
        prop_assert_eq!(bottleneck_ungraded(&a, &b), bottleneck_ungraded(&x, &y));
        prop_assert_eq!(bottleneck_graded(&a, &b), bottleneck_graded(&x, &y));
        let w = |p, q| reeb_metrics::metrics::wasserstein1_exact(p, q, true);
        prop_assert_eq!(w(&a, &b), w(&x, &y));
    }
}
