mod support;

use proptest::prelude::*;
use reeb_metrics::fixtures;
use reeb_metrics::is_isomorphic;
use reeb_metrics::landscape::{example_pairs, run, Options, PairInput};
use reeb_metrics::random::{grid_field, perturb};
use reeb_metrics::value::{frac, Bracket, Value};
use support::*;

fn options() -> Options {
    Options { edit_budget: 5_000, truncations: vec![frac(1, 2)], ..Options::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_perturbations_respect_every_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = grid_field(&mut r, 3, 3, seed % 2 == 0, 4, 8);
        let g = perturb(&mut r, &f, frac(1, 10), 40);
        let input = PairInput { name: format!("{}", seed), a: reeb(&f), b: reeb(&g), fields: Some((f, g)), ..Default::default() };
        let rep = run(&input, &options()).unwrap();
        let bad: Vec<_> = rep.violations().collect();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}

#[test]
fn collapsed_zero_means_isomorphic_on_examples() {
    for p in example_pairs() {
        let d = run(&p, &options()).unwrap().distances;
        let zero = Bracket::exact(Value::default());
        let iso = is_isomorphic(&p.a, &p.b).is_some();
        for x in [d.interleaving, d.fdd, d.universal] {
            if x == zero {
                assert!(iso, "{}", p.name);
            }
        }
    }
}

#[test]
fn bottleneck_misses_the_fig6_difference() {
    let (f, g) = fixtures::example1();
    let input = PairInput { name: "fig6".into(), a: f.clone(), b: g.clone(), ..Default::default() };
    let d = run(&input, &options()).unwrap().distances;
    assert_eq!((d.ungraded, d.graded), (Value::default(), Value::default()));
    assert!(is_isomorphic(&f, &g).is_none());
    assert!(d.interleaving.lo > reeb_metrics::value::Ext::Finite(Value::default()));
}
