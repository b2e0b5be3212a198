use std::collections::HashSet;

use cycle_census_core::arith::euler_phi;
use cycle_census_core::census;
use cycle_census_core::density::{reduce_mod_p, IntPoly, Reduction};
use cycle_census_core::group::naive_closure;
use cycle_census_core::{PermGroup, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_any() -> impl Strategy<Value = Permutation> {
    (1usize..=12).prop_flat_map(perm)
}

fn perm_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..=12).prop_flat_map(|n| (perm(n), perm(n)))
}

fn perm_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=12).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (2usize..=7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
        .prop_map(|(n, gens)| PermGroup::new(n, gens).unwrap())
}

proptest! {
    #[test]
    fn inverse_cancels(p in perm_any()) {
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn composition_is_associative((a, b, c) in perm_triple()) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn composition_applies_left_first((a, b) in perm_pair()) {
        let ab = a.then(&b);
        for x in 0..a.degree() {
            prop_assert_eq!(ab.apply(x), b.apply(a.apply(x)));
        }
    }

    #[test]
    fn cycle_type_sums_to_degree(p in perm_any()) {
        prop_assert_eq!(p.cycle_type().iter().sum::<usize>(), p.degree());
        prop_assert_eq!(p.is_full_cycle(), p.cycle_type() == vec![p.degree()]);
    }

    #[test]
    fn cycle_string_round_trips(p in perm_any()) {
        let s = p.to_cycle_string();
        prop_assert_eq!(Permutation::parse(&s, p.degree()).unwrap(), p);
    }

    #[test]
    fn conjugation_preserves_cycle_type((a, x) in perm_pair()) {
        let mut t1 = a.cycle_type();
        let mut t2 = a.conjugate_by(&x).cycle_type();
        t1.sort_unstable();
        t2.sort_unstable();
        prop_assert_eq!(t1, t2);
    }

    #[test]
    fn pow_matches_repeated_product(p in perm_any(), k in -30i64..30) {
        let q = p.pow(k);
        let mut r = Permutation::identity(p.degree());
        for _ in 0..k.unsigned_abs() {
            r = r.then(&if k < 0 { p.inverse() } else { p.clone() });
        }
        prop_assert_eq!(q, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_equals_closure(g in small_group()) {
        let all = naive_closure(g.degree(), g.generators(), 6000).unwrap();
        prop_assert_eq!(all.len() as u128, g.order());
        for x in &all {
            prop_assert!(g.contains(x).unwrap());
        }
        let listed: HashSet<Permutation> = g.elements(6000).unwrap().collect();
        prop_assert_eq!(listed.len() as u128, g.order());
    }

    #[test]
    fn census_invariants(g in small_group()) {
        prop_assume!(g.is_transitive());
        let n = g.degree() as u64;
        let t = census::tally(&g, 6000).unwrap();
        let total: u128 = t.classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, t.count());
        prop_assert!(t.classes().len() as u64 <= euler_phi(n));
        prop_assert_eq!(t.count() % euler_phi(n) as u128, 0);
        for c in t.classes() {
            prop_assert_eq!(g.order() % c.size, 0);
            prop_assert_eq!(census::conjugacy_class_size(&g, &c.representative, 6000).unwrap(), c.size);
        }
        let r = census::report_from_tally(&g, &t).unwrap();
        prop_assert!(r.violations().is_empty(), "{:?}", r.violations());
        prop_assert!(r.cyclic_transitive_count * n as u128 <= g.order());
    }

    #[test]
    fn tally_merge_is_split_independent(g in small_group(), cut in 0.0f64..1.0) {
        prop_assume!(g.is_transitive());
        let k = (g.order() as f64 * cut) as u128;
        let mut a = census::tally_range(&g, 0..k);
        a.merge(&g, census::tally_range(&g, k..g.order()));
        prop_assert_eq!(a, census::tally(&g, 6000).unwrap());
    }

    #[test]
    fn reduction_is_coefficientwise(c in prop::collection::vec(-50i64..50, 2..8), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let Some(f) = IntPoly::new(c.clone()) else { return Ok(()) };
        prop_assume!(f.degree() >= 1);
        if let Reduction::Good(fp) = reduce_mod_p(&f, p) {
            let expect: Vec<u64> = f.coeffs().iter().map(|&a| a.rem_euclid(p as i64) as u64).collect();
            prop_assert_eq!(fp.coeffs(), &expect[..]);
        }
        prop_assert_eq!(IntPoly::parse(&f.to_string()).unwrap(), f);
    }
}
