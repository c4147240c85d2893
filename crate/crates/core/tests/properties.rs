//! Randomized property checks: algebra laws on arbitrary elements, parser
//! round trips, and semantics against the brute-force oracle.

use proptest::prelude::*;

use wta::algebra::{Algebra, Weight};
use wta::fixtures::{arctic_two_state, nat_three_state};
use wta::oracle::evaluate_naive;
use wta::term::{parse_term, RankedAlphabet, Tree};

fn arctic_weight() -> impl Strategy<Value = Weight> {
    prop_oneof![
        Just(Weight::Arctic(None)),
        (0u64..1000).prop_map(|n| Weight::Arctic(Some(n))),
    ]
}

fn nat_weight() -> impl Strategy<Value = Weight> {
    (0u64..1000).prop_map(Weight::Nat)
}

fn bimonoid_laws(alg: &Algebra, a: &Weight, b: &Weight, c: &Weight) {
    let zero = alg.zero();
    let one = alg.one();
    assert_eq!(alg.add(a, b), alg.add(b, a), "additive commutativity");
    assert_eq!(
        alg.add(&alg.add(a, b), c),
        alg.add(a, &alg.add(b, c)),
        "additive associativity"
    );
    assert_eq!(
        alg.mul(&alg.mul(a, b), c),
        alg.mul(a, &alg.mul(b, c)),
        "multiplicative associativity"
    );
    assert_eq!(&alg.add(a, &zero), a, "additive unit");
    assert_eq!(&alg.mul(a, &one), a, "right multiplicative unit");
    assert_eq!(&alg.mul(&one, a), a, "left multiplicative unit");
    assert_eq!(alg.mul(a, &zero), zero, "right annihilation");
    assert_eq!(alg.mul(&zero, a), zero, "left annihilation");
}

proptest! {
    #[test]
    fn arctic_is_a_strong_bimonoid(a in arctic_weight(), b in arctic_weight(), c in arctic_weight()) {
        bimonoid_laws(&Algebra::arctic(), &a, &b, &c);
    }

    #[test]
    fn naturals_are_a_strong_bimonoid(a in nat_weight(), b in nat_weight(), c in nat_weight()) {
        bimonoid_laws(&Algebra::naturals(), &a, &b, &c);
    }
}

fn tree_strategy(unary: u32, leaves: u32) -> impl Strategy<Value = Tree> {
    let leaf = (unary..unary + leaves).prop_map(Tree::leaf);
    leaf.prop_recursive(6, 64, 1, move |inner| {
        (0..unary, inner).prop_map(|(sym, child)| Tree::node(sym, vec![child]))
    })
}

proptest! {
    #[test]
    fn parse_inverts_display(xi in tree_strategy(2, 1)) {
        let alphabet = RankedAlphabet::of(&[("gamma", 1), ("nu", 1), ("alpha", 0)]);
        let text = xi.display(&alphabet).to_string();
        prop_assert_eq!(parse_term(&alphabet, &text).unwrap(), xi);
    }

    #[test]
    fn evaluate_matches_the_oracle_on_random_trees(xi in tree_strategy(2, 1)) {
        let a = arctic_two_state();
        prop_assert_eq!(a.evaluate(&xi), evaluate_naive(&a, &xi));
    }

    #[test]
    fn evaluate_matches_the_oracle_on_the_ambiguous_fixture(xi in tree_strategy(1, 1)) {
        let a = nat_three_state();
        prop_assert_eq!(a.evaluate(&xi), evaluate_naive(&a, &xi));
    }
}
