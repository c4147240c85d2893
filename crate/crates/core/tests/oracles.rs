//! Equivalence of the production algorithms against brute-force reference
//! implementations, exhaustively over all trees up to a height bound.

use wta::algebra::{quotient, QuotientKind, Weight};
use wta::counting::{nat_preimage, vector_determinize, NatTarget};
use wta::fixtures::*;
use wta::fta::determinize;
use wta::oracle::{count_accepting_runs_naive, evaluate_naive};
use wta::term::enumerate_trees;
use wta::wta::Wta;

fn fixtures() -> Vec<Wta> {
    vec![
        arctic_one_state(),
        nat_three_state(),
        arctic_two_state(),
        tropical_two_state(),
        join_two_state(),
    ]
}

#[test]
fn evaluate_matches_run_enumeration() {
    for a in fixtures() {
        for xi in enumerate_trees(&a.alphabet, 5) {
            assert_eq!(
                a.evaluate(&xi),
                evaluate_naive(&a, &xi),
                "on {}",
                xi.display(&a.alphabet)
            );
        }
    }
}

#[test]
fn determinize_preserves_the_support_language() {
    for a in fixtures() {
        let d = determinize(&a);
        for xi in enumerate_trees(&a.alphabet, 5) {
            let has_accepting_run = count_accepting_runs_naive(&a, &xi) > 0;
            assert_eq!(
                d.accepts(&xi),
                has_accepting_run,
                "on {}",
                xi.display(&a.alphabet)
            );
        }
    }
}

#[test]
fn vector_determinize_preserves_outputs() {
    // boolean projection: finite, distributive
    let b = arctic_two_state().boolean_projection();
    let d = vector_determinize(&b).unwrap();
    for xi in enumerate_trees(&b.alphabet, 5) {
        assert_eq!(d.output(&xi), Some(b.evaluate(&xi)));
    }

    // residue quotient of the naturals: finite, distributive
    let a = nat_three_state();
    let (_, h) = quotient(&a.algebra, QuotientKind::Modulo(3)).unwrap();
    let q = a.map_weights(&h);
    let d = vector_determinize(&q).unwrap();
    for xi in enumerate_trees(&q.alphabet, 5) {
        assert_eq!(d.output(&xi), Some(q.evaluate(&xi)));
    }
}

#[test]
fn nat_preimage_membership() {
    let a = nat_three_state();
    let trees = enumerate_trees(&a.alphabet, 8);
    let value = |xi: &wta::term::Tree| match a.evaluate(xi) {
        Weight::Nat(n) => n,
        _ => unreachable!(),
    };
    for n in [0u64, 1, 2, 4, 8] {
        let d = nat_preimage(&a, NatTarget::Exact(n)).unwrap();
        for xi in &trees {
            assert_eq!(d.accepts(xi), value(xi) == n, "exact({n})");
        }
    }
    for (m, n) in [(0u64, 2u64), (1, 2), (1, 3), (2, 3), (0, 1)] {
        let d = nat_preimage(&a, NatTarget::Residue { m, n }).unwrap();
        for xi in &trees {
            assert_eq!(d.accepts(xi), value(xi) % n == m % n, "residue({m},{n})");
        }
    }
}

#[test]
fn preimage_membership() {
    let cases: Vec<(Wta, Vec<Weight>)> = vec![
        (
            arctic_one_state(),
            vec![Weight::Arctic(Some(0)), Weight::Arctic(Some(2)), Weight::Arctic(None)],
        ),
        (
            arctic_two_state(),
            vec![Weight::Arctic(Some(0)), Weight::Arctic(Some(1)), Weight::Arctic(None)],
        ),
        (nat_three_state(), vec![Weight::Nat(1), Weight::Nat(2)]),
    ];
    for (a, targets) in cases {
        for b in targets {
            let d = wta::crisp::preimage(&a, &b).unwrap();
            for xi in enumerate_trees(&a.alphabet, 5) {
                assert_eq!(
                    d.accepts(&xi),
                    a.evaluate(&xi) == b,
                    "preimage of {} on {}",
                    a.algebra.format_weight(&b),
                    xi.display(&a.alphabet)
                );
            }
        }
    }
}
