//! Small reference automata shared by the test suites and CLI examples.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, JoinValue, Weight};
use crate::term::{RankedAlphabet, Tree};
use crate::wta::{Wsa, Wta};

/// The tower `u(u(...u(leaf)...))` with `n` unary layers.
pub fn unary_tower(alphabet: &RankedAlphabet, unary: &str, leaf: &str, n: usize) -> Tree {
    let u = alphabet.lookup(unary).expect("unary symbol");
    let l = alphabet.lookup(leaf).expect("leaf symbol");
    (0..n).fold(Tree::leaf(l), |t, _| Tree::node(u, vec![t]))
}

/// One state over the arctic semiring; value of `gamma^n(alpha)` is `n`.
/// Deterministic, infinite image.
pub fn arctic_one_state() -> Wta {
    let alphabet = RankedAlphabet::of(&[("gamma", 1), ("alpha", 0)]);
    let mut a = Wta::new(alphabet, Algebra::arctic(), vec!["q".into()]);
    a.add_transition(&[], "alpha", "q", Weight::Arctic(Some(0))).unwrap();
    a.add_transition(&["q"], "gamma", "q", Weight::Arctic(Some(1))).unwrap();
    a.set_root("q", Weight::Arctic(Some(0))).unwrap();
    a
}

/// Three states over the naturals; value of `gamma^(2n)(e)` is `2^n` via
/// `2^n` accepting runs of weight 1 each. Not finitely ambiguous.
pub fn nat_three_state() -> Wta {
    let alphabet = RankedAlphabet::of(&[("gamma", 1), ("e", 0)]);
    let mut a = Wta::new(
        alphabet,
        Algebra::naturals(),
        vec!["p".into(), "q".into(), "r".into()],
    );
    let one = Weight::Nat(1);
    a.add_transition(&[], "e", "p", one.clone()).unwrap();
    a.add_transition(&["p"], "gamma", "q", one.clone()).unwrap();
    a.add_transition(&["q"], "gamma", "p", one.clone()).unwrap();
    a.add_transition(&["p"], "gamma", "r", one.clone()).unwrap();
    a.add_transition(&["r"], "gamma", "p", one.clone()).unwrap();
    a.set_root("p", one).unwrap();
    a
}

/// Two states over the arctic semiring; image `{-inf, 0, 1}`. All loop
/// transitions carry the unit, so the image is finite.
pub fn arctic_two_state() -> Wta {
    let alphabet = RankedAlphabet::of(&[("gamma", 1), ("nu", 1), ("alpha", 0)]);
    let mut a = Wta::new(
        alphabet,
        Algebra::arctic(),
        vec!["q1".into(), "q2".into()],
    );
    a.add_transition(&[], "alpha", "q1", Weight::Arctic(Some(0))).unwrap();
    a.add_transition(&["q1"], "gamma", "q1", Weight::Arctic(Some(0))).unwrap();
    a.add_transition(&["q1"], "nu", "q2", Weight::Arctic(Some(1))).unwrap();
    a.set_root("q1", Weight::Arctic(Some(0))).unwrap();
    a.set_root("q2", Weight::Arctic(Some(0))).unwrap();
    a
}

/// Same transition structure as [`arctic_two_state`] but over the tropical
/// semiring, whose natural order is not monotonic.
pub fn tropical_two_state() -> Wta {
    let alphabet = RankedAlphabet::of(&[("gamma", 1), ("nu", 1), ("alpha", 0)]);
    let mut a = Wta::new(
        alphabet,
        Algebra::tropical(),
        vec!["q1".into(), "q2".into()],
    );
    a.add_transition(&[], "alpha", "q1", Weight::Tropical(Some(0))).unwrap();
    a.add_transition(&["q1"], "gamma", "q1", Weight::Tropical(Some(0))).unwrap();
    a.add_transition(&["q1"], "nu", "q2", Weight::Tropical(Some(1))).unwrap();
    a.set_root("q1", Weight::Tropical(Some(0))).unwrap();
    a.set_root("q2", Weight::Tropical(Some(0))).unwrap();
    a
}

/// Two states over the two-chain join algebra (idempotent, monotonic, not
/// past-finite); every tree evaluates to `1'`, so the image is finite even
/// though one small loop has non-unit weight.
pub fn join_two_state() -> Wta {
    let alphabet = RankedAlphabet::of(&[("gamma", 1), ("e", 0)]);
    let alg = Algebra::join();
    let one = alg.one();
    let mut a = Wta::new(alphabet, alg, vec!["p".into(), "q".into()]);
    a.add_transition(&[], "e", "p", one.clone()).unwrap();
    a.add_transition(&[], "e", "q", Weight::Join(JoinValue::Primed(1))).unwrap();
    a.add_transition(&["p"], "gamma", "p", Weight::Join(JoinValue::Plain(1))).unwrap();
    a.add_transition(&["q"], "gamma", "q", one.clone()).unwrap();
    a.set_root("p", one.clone()).unwrap();
    a.set_root("q", one).unwrap();
    a
}

/// One-letter wsa over the naturals with all weights 1; the value of a word
/// of length `n` is 1 (single path).
pub fn wsa_unary_counting() -> Wsa {
    let mut transitions = BTreeMap::new();
    transitions.insert((0u32, 0u32, 0u32), Weight::Nat(1));
    Wsa {
        letters: vec!["a".into()],
        states: vec!["q".into()],
        algebra: Algebra::naturals(),
        initial: vec![Weight::Nat(1)],
        transitions,
        final_weights: vec![Weight::Nat(1)],
    }
}

/// Two-letter, two-state wsa over the naturals with branching, used to
/// exercise the word-to-tree encoding beyond the single-path case.
pub fn wsa_two_state() -> Wsa {
    let mut transitions = BTreeMap::new();
    transitions.insert((0u32, 0u32, 0u32), Weight::Nat(2));
    transitions.insert((0u32, 0u32, 1u32), Weight::Nat(1));
    transitions.insert((1u32, 1u32, 0u32), Weight::Nat(3));
    transitions.insert((1u32, 1u32, 1u32), Weight::Nat(1));
    Wsa {
        letters: vec!["a".into(), "b".into()],
        states: vec!["s".into(), "t".into()],
        algebra: Algebra::naturals(),
        initial: vec![Weight::Nat(1), Weight::Nat(0)],
        transitions,
        final_weights: vec![Weight::Nat(1), Weight::Nat(2)],
    }
}
