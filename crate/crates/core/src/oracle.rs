//! Brute-force reference implementations used to cross-check the efficient
//! algorithms. Everything here enumerates explicitly and is only meant for
//! tiny inputs.

use std::collections::BTreeSet;

use crate::algebra::Weight;
use crate::term::{enumerate_contexts, enumerate_trees, Tree};
use crate::wta::Wta;

/// Run semantics by explicit run enumeration.
pub fn evaluate_naive(a: &Wta, xi: &Tree) -> Weight {
    let mut acc = a.algebra.zero();
    for rho in a.runs(xi) {
        let w = a.weight_of_run(xi, &rho).expect("enumerated run is valid");
        let complete = a.algebra.mul(&w, a.root_weight(rho.state));
        acc = a.algebra.add(&acc, &complete);
    }
    acc
}

/// Number of runs reaching a nonzero root weight.
pub fn count_accepting_runs_naive(a: &Wta, xi: &Tree) -> u64 {
    a.runs(xi)
        .iter()
        .filter(|r| !a.algebra.is_zero(a.root_weight(r.state)))
        .count() as u64
}

/// Number of runs whose complete weight equals `b`.
pub fn count_runs_with_value(a: &Wta, xi: &Tree, b: &Weight) -> u64 {
    a.runs(xi)
        .iter()
        .filter(|rho| {
            let w = a.weight_of_run(xi, rho).expect("valid run");
            a.algebra.mul(&w, a.root_weight(rho.state)) == *b
        })
        .count() as u64
}

/// All values attained on trees up to the height bound.
pub fn image_up_to_height(a: &Wta, max_height: usize) -> BTreeSet<Weight> {
    enumerate_trees(&a.alphabet, max_height)
        .iter()
        .map(|xi| evaluate_naive(a, xi))
        .collect()
}

/// All loops `(q, c, rho)` with non-unit weight, over contexts of height 1
/// up to `max_height`, by explicit enumeration.
pub fn non_unit_loops(
    a: &Wta,
    max_height: usize,
) -> Vec<(u32, crate::term::Context, crate::wta::Run, Weight)> {
    let mut out = Vec::new();
    for c in enumerate_contexts(&a.alphabet, max_height) {
        if c.height() == 0 {
            continue;
        }
        for q in 0..a.state_count() as u32 {
            for rho in a.runs_on_context(q, &c, q) {
                let w = a.weight_of_run(c.tree(), &rho).expect("valid loop run");
                if !a.algebra.is_one(&w) {
                    out.push((q, c.clone(), rho, w));
                }
            }
        }
    }
    out
}

/// Run-weight set restricted to runs whose root has nonzero root weight,
/// over trees up to the height bound (the cost set at desk scale).
pub fn cost_set_up_to_height(a: &Wta, max_height: usize) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    for xi in enumerate_trees(&a.alphabet, max_height) {
        for rho in a.runs(&xi) {
            if !a.algebra.is_zero(a.root_weight(rho.state)) {
                out.insert(a.weight_of_run(&xi, &rho).expect("valid run"));
            }
        }
    }
    out
}

/// Run-weight sets H and complete-weight sets C over trees up to the
/// height bound.
pub fn hc_up_to_height(a: &Wta, max_height: usize) -> (BTreeSet<Weight>, BTreeSet<Weight>) {
    let mut h = BTreeSet::new();
    let mut c = BTreeSet::new();
    for xi in enumerate_trees(&a.alphabet, max_height) {
        for rho in a.runs(&xi) {
            let w = a.weight_of_run(&xi, &rho).expect("valid run");
            c.insert(a.algebra.mul(&w, a.root_weight(rho.state)));
            h.insert(w);
        }
    }
    (h, c)
}
