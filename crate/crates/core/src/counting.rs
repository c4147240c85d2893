//! The ℕ-valued layer: run-count automata for a fixed target weight,
//! determinization over finite semirings by weight-vector subset
//! construction, preimages of naturals-weighted automata, and the
//! finite-image decision for them.

use std::collections::BTreeMap;

use crate::algebra::{quotient, Algebra, AlgebraKind, Flag, Weight, QuotientKind};
use crate::error::{Error, Result};
use crate::fta::{finitely_ambiguous, AmbiguityWitness, CombineMode, Dfta};
use crate::structure::{has_useful_state, small_loop_analysis, trim, LoopWitness, SmallLoopOutcome};
use crate::wta::Wta;

/// A naturals-weighted automaton whose value on a tree is the number of
/// runs of the original automaton with complete weight `target`. States
/// are pairs (original state, tracked run weight).
#[derive(Clone, Debug)]
pub struct CountingWta {
    pub wta: Wta,
    pub target: Weight,
}

/// Build the run-count automaton for target weight `b`. `tracked` must
/// contain every run weight the original automaton can produce; weights
/// whose tracked product escapes the set get no transition (such runs
/// cannot exist when `tracked` is complete).
pub fn build_counting_wta(a: &Wta, tracked: &[Weight], b: &Weight) -> CountingWta {
    let alg = &a.algebra;
    let index_of = |y: &Weight| tracked.iter().position(|t| t == y);
    let m = tracked.len();
    let names: Vec<String> = (0..a.state_count())
        .flat_map(|q| {
            tracked
                .iter()
                .map(move |y| (q, y))
                .collect::<Vec<_>>()
        })
        .map(|(q, y)| format!("{}#{}", a.state_name(q as u32), alg.format_weight(y)))
        .collect();
    let mut out = Wta::new(a.alphabet.clone(), Algebra::naturals(), names);
    for (sym, children, target, w) in a.transitions() {
        // every assignment of tracked weights to the child states
        let k = children.len();
        let mut assignment = vec![0usize; k];
        loop {
            let mut y = alg.one();
            for &yi in assignment.iter() {
                y = alg.mul(&y, &tracked[yi]);
            }
            y = alg.mul(&y, w);
            if let Some(yi) = index_of(&y) {
                let cs: Vec<u32> = children
                    .iter()
                    .zip(&assignment)
                    .map(|(&c, &a_i)| c * m as u32 + a_i as u32)
                    .collect();
                out.set_transition(sym, cs, target * m as u32 + yi as u32, Weight::Nat(1));
            }
            // odometer over the assignment
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                assignment[pos] += 1;
                if assignment[pos] < m {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    for q in 0..a.state_count() {
        for (yi, y) in tracked.iter().enumerate() {
            if alg.mul(y, a.root_weight(q as u32)) == *b {
                out.set_root_by_id((q * m + yi) as u32, Weight::Nat(1));
            }
        }
    }
    CountingWta {
        wta: out,
        target: b.clone(),
    }
}

/// Determinize a wta over a finite semiring into a complete automaton
/// with output weights: states are the reachable weight vectors indexed by
/// the original states, outputs fold in the root weights. Distributivity
/// makes the bottom-up vector evaluation equal the run semantics.
pub fn vector_determinize(a: &Wta) -> Result<Dfta> {
    let alg = &a.algebra;
    let flags = alg.flags();
    if flags.left_distributive != Flag::True || flags.right_distributive != Flag::True {
        return Err(Error::NotApplicable(
            "vector determinization requires a distributive algebra".into(),
        ));
    }
    if alg.finite_carrier().is_none() {
        return Err(Error::NotApplicable(
            "vector determinization requires a finite algebra".into(),
        ));
    }
    let n = a.state_count();
    let mut index: BTreeMap<Vec<Weight>, u32> = BTreeMap::new();
    let mut vectors: Vec<Vec<Weight>> = Vec::new();
    let mut transitions: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
    loop {
        let mut changed = false;
        for (sym, _, rank) in a.alphabet.symbols() {
            let entries = a.transitions_for(sym);
            let count = vectors.len();
            for combo in tuples(count, rank) {
                let key: Vec<u32> = combo.iter().map(|&i| i as u32).collect();
                if transitions.contains_key(&(sym, key.clone())) {
                    continue;
                }
                let mut vec = vec![alg.zero(); n];
                for (children, target, w) in &entries {
                    let mut prod = alg.one();
                    for (j, &c) in children.iter().enumerate() {
                        prod = alg.mul(&prod, &vectors[combo[j]][c as usize]);
                    }
                    prod = alg.mul(&prod, w);
                    let t = *target as usize;
                    vec[t] = alg.add(&vec[t], &prod);
                }
                let id = match index.get(&vec) {
                    Some(&id) => id,
                    None => {
                        let id = vectors.len() as u32;
                        index.insert(vec.clone(), id);
                        vectors.push(vec);
                        changed = true;
                        id
                    }
                };
                transitions.insert((sym, key), id);
            }
        }
        if !changed {
            break;
        }
    }
    let names: Vec<String> = vectors
        .iter()
        .map(|v| {
            let inner: Vec<String> = v.iter().map(|w| alg.format_weight(w)).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    let outputs: Vec<Weight> = vectors
        .iter()
        .map(|v| {
            let mut acc = alg.zero();
            for (q, w) in v.iter().enumerate() {
                acc = alg.add(&acc, &alg.mul(w, a.root_weight(q as u32)));
            }
            acc
        })
        .collect();
    let accepting = outputs.iter().map(|w| !alg.is_zero(w)).collect();
    Ok(Dfta {
        alphabet: a.alphabet.clone(),
        names,
        transitions,
        accepting,
        outputs: Some((alg.clone(), outputs)),
    })
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Target of a naturals-preimage query.
#[derive(Clone, Copy, Debug)]
pub enum NatTarget {
    /// Trees with value exactly `n`.
    Exact(u64),
    /// Trees with value in `m + n·ℕ`.
    Residue { m: u64, n: u64 },
}

/// Recognizer for the preimage of a naturals-weighted automaton: exact
/// values via the threshold quotient, residue classes via the modulo
/// quotient and the set difference `r⁻¹(m′+n·ℕ) ∖ ∪_{j<k} r⁻¹(m′+n·j)`
/// for targets `m = m′ + n·k` with `m ≥ n`.
pub fn nat_preimage(a: &Wta, target: NatTarget) -> Result<Dfta> {
    if !matches!(a.algebra.kind(), AlgebraKind::Naturals) {
        return Err(Error::NotApplicable(
            "naturals preimage requires a naturals-weighted automaton".into(),
        ));
    }
    match target {
        NatTarget::Exact(n) => {
            let (_, hom) = quotient(&a.algebra, QuotientKind::Threshold(n))?;
            let mapped = a.map_weights(&hom);
            let mut d = vector_determinize(&mapped)?;
            let goal = hom.map(&Weight::Nat(n));
            retarget(&mut d, &goal);
            Ok(d)
        }
        NatTarget::Residue { m, n } => {
            if n == 0 {
                return Err(Error::NotApplicable("residue step must be positive".into()));
            }
            if n >= 2 && m < n {
                let (_, hom) = quotient(&a.algebra, QuotientKind::Modulo(n))?;
                let mapped = a.map_weights(&hom);
                let mut d = vector_determinize(&mapped)?;
                let goal = hom.map(&Weight::Nat(m));
                retarget(&mut d, &goal);
                return Ok(d);
            }
            let m_low = m % n;
            let k = m / n;
            let mut base = if n == 1 {
                Dfta::universal(&a.alphabet)
            } else {
                nat_preimage(a, NatTarget::Residue { m: m_low, n })?
            };
            for j in 0..k {
                let skip = nat_preimage(a, NatTarget::Exact(m_low + n * j))?;
                base = base.combine(&skip, CombineMode::Difference)?;
            }
            Ok(base)
        }
    }
}

/// Accept exactly the states whose output equals `goal`.
fn retarget(d: &mut Dfta, goal: &Weight) {
    let outputs = &d.outputs.as_ref().expect("determinized with outputs").1;
    d.accepting = outputs.iter().map(|w| w == goal).collect();
}

/// Why a naturals-weighted automaton has infinite image.
#[derive(Clone, Debug)]
pub enum NatImageWitness {
    Loop(LoopWitness),
    Ambiguity(AmbiguityWitness),
}

/// Finite-image test for naturals-weighted automata: after trimming, the
/// image is finite iff all small loops have weight 1 and the underlying
/// fta is finitely ambiguous.
pub fn nat_finite_image(a: &Wta) -> Result<(bool, Option<NatImageWitness>)> {
    if !matches!(a.algebra.kind(), AlgebraKind::Naturals) {
        return Err(Error::NotApplicable(
            "finite-image test here requires a naturals-weighted automaton".into(),
        ));
    }
    if !has_useful_state(a) {
        return Ok((true, None));
    }
    let t = trim(a)?;
    match small_loop_analysis(&t)? {
        SmallLoopOutcome::Counterexample(w) => Ok((false, Some(NatImageWitness::Loop(w)))),
        SmallLoopOutcome::AllOne => {
            let v = finitely_ambiguous(&t)?;
            Ok((
                v.finitely_ambiguous,
                v.witness.map(NatImageWitness::Ambiguity),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle;
    use crate::structure::{compute_hc, HcResult};
    use crate::term::{enumerate_trees, parse_term, RankedAlphabet};

    fn hc(a: &Wta) -> crate::structure::ReachabilitySets {
        match compute_hc(a, 64) {
            HcResult::Stable(s) => s,
            HcResult::Diverged { .. } => panic!("fixture has finite reachable weights"),
        }
    }

    #[test]
    fn counting_wta_counts_runs_by_value() {
        for a in [fixtures::arctic_two_state(), fixtures::tropical_two_state()] {
            let sets = hc(&a);
            let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
            for b in &sets.c {
                let counting = build_counting_wta(&a, &tracked, b);
                for xi in enumerate_trees(&a.alphabet, 4) {
                    assert_eq!(
                        counting.wta.evaluate(&xi),
                        Weight::Nat(oracle::count_runs_with_value(&a, &xi, b)),
                    );
                }
            }
        }
    }

    #[test]
    fn counting_wta_single_run_example() {
        let a = fixtures::arctic_two_state();
        let sets = hc(&a);
        let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
        let counting = build_counting_wta(&a, &tracked, &Weight::Arctic(Some(1)));
        let xi = parse_term(&a.alphabet, "nu(gamma(gamma(gamma(alpha))))").unwrap();
        assert_eq!(counting.wta.evaluate(&xi), Weight::Nat(1));
    }

    #[test]
    fn counting_wta_unreachable_target_is_zero() {
        let a = fixtures::arctic_two_state();
        let sets = hc(&a);
        let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
        let counting = build_counting_wta(&a, &tracked, &Weight::Arctic(Some(7)));
        for xi in enumerate_trees(&a.alphabet, 4) {
            assert_eq!(counting.wta.evaluate(&xi), Weight::Nat(0));
        }
    }

    #[test]
    fn value_recovers_from_counts() {
        // summing count·b over all complete weights b recovers the value
        let a = fixtures::arctic_two_state();
        let sets = hc(&a);
        let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
        let countings: Vec<(Weight, CountingWta)> = sets
            .c
            .iter()
            .map(|b| (b.clone(), build_counting_wta(&a, &tracked, b)))
            .collect();
        for xi in enumerate_trees(&a.alphabet, 4) {
            let mut acc = a.algebra.zero();
            for (b, counting) in &countings {
                let Weight::Nat(count) = counting.wta.evaluate(&xi) else {
                    panic!("count automaton is naturals-weighted");
                };
                acc = a.algebra.add(&acc, &a.algebra.nsum(b, count));
            }
            assert_eq!(acc, a.evaluate(&xi));
        }
    }

    #[test]
    fn vector_determinize_mod5_matches_evaluate() {
        let a = fixtures::nat_three_state();
        let (_, hom) = quotient(&a.algebra, QuotientKind::Modulo(5)).unwrap();
        let mapped = a.map_weights(&hom);
        let d = vector_determinize(&mapped).unwrap();
        for xi in enumerate_trees(&a.alphabet, 8) {
            assert_eq!(d.output(&xi).unwrap(), mapped.evaluate(&xi));
        }
    }

    #[test]
    fn vector_determinize_boolean_is_subset_construction() {
        let a = fixtures::nat_three_state().boolean_projection();
        let d = vector_determinize(&a).unwrap();
        let s = crate::fta::determinize(&a);
        assert!(d.equivalent(&s).unwrap());
    }

    #[test]
    fn vector_determinize_deterministic_input_has_singleton_vectors() {
        let a = fixtures::arctic_one_state().boolean_projection();
        assert!(a.is_deterministic());
        let d = vector_determinize(&a).unwrap();
        for name in &d.names {
            // vector rendering over one state: at most one true coordinate
            assert!(name == "[0]" || name == "[1]");
        }
    }

    #[test]
    fn exact_preimage_matches_evaluate() {
        let a = fixtures::nat_three_state();
        for n in [0u64, 1, 2, 4, 5] {
            let d = nat_preimage(&a, NatTarget::Exact(n)).unwrap();
            for xi in enumerate_trees(&a.alphabet, 8) {
                assert_eq!(d.accepts(&xi), a.evaluate(&xi) == Weight::Nat(n));
            }
        }
    }

    #[test]
    fn residue_preimage_matches_evaluate() {
        let a = fixtures::nat_three_state();
        for (m, n) in [(0u64, 2u64), (1, 2), (2, 2), (1, 3), (5, 2), (0, 1), (3, 1)] {
            let d = nat_preimage(&a, NatTarget::Residue { m, n }).unwrap();
            for xi in enumerate_trees(&a.alphabet, 8) {
                let Weight::Nat(v) = a.evaluate(&xi) else { panic!() };
                let expected = v >= m && (v - m) % n == 0;
                assert_eq!(d.accepts(&xi), expected, "m={m} n={n} v={v}");
            }
        }
    }

    #[test]
    fn exact_preimages_partition_bounded_image() {
        let a = fixtures::arctic_two_state();
        let sets = hc(&a);
        let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
        let counting = build_counting_wta(&a, &tracked, &Weight::Arctic(Some(1)));
        // counts here are 0 or 1; the exact-0 and exact-1 languages are
        // disjoint and jointly universal
        let d0 = nat_preimage(&counting.wta, NatTarget::Exact(0)).unwrap();
        let d1 = nat_preimage(&counting.wta, NatTarget::Exact(1)).unwrap();
        assert!(d0.combine(&d1, CombineMode::Intersect).unwrap().is_empty());
        assert!(d0.combine(&d1, CombineMode::Union).unwrap().is_universal());
    }

    #[test]
    fn nat_image_verdicts() {
        assert!(!nat_finite_image(&fixtures::nat_three_state()).unwrap().0);

        let alphabet = RankedAlphabet::of(&[("gamma", 1), ("e", 0)]);
        let mut ones = Wta::new(alphabet, Algebra::naturals(), vec!["q".into()]);
        ones.add_transition(&[], "e", "q", Weight::Nat(1)).unwrap();
        ones.add_transition(&["q"], "gamma", "q", Weight::Nat(1)).unwrap();
        ones.set_root("q", Weight::Nat(1)).unwrap();
        assert!(nat_finite_image(&ones).unwrap().0);

        let a = fixtures::arctic_two_state();
        let sets = hc(&a);
        let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
        let counting = build_counting_wta(&a, &tracked, &Weight::Arctic(Some(1)));
        assert!(nat_finite_image(&counting.wta).unwrap().0);
    }
}
