//! Crisp determinization: turning a wta with finitely many reachable run
//! weights into a complete deterministic automaton with output weights,
//! plus the preimage and support recognizers built on it.

use std::collections::BTreeMap;

use crate::algebra::{quotient, Algebra, QuotientKind, Weight};
use crate::counting::{build_counting_wta, nat_preimage, NatTarget};
use crate::error::{Error, Result};
use crate::fta::{CombineMode, Dfta};
use crate::structure::{compute_hc, HcResult};
use crate::term::Tree;
use crate::wta::Wta;

/// A finite-image mapping presented as weighted indicator languages:
/// the value of a tree is the sum of the weights whose language contains
/// it.
#[derive(Clone, Debug)]
pub struct StepMapping {
    pub algebra: Algebra,
    pub steps: Vec<(Weight, Dfta)>,
}

impl StepMapping {
    pub fn evaluate(&self, xi: &Tree) -> Weight {
        let mut acc = self.algebra.zero();
        for (w, d) in &self.steps {
            if d.accepts(xi) {
                acc = self.algebra.add(&acc, w);
            }
        }
        acc
    }
}

/// A complete deterministic automaton whose per-state outputs give the
/// value of every tree directly.
#[derive(Clone, Debug)]
pub struct CrispDetWta(pub Dfta);

impl CrispDetWta {
    pub fn evaluate(&self, xi: &Tree) -> Weight {
        self.0.output(xi).expect("crisp automaton carries outputs")
    }

    pub fn image(&self) -> Vec<Weight> {
        let outs = &self.0.outputs.as_ref().expect("outputs").1;
        let mut im: Vec<Weight> = Vec::new();
        for w in outs {
            if !im.contains(w) {
                im.push(w.clone());
            }
        }
        im
    }
}

/// Which of the two per-target sub-procedures produced the step languages.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TargetRoute {
    /// The run count for this target is bounded by `bound`.
    Bounded { bound: u64 },
    /// The target's additive powers cycle with this index and period.
    AdditiveOrder { index: u64, period: u64 },
}

#[derive(Clone, Debug)]
pub struct PerTarget {
    pub target: Weight,
    pub route: TargetRoute,
    pub steps: StepMapping,
}

#[derive(Clone, Debug)]
pub struct CrispResult {
    pub automaton: CrispDetWta,
    pub per_target: Vec<PerTarget>,
    pub fuel_used: u64,
}

#[derive(Debug)]
pub enum CrispOutcome {
    Done(Box<CrispResult>),
    Diverged { fuel_used: u64 },
    NotApplicable(String),
}

/// Crisp-determinize a wta. Computes the reachable run weights (fuel-
/// capped); then, for each attainable complete weight `b`, runs two
/// sub-procedures in strict round-robin, one index step each: (i) accumulate
/// exact-count preimages until their union is universal (the count is
/// bounded), (ii) enumerate `i·b` until a repeat (finite additive order).
/// On a tie, (i) wins. The per-target step languages are assembled into
/// one synchronous product with pointwise-⊕ outputs.
pub fn crisp_determinize(a: &Wta, fuel: u64) -> CrispOutcome {
    let alg = &a.algebra;
    let sets = match compute_hc(a, fuel as usize) {
        HcResult::Stable(s) => s,
        HcResult::Diverged { layers, .. } => {
            return CrispOutcome::Diverged {
                fuel_used: layers as u64,
            }
        }
    };
    let mut fuel_used = sets.stabilized_at as u64;
    let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
    let mut per_target = Vec::new();
    let mut all_steps: Vec<(Weight, Dfta)> = Vec::new();
    for b in &sets.c {
        let counting = build_counting_wta(a, &tracked, b);
        let mut union: Option<Dfta> = None;
        let mut sums: Vec<Weight> = Vec::new(); // sums[i-1] = i·b
        let resolved;
        let mut i: u64 = 0;
        loop {
            if fuel_used >= fuel {
                return CrispOutcome::Diverged { fuel_used };
            }
            fuel_used += 1;
            // sub-procedure (i): is the count bounded by i?
            let li = match nat_preimage(&counting.wta, NatTarget::Exact(i)) {
                Ok(d) => d,
                Err(e) => return CrispOutcome::NotApplicable(e.to_string()),
            };
            let u = match union.take() {
                None => li,
                Some(u) => match u.combine(&li, CombineMode::Union) {
                    Ok(d) => d,
                    Err(e) => return CrispOutcome::NotApplicable(e.to_string()),
                },
            };
            let bounded = u.is_universal();
            union = Some(u);
            // sub-procedure (ii): do the additive powers of b repeat?
            let mut order = None;
            if i >= 1 {
                let s = alg.nsum(b, i);
                if let Some(j) = sums.iter().position(|x| *x == s) {
                    let index = j as u64 + 1;
                    order = Some((index, i - index));
                }
                sums.push(s);
            }
            if bounded {
                resolved = Some(TargetRoute::Bounded { bound: i });
                break;
            }
            if let Some((index, period)) = order {
                resolved = Some(TargetRoute::AdditiveOrder { index, period });
                break;
            }
            i += 1;
        }
        let route = resolved.expect("loop exits only once resolved");
        let mut steps = Vec::new();
        let build = |t: NatTarget| nat_preimage(&counting.wta, t);
        let result: Result<()> = (|| {
            match route {
                TargetRoute::Bounded { bound } => {
                    for j in 0..=bound {
                        steps.push((alg.nsum(b, j), build(NatTarget::Exact(j))?));
                    }
                }
                TargetRoute::AdditiveOrder { index, period } => {
                    for j in 0..index {
                        steps.push((alg.nsum(b, j), build(NatTarget::Exact(j))?));
                    }
                    for j in index..index + period {
                        steps.push((
                            alg.nsum(b, j),
                            build(NatTarget::Residue { m: j, n: period })?,
                        ));
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            return CrispOutcome::NotApplicable(e.to_string());
        }
        all_steps.extend(steps.iter().cloned());
        per_target.push(PerTarget {
            target: b.clone(),
            route,
            steps: StepMapping {
                algebra: alg.clone(),
                steps,
            },
        });
    }
    let automaton = assemble(
        a,
        &StepMapping {
            algebra: alg.clone(),
            steps: all_steps,
        },
    );
    CrispOutcome::Done(Box::new(CrispResult {
        automaton,
        per_target,
        fuel_used,
    }))
}

/// Synchronous product of the step languages; the output of a product
/// state is the sum of the weights of the accepting components.
pub fn assemble(a: &Wta, m: &StepMapping) -> CrispDetWta {
    let alg = &m.algebra;
    if m.steps.is_empty() {
        let mut d = Dfta::universal(&a.alphabet);
        d.accepting = vec![false];
        d.outputs = Some((alg.clone(), vec![alg.zero()]));
        return CrispDetWta(d);
    }
    let comps: Vec<&Dfta> = m.steps.iter().map(|(_, d)| d).collect();
    let mut index: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    let mut tuples_seen: Vec<Vec<u32>> = Vec::new();
    let mut transitions: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
    loop {
        let mut changed = false;
        for (sym, _, rank) in a.alphabet.symbols() {
            for combo in index_tuples(tuples_seen.len(), rank) {
                let key: Vec<u32> = combo.iter().map(|&i| i as u32).collect();
                if transitions.contains_key(&(sym, key.clone())) {
                    continue;
                }
                let target: Vec<u32> = comps
                    .iter()
                    .enumerate()
                    .map(|(ci, d)| {
                        let children: Vec<u32> =
                            combo.iter().map(|&i| tuples_seen[i][ci]).collect();
                        d.transitions[&(sym, children)]
                    })
                    .collect();
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = tuples_seen.len() as u32;
                        index.insert(target.clone(), id);
                        tuples_seen.push(target);
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
    let outputs: Vec<Weight> = tuples_seen
        .iter()
        .map(|t| {
            let mut acc = alg.zero();
            for (ci, (w, d)) in m.steps.iter().enumerate() {
                if d.accepting[t[ci] as usize] {
                    acc = alg.add(&acc, w);
                }
            }
            acc
        })
        .collect();
    let names: Vec<String> = (0..tuples_seen.len()).map(|i| format!("s{i}")).collect();
    let accepting = outputs.iter().map(|w| !alg.is_zero(w)).collect();
    CrispDetWta(Dfta {
        alphabet: a.alphabet.clone(),
        names,
        transitions,
        accepting,
        outputs: Some((alg.clone(), outputs)),
    })
}

fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Recognizer for `⟦a⟧⁻¹(b)`. For a finite algebra, crisp-determinize
/// directly; otherwise collapse everything outside `past(b)` into one
/// absorbing class first, which makes the algebra finite without moving
/// `b`'s preimage.
pub fn preimage(a: &Wta, b: &Weight) -> Result<Dfta> {
    if a.algebra.finite_carrier().is_some() {
        return preimage_finite(a, b);
    }
    let (_, hom) = quotient(&a.algebra, QuotientKind::PastCut(b.clone()))?;
    let mapped = a.map_weights(&hom);
    let goal = hom.map(b);
    let mut d = match preimage_finite(&mapped, &goal) {
        Ok(d) => d,
        Err(e) => return Err(e),
    };
    // keep the original algebra's zero/one out of the public surface: the
    // accepting set is all that matters here
    d.outputs = None;
    Ok(d)
}

fn preimage_finite(a: &Wta, b: &Weight) -> Result<Dfta> {
    let n = a
        .algebra
        .finite_carrier()
        .ok_or_else(|| Error::NotApplicable("preimage needs a finite algebra here".into()))?
        .len() as u64;
    let fuel = n * a.state_count() as u64 + n + 8;
    match crisp_determinize(a, fuel) {
        CrispOutcome::Done(r) => {
            let mut d = r.automaton.0;
            let outputs = &d.outputs.as_ref().expect("outputs").1;
            d.accepting = outputs.iter().map(|w| w == b).collect();
            Ok(d)
        }
        CrispOutcome::Diverged { .. } => Err(Error::NotApplicable(
            "crisp determinization over a finite algebra ran out of fuel".into(),
        )),
        CrispOutcome::NotApplicable(msg) => Err(Error::NotApplicable(msg)),
    }
}

/// Recognizer for the support: the complement of the preimage of zero.
pub fn support(a: &Wta) -> Result<Dfta> {
    Ok(preimage(a, &a.algebra.zero())?.complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::term::{enumerate_trees, parse_term, RankedAlphabet};

    #[test]
    fn arctic_two_state_crisp_determinizes() {
        let a = fixtures::arctic_two_state();
        let r = match crisp_determinize(&a, 64) {
            CrispOutcome::Done(r) => r,
            other => panic!("expected success, got {other:?}"),
        };
        let mut im = r.automaton.image();
        im.sort();
        assert_eq!(
            im,
            vec![
                Weight::Arctic(None),
                Weight::Arctic(Some(0)),
                Weight::Arctic(Some(1))
            ]
        );
        for xi in enumerate_trees(&a.alphabet, 5) {
            assert_eq!(r.automaton.evaluate(&xi), a.evaluate(&xi));
            for t in &r.per_target {
                // per-target step languages partition the trees
                let hits = t.steps.steps.iter().filter(|(_, d)| d.accepts(&xi)).count();
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn already_crisp_input_round_trips() {
        let alphabet = RankedAlphabet::of(&[("gamma", 1), ("e", 0)]);
        let mut a = Wta::new(
            alphabet,
            Algebra::arctic(),
            vec!["p".into(), "q".into()],
        );
        a.add_transition(&[], "e", "p", Weight::Arctic(Some(0))).unwrap();
        a.add_transition(&["p"], "gamma", "q", Weight::Arctic(Some(0))).unwrap();
        a.add_transition(&["q"], "gamma", "p", Weight::Arctic(Some(0))).unwrap();
        a.set_root("p", Weight::Arctic(Some(3))).unwrap();
        a.set_root("q", Weight::Arctic(Some(5))).unwrap();
        assert!(a.is_crisp_deterministic());
        let r = match crisp_determinize(&a, 64) {
            CrispOutcome::Done(r) => r,
            other => panic!("expected success, got {other:?}"),
        };
        for xi in enumerate_trees(&a.alphabet, 6) {
            assert_eq!(r.automaton.evaluate(&xi), a.evaluate(&xi));
        }
    }

    #[test]
    fn arctic_one_state_diverges() {
        let a = fixtures::arctic_one_state();
        assert!(matches!(
            crisp_determinize(&a, 32),
            CrispOutcome::Diverged { .. }
        ));
    }

    #[test]
    fn arctic_preimage_is_single_tree() {
        let a = fixtures::arctic_one_state();
        let d = preimage(&a, &Weight::Arctic(Some(2))).unwrap();
        for xi in enumerate_trees(&a.alphabet, 6) {
            assert_eq!(d.accepts(&xi), xi.height() == 2);
        }
    }

    #[test]
    fn nat_preimage_of_four_is_single_tree() {
        let a = fixtures::nat_three_state();
        let d = preimage(&a, &Weight::Nat(4)).unwrap();
        let four = parse_term(&a.alphabet, "gamma(gamma(gamma(gamma(e))))").unwrap();
        for xi in enumerate_trees(&a.alphabet, 8) {
            assert_eq!(d.accepts(&xi), xi == four);
            assert_eq!(d.accepts(&xi), a.evaluate(&xi) == Weight::Nat(4));
        }
    }

    #[test]
    fn unattained_value_has_empty_preimage() {
        let a = fixtures::nat_three_state();
        let d = preimage(&a, &Weight::Nat(3)).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn support_of_arctic_one_state_is_universal() {
        let a = fixtures::arctic_one_state();
        assert!(support(&a).unwrap().is_universal());
    }

    #[test]
    fn support_matches_brute_force() {
        let a = fixtures::arctic_two_state();
        let s = support(&a).unwrap();
        for xi in enumerate_trees(&a.alphabet, 5) {
            assert_eq!(s.accepts(&xi), !a.algebra.is_zero(&a.evaluate(&xi)));
        }
    }

    #[test]
    fn support_is_empty_without_root_weights() {
        let alphabet = RankedAlphabet::of(&[("alpha", 0)]);
        let mut a = Wta::new(alphabet, Algebra::arctic(), vec!["q".into()]);
        a.add_transition(&[], "alpha", "q", Weight::Arctic(Some(0))).unwrap();
        assert!(support(&a).unwrap().is_empty());
    }

    #[test]
    fn step_mapping_basics() {
        let a = fixtures::arctic_one_state();
        let constant = StepMapping {
            algebra: a.algebra.clone(),
            steps: vec![(Weight::Arctic(Some(9)), Dfta::universal(&a.alphabet))],
        };
        let empty = StepMapping {
            algebra: a.algebra.clone(),
            steps: vec![],
        };
        let xi = parse_term(&a.alphabet, "gamma(alpha)").unwrap();
        assert_eq!(constant.evaluate(&xi), Weight::Arctic(Some(9)));
        assert_eq!(empty.evaluate(&xi), Weight::Arctic(None));
        // assembled form agrees
        let crisp = assemble(&a, &constant);
        assert_eq!(crisp.evaluate(&xi), Weight::Arctic(Some(9)));
    }
}
