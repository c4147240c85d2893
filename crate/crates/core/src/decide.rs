//! Top-level decision procedures. Every answer is a report carrying the
//! verdict, the criterion that produced it, a replayable witness where one
//! exists, and the fuel spent. `Unknown` is a first-class outcome: when an
//! algebra lacks a property a criterion needs, we degrade honestly instead
//! of guessing.

use std::collections::BTreeSet;

use crate::algebra::{additive_order, AdditiveOrder, Algebra, Flag, Weight};
use crate::counting::{
    build_counting_wta, nat_finite_image, nat_preimage, NatImageWitness, NatTarget,
};
use crate::crisp::{crisp_determinize, CrispOutcome, CrispResult, TargetRoute};
use crate::error::{Error, Result};
use crate::fta::{finitely_ambiguous, unambiguous, AmbiguityWitness, CombineMode, Dfta};
use crate::grammar::{from_cfg, Grammar};
use crate::structure::{
    compute_hc, has_useful_state, small_loop_analysis, trim, HcResult, LoopWitness,
    PumpDecomposition, SmallLoopOutcome,
};
use crate::term::{enumerate_contexts, enumerate_trees, TreeStream};
use crate::wta::Wta;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Machine-checkable evidence attached to a verdict.
#[derive(Debug)]
pub enum Witness {
    /// A small loop with non-unit weight.
    SmallLoop(LoopWitness),
    /// A full pumping decomposition around such a loop; pumping it yields
    /// a strictly growing weight chain.
    Pump(Box<PumpDecomposition>),
    /// An infinite-ambiguity pattern in a run-count automaton.
    Ambiguity(AmbiguityWitness),
    /// A concrete set of weights (an image, a value sample, a cost set).
    Values(Vec<Weight>),
    /// A completed crisp determinization; its outputs are the exact image.
    Crisp(Box<CrispResult>),
}

#[derive(Debug)]
pub struct DecisionReport {
    pub question: String,
    pub verdict: Verdict,
    pub route: String,
    pub witness: Option<Witness>,
    pub fuel_used: u64,
}

fn report(
    question: &str,
    verdict: Verdict,
    route: &str,
    witness: Option<Witness>,
    fuel_used: u64,
) -> DecisionReport {
    DecisionReport {
        question: question.into(),
        verdict,
        route: route.into(),
        witness,
        fuel_used,
    }
}

/// Extend a loop witness to a full pumping decomposition: a base tree
/// running into the loop state and an accepting context above it. Both
/// exist in a trim automaton and are found within small height bounds.
pub fn pump_from_loop(a: &Wta, w: &LoopWitness) -> Option<PumpDecomposition> {
    let q = w.state;
    let mut base = None;
    for xi in enumerate_trees(&a.alphabet, a.state_count()) {
        if let Some(theta) = a.runs_to(q, &xi).into_iter().next() {
            base = Some((xi, theta));
            break;
        }
    }
    let (zeta, theta) = base?;
    for c in enumerate_contexts(&a.alphabet, 2 * a.state_count()) {
        for r in 0..a.state_count() as u32 {
            if a.algebra.is_zero(a.root_weight(r)) {
                continue;
            }
            if let Some(rho) = a.runs_on_context(r, &c, q).into_iter().next() {
                let split_outer = a.split_weight(&c, &rho).ok()?;
                let split_loop = a.split_weight(&w.context, &w.run).ok()?;
                return Some(PumpDecomposition {
                    c_outer: c,
                    c_loop: w.context.clone(),
                    zeta,
                    rho_outer: rho,
                    rho_loop: w.run.clone(),
                    theta,
                    root_state: r,
                    loop_state: q,
                    split_outer,
                    split_loop,
                });
            }
        }
    }
    None
}

/// Decide whether the automaton attains only finitely many values.
pub fn decide_finite_image(a: &Wta, fuel: u64) -> DecisionReport {
    let q = "finite-image";
    if !has_useful_state(a) {
        return report(
            q,
            Verdict::Yes,
            "no useful state; the mapping is constant zero",
            Some(Witness::Values(vec![a.algebra.zero()])),
            0,
        );
    }
    let t = trim(a).expect("a useful state exists");
    let flags = t.algebra.flags();
    if flags.monotonic != Flag::True {
        return report(
            q,
            Verdict::Unknown,
            "algebra not known monotonic; no applicable criterion",
            None,
            0,
        );
    }
    let outcome = match small_loop_analysis(&t) {
        Ok(o) => o,
        Err(e) => return report(q, Verdict::Unknown, &e.to_string(), None, 0),
    };
    match outcome {
        SmallLoopOutcome::Counterexample(w) => {
            if flags.past_finite == Flag::True {
                let witness = match pump_from_loop(&t, &w) {
                    Some(d) => Witness::Pump(Box::new(d)),
                    None => Witness::SmallLoop(w),
                };
                report(
                    q,
                    Verdict::No,
                    "past-finite monotonic algebra with a non-unit small loop; pumping it yields ever larger values",
                    Some(witness),
                    0,
                )
            } else if unambiguous(&t) {
                report(
                    q,
                    Verdict::No,
                    "unambiguous automaton over a monotonic algebra with a non-unit small loop",
                    Some(Witness::SmallLoop(w)),
                    0,
                )
            } else {
                report(
                    q,
                    Verdict::Unknown,
                    "non-unit small loop, but the algebra is not past-finite and the automaton is ambiguous",
                    Some(Witness::SmallLoop(w)),
                    0,
                )
            }
        }
        SmallLoopOutcome::AllOne => decide_finite_image_all_unit(&t, q, fuel),
    }
}

/// The all-unit-loops half of the finite-image characterization.
fn decide_finite_image_all_unit(t: &Wta, q: &str, fuel: u64) -> DecisionReport {
    let flags = t.algebra.flags();
    if flags.additively_locally_finite == Flag::True {
        return report(
            q,
            Verdict::Yes,
            "all small loops are unit and the algebra is additively locally finite",
            None,
            0,
        );
    }
    if let Ok(v) = finitely_ambiguous(t) {
        if v.finitely_ambiguous {
            return report(
                q,
                Verdict::Yes,
                "all small loops are unit and accepting-run counts are bounded",
                None,
                0,
            );
        }
    }
    let sets = match compute_hc(t, fuel as usize) {
        HcResult::Stable(s) => s,
        HcResult::Diverged { layers, .. } => {
            return report(
                q,
                Verdict::Unknown,
                "reachable run weights kept growing within the fuel budget",
                None,
                layers as u64,
            )
        }
    };
    let mut fuel_used = sets.stabilized_at as u64;
    let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
    for b in &sets.c {
        match additive_order(&t.algebra, b, fuel) {
            AdditiveOrder::Finite { .. } => continue,
            AdditiveOrder::Unknown => {
                return report(
                    q,
                    Verdict::Unknown,
                    &format!(
                        "additive order of {} undetermined within the fuel budget",
                        t.algebra.format_weight(b)
                    ),
                    None,
                    fuel_used + fuel,
                )
            }
            AdditiveOrder::Infinite => {
                fuel_used += 1;
                let counting = build_counting_wta(t, &tracked, b);
                match nat_finite_image(&counting.wta) {
                    Ok((true, _)) => continue,
                    Ok((false, w)) => {
                        let witness = w.map(|w| match w {
                            NatImageWitness::Loop(l) => Witness::SmallLoop(l),
                            NatImageWitness::Ambiguity(am) => Witness::Ambiguity(am),
                        });
                        return report(
                            q,
                            Verdict::No,
                            &format!(
                                "{} has infinite additive order and its run count is unbounded",
                                t.algebra.format_weight(b)
                            ),
                            witness,
                            fuel_used,
                        );
                    }
                    Err(e) => {
                        return report(q, Verdict::Unknown, &e.to_string(), None, fuel_used)
                    }
                }
            }
        }
    }
    report(
        q,
        Verdict::Yes,
        "all small loops unit; every attainable weight has finite additive order or a bounded run count",
        None,
        fuel_used,
    )
}

/// Per-target state for the step-language half of the image-bound search.
struct TargetState {
    b: Weight,
    counting: Wta,
    union: Option<Dfta>,
    sums: Vec<Weight>,
    i: u64,
    route: Option<TargetRoute>,
}

fn advance_target(alg: &Algebra, t: &mut TargetState) -> Result<()> {
    let i = t.i;
    let li = nat_preimage(&t.counting, NatTarget::Exact(i))?;
    let u = match t.union.take() {
        None => li,
        Some(u) => u.combine(&li, CombineMode::Union)?,
    };
    let bounded = u.is_universal();
    t.union = Some(u);
    let mut order = None;
    if i >= 1 {
        let s = alg.nsum(&t.b, i);
        if let Some(j) = t.sums.iter().position(|x| *x == s) {
            let index = j as u64 + 1;
            order = Some((index, i - index));
        }
        t.sums.push(s);
    }
    if bounded {
        t.route = Some(TargetRoute::Bounded { bound: i });
    } else if let Some((index, period)) = order {
        t.route = Some(TargetRoute::AdditiveOrder { index, period });
    }
    t.i += 1;
    Ok(())
}

/// Decide whether the automaton attains at most `k` distinct values, by
/// interleaving tree enumeration (which can refute the bound) with the
/// per-target step-language construction (which, once every target
/// resolves, yields the exact image via crisp determinization). One fuel
/// unit is one enumerated tree or one index step of one target.
pub fn decide_image_at_most(a: &Wta, k: u64, fuel: u64) -> Result<DecisionReport> {
    if k < 1 {
        return Err(Error::Usage("the image bound must be at least 1".into()));
    }
    let q = format!("image-at-most-{k}");
    let q = q.as_str();
    let flags = a.algebra.flags();
    if flags.monotonic != Flag::True || flags.past_finite != Flag::True {
        return Ok(report(
            q,
            Verdict::Unknown,
            "this procedure requires a past-finite monotonic algebra",
            None,
            0,
        ));
    }
    if !has_useful_state(a) {
        return Ok(report(
            q,
            Verdict::Yes,
            "no useful state; the image is the zero singleton",
            Some(Witness::Values(vec![a.algebra.zero()])),
            0,
        ));
    }
    let t = trim(a)?;
    if let SmallLoopOutcome::Counterexample(w) = small_loop_analysis(&t)? {
        let witness = match pump_from_loop(&t, &w) {
            Some(d) => Witness::Pump(Box::new(d)),
            None => Witness::SmallLoop(w),
        };
        return Ok(report(
            q,
            Verdict::No,
            "non-unit small loop: the image is infinite",
            Some(witness),
            0,
        ));
    }
    // step-language targets need the attainable complete weights
    let mut targets: Option<Vec<TargetState>> = match compute_hc(&t, fuel as usize) {
        HcResult::Stable(sets) => {
            let tracked: Vec<Weight> = sets.h.iter().cloned().collect();
            Some(
                sets.c
                    .iter()
                    .map(|b| TargetState {
                        b: b.clone(),
                        counting: build_counting_wta(&t, &tracked, b).wta,
                        union: None,
                        sums: Vec::new(),
                        i: 0,
                        route: None,
                    })
                    .collect(),
            )
        }
        HcResult::Diverged { .. } => None,
    };
    let hc_layers = match &targets {
        Some(_) => 0, // counted inside the loop as index steps instead
        None => fuel,
    };
    let _ = hc_layers;
    let mut fuel_used = 0u64;
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut stream = TreeStream::new(&t.alphabet);
    let mut cursor = 0usize;
    loop {
        if fuel_used >= fuel {
            return Ok(report(
                q,
                Verdict::Unknown,
                "fuel exhausted before either half of the search concluded",
                Some(Witness::Values(seen.into_iter().collect())),
                fuel_used,
            ));
        }
        // enumeration half: one tree
        match stream.next() {
            Some(xi) => {
                fuel_used += 1;
                seen.insert(t.evaluate(&xi));
                if seen.len() as u64 > k {
                    return Ok(report(
                        q,
                        Verdict::No,
                        "tree enumeration found more distinct values than the bound",
                        Some(Witness::Values(seen.into_iter().collect())),
                        fuel_used,
                    ));
                }
            }
            None => {
                // finitely many trees: the collected values are the image
                let verdict = if seen.len() as u64 <= k {
                    Verdict::Yes
                } else {
                    Verdict::No
                };
                return Ok(report(
                    q,
                    verdict,
                    "the term algebra is finite; the image was computed exhaustively",
                    Some(Witness::Values(seen.into_iter().collect())),
                    fuel_used,
                ));
            }
        }
        // step-language half: one index step of one unresolved target
        if let Some(ts) = targets.as_mut() {
            let unresolved: Vec<usize> = (0..ts.len()).filter(|&i| ts[i].route.is_none()).collect();
            if unresolved.is_empty() {
                // every target resolved: the crisp determinization below
                // terminates and its outputs are the exact image
                let needed: u64 = fuel.max(ts.iter().map(|t| t.i + 2).sum::<u64>() + 16);
                match crisp_determinize(&t, needed) {
                    CrispOutcome::Done(r) => {
                        let im = r.automaton.image();
                        let verdict = if im.len() as u64 <= k {
                            Verdict::Yes
                        } else {
                            Verdict::No
                        };
                        return Ok(report(
                            q,
                            verdict,
                            "step languages resolved for every attainable weight; exact image from the crisp automaton",
                            Some(Witness::Crisp(r)),
                            fuel_used,
                        ));
                    }
                    CrispOutcome::Diverged { fuel_used: f } => {
                        return Ok(report(q, Verdict::Unknown, "crisp determinization ran out of fuel", None, fuel_used + f))
                    }
                    CrispOutcome::NotApplicable(msg) => {
                        return Ok(report(q, Verdict::Unknown, &msg, None, fuel_used))
                    }
                }
            }
            let pick = unresolved[cursor % unresolved.len()];
            cursor += 1;
            fuel_used += 1;
            advance_target(&t.algebra, &mut ts[pick])?;
        }
    }
}

/// Variants of the step-shape questions.
#[derive(Clone, Debug)]
pub enum StepMode {
    /// Is the mapping the constant `b` on every tree?
    ConstantEq(Weight),
    /// Is the mapping constant?
    Constant,
    /// Is the mapping `b` on a recognizable language and zero elsewhere?
    OneStep,
    /// Does the mapping only attain values from this set?
    WithinSet(Vec<Weight>),
}

/// Decide the step-shape questions by bounding the image and inspecting
/// the exact image on success.
pub fn decide_step_properties(a: &Wta, mode: &StepMode, fuel: u64) -> Result<DecisionReport> {
    let (q, k) = match mode {
        StepMode::ConstantEq(_) => ("constant-eq", 1),
        StepMode::Constant => ("constant", 1),
        StepMode::OneStep => ("one-step", 2),
        StepMode::WithinSet(e) => ("e-step", (e.len() as u64).max(1)),
    };
    let base = decide_image_at_most(a, k, fuel)?;
    match base.verdict {
        Verdict::Unknown => Ok(DecisionReport {
            question: q.into(),
            ..base
        }),
        Verdict::No => Ok(DecisionReport {
            question: q.into(),
            verdict: Verdict::No,
            route: format!("more than {k} values attained: {}", base.route),
            witness: base.witness,
            fuel_used: base.fuel_used,
        }),
        Verdict::Yes => {
            let image: Vec<Weight> = match &base.witness {
                Some(Witness::Values(v)) => v.clone(),
                Some(Witness::Crisp(r)) => r.automaton.image(),
                _ => {
                    return Ok(report(
                        q,
                        Verdict::Unknown,
                        "image bound held but no exact image was produced",
                        None,
                        base.fuel_used,
                    ))
                }
            };
            let alg = &a.algebra;
            let ok = match mode {
                StepMode::ConstantEq(b) => image.len() == 1 && image[0] == *b,
                StepMode::Constant => true, // at most one value is attained
                StepMode::OneStep => {
                    image.iter().filter(|w| !alg.is_zero(w)).count() <= 1
                }
                StepMode::WithinSet(e) => image.iter().all(|w| e.contains(w)),
            };
            Ok(report(
                q,
                if ok { Verdict::Yes } else { Verdict::No },
                &format!("exact image computed: {}", render_weights(alg, &image)),
                Some(Witness::Values(image)),
                base.fuel_used,
            ))
        }
    }
}

fn render_weights(alg: &Algebra, ws: &[Weight]) -> String {
    let inner: Vec<String> = ws.iter().map(|w| alg.format_weight(w)).collect();
    format!("{{{}}}", inner.join(", "))
}

/// Decide whether the set of run weights into accepting states is finite.
pub fn cost_finite(a: &Wta) -> DecisionReport {
    let q = "cost-finite";
    if !has_useful_state(a) {
        return report(
            q,
            Verdict::Yes,
            "no useful state; the cost set is empty",
            Some(Witness::Values(vec![])),
            0,
        );
    }
    let t = trim(a).expect("a useful state exists");
    if t.algebra.flags().monotonic != Flag::True {
        return report(
            q,
            Verdict::Unknown,
            "algebra not known monotonic; the small-loop criterion does not apply",
            None,
            0,
        );
    }
    match small_loop_analysis(&t) {
        Ok(SmallLoopOutcome::AllOne) => {
            // with unit loops the cost set is computable outright
            let witness = match compute_hc(&t, t.state_count() * 8 + 8) {
                HcResult::Stable(s) => Some(Witness::Values(s.cost.into_iter().collect())),
                HcResult::Diverged { .. } => None,
            };
            report(
                q,
                Verdict::Yes,
                "every small loop has unit weight",
                witness,
                0,
            )
        }
        Ok(SmallLoopOutcome::Counterexample(w)) => report(
            q,
            Verdict::No,
            "a small loop with non-unit weight pumps the cost set to infinity",
            Some(Witness::SmallLoop(w)),
            0,
        ),
        Err(e) => report(q, Verdict::Unknown, &e.to_string(), None, 0),
    }
}

/// Decide whether a context-free grammar generates finitely many words,
/// via the finite-image property of its derivation-tree automaton over the
/// max-plus naturals.
pub fn cfg_finite(g: &Grammar, fuel: u64) -> Result<DecisionReport> {
    let q = "cfg-finite";
    let a = match from_cfg(g) {
        Ok(a) => a,
        Err(Error::EmptySemantics) => {
            return Ok(report(
                q,
                Verdict::Yes,
                "the reduced grammar is empty; the language is finite",
                None,
                0,
            ))
        }
        Err(e) => return Err(e),
    };
    let base = decide_finite_image(&a, fuel);
    Ok(DecisionReport {
        question: q.into(),
        verdict: base.verdict,
        route: format!("via the derivation-tree automaton: {}", base.route),
        witness: base.witness,
        fuel_used: base.fuel_used,
    })
}
