//! The JSON automaton file format and report rendering.
//!
//! An automaton file is one JSON object:
//!
//! ```json
//! {
//!   "algebra": {"kind": "arctic"},
//!   "alphabet": [{"symbol": "gamma", "rank": 1}, {"symbol": "alpha", "rank": 0}],
//!   "states": ["q"],
//!   "transitions": [{"children": ["q"], "symbol": "gamma", "state": "q", "weight": 1}],
//!   "roots": [{"state": "q", "weight": 0}]
//! }
//! ```
//!
//! Omitted transitions and roots denote the zero weight. Deterministic
//! automata with output weights additionally carry `"crisp": true` and an
//! `"outputs"` map; their roots equal their outputs, so plain evaluation
//! yields the output weight.

use serde_json::{json, Value as Json};

use crate::algebra::{Algebra, AlgebraKind, AlgebraSpec, InducedOp, InducedValue, JoinValue, Weight};
use crate::crisp::CrispDetWta;
use crate::decide::{DecisionReport, Verdict, Witness};
use crate::error::{Error, Result};
use crate::fta::{AmbiguityWitness, Dfta};
use crate::term::RankedAlphabet;
use crate::wta::Wta;

pub fn algebra_to_json(alg: &Algebra) -> Result<Json> {
    let j = match alg.kind() {
        AlgebraKind::Boolean => json!({"kind": "boolean"}),
        AlgebraKind::Naturals => json!({"kind": "naturals"}),
        AlgebraKind::Arctic => json!({"kind": "arctic"}),
        AlgebraKind::Tropical => json!({"kind": "tropical"}),
        AlgebraKind::Lcm => json!({"kind": "lcm"}),
        AlgebraKind::FSet => json!({"kind": "fset"}),
        AlgebraKind::Mat(n) => json!({"kind": "mat_n", "params": {"n": n}}),
        AlgebraKind::FLang(letters) => {
            json!({"kind": "flang", "params": {"letters": letters}})
        }
        AlgebraKind::PlusPlus => json!({"kind": "plusplus"}),
        AlgebraKind::TruncatedPlus => json!({"kind": "truncated_plus"}),
        AlgebraKind::Induced { add, mul } => json!({
            "kind": "induced",
            "params": {"add": op_name(*add), "mul": op_name(*mul)}
        }),
        AlgebraKind::Join => json!({"kind": "join"}),
        AlgebraKind::Quotient(_) => {
            return Err(Error::File(
                "quotient algebras are internal and not serializable".into(),
            ))
        }
    };
    Ok(j)
}

fn op_name(op: InducedOp) -> &'static str {
    match op {
        InducedOp::Plus => "plus",
        InducedOp::Max => "max",
        InducedOp::Times => "times",
        InducedOp::PlusPlusTwoAb => "plusplus2ab",
    }
}

fn op_from_name(s: &str) -> Result<InducedOp> {
    Ok(match s {
        "plus" => InducedOp::Plus,
        "max" => InducedOp::Max,
        "times" => InducedOp::Times,
        "plusplus2ab" => InducedOp::PlusPlusTwoAb,
        _ => return Err(Error::File(format!("unknown induced operation {s}"))),
    })
}

pub fn algebra_from_json(v: &Json) -> Result<Algebra> {
    let kind = v
        .get("kind")
        .and_then(Json::as_str)
        .ok_or_else(|| Error::File("algebra needs a \"kind\" string".into()))?;
    let params = v.get("params");
    let spec = match kind {
        "boolean" => AlgebraSpec::Boolean,
        "naturals" => AlgebraSpec::Naturals,
        "arctic" => AlgebraSpec::Arctic,
        "tropical" => AlgebraSpec::Tropical,
        "lcm" => AlgebraSpec::Lcm,
        "fset" => AlgebraSpec::FSet,
        "mat_n" => {
            let n = params
                .and_then(|p| p.get("n"))
                .and_then(Json::as_u64)
                .ok_or_else(|| Error::File("mat_n needs params.n".into()))?;
            AlgebraSpec::Mat(n as usize)
        }
        "flang" => {
            let letters = params
                .and_then(|p| p.get("letters"))
                .and_then(Json::as_array)
                .ok_or_else(|| Error::File("flang needs params.letters".into()))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(String::from)
                        .ok_or_else(|| Error::File("flang letters must be strings".into()))
                })
                .collect::<Result<Vec<String>>>()?;
            AlgebraSpec::FLang(letters)
        }
        "plusplus" => AlgebraSpec::PlusPlus,
        "truncated_plus" => AlgebraSpec::TruncatedPlus,
        "induced" => {
            let get = |k: &str| {
                params
                    .and_then(|p| p.get(k))
                    .and_then(Json::as_str)
                    .ok_or_else(|| Error::File(format!("induced needs params.{k}")))
            };
            AlgebraSpec::Induced {
                add: op_from_name(get("add")?)?,
                mul: op_from_name(get("mul")?)?,
            }
        }
        "join" => AlgebraSpec::Join,
        _ => return Err(Error::File(format!("unknown algebra kind {kind}"))),
    };
    crate::algebra::make_algebra(&spec)
}

/// A weight as a JSON literal in the shape [`Algebra::parse_weight`]
/// accepts, so serialization round-trips bit-exactly.
pub fn weight_to_json(alg: &Algebra, w: &Weight) -> Json {
    match w {
        Weight::Bool(b) => json!(*b as u64),
        Weight::Nat(n) => json!(n),
        Weight::Arctic(None) => json!("-inf"),
        Weight::Arctic(Some(n)) => json!(n),
        Weight::Tropical(None) => json!("inf"),
        Weight::Tropical(Some(n)) => json!(n),
        Weight::Set(s) => json!(s.iter().collect::<Vec<_>>()),
        Weight::Lang(l) => json!(l.iter().collect::<Vec<_>>()),
        Weight::Mat(m) => json!(m),
        Weight::PlusPlus(None) => json!("zero"),
        Weight::PlusPlus(Some(n)) => json!(n),
        Weight::Induced(InducedValue::Zero) => json!("zero"),
        Weight::Induced(InducedValue::One) => json!("one"),
        Weight::Induced(InducedValue::Elem(n)) => json!(n),
        Weight::Join(JoinValue::Zero) => json!("zero"),
        Weight::Join(JoinValue::One) => json!("one"),
        Weight::Join(JoinValue::Plain(n)) => json!(n),
        Weight::Join(JoinValue::Primed(n)) => json!(format!("{n}'")),
        Weight::Class(c) => {
            if let AlgebraKind::Quotient(t) = alg.kind() {
                weight_to_json(&t.base, &t.reps[*c as usize])
            } else {
                json!(format!("#{c}"))
            }
        }
    }
}

pub fn wta_to_json(a: &Wta) -> Result<Json> {
    let alphabet: Vec<Json> = a
        .alphabet
        .symbols()
        .map(|(_, name, rank)| json!({"symbol": name, "rank": rank}))
        .collect();
    let transitions: Vec<Json> = a
        .transitions()
        .map(|(sym, children, target, w)| {
            json!({
                "children": children.iter().map(|&c| a.state_name(c)).collect::<Vec<_>>(),
                "symbol": a.alphabet.name(sym),
                "state": a.state_name(target),
                "weight": weight_to_json(&a.algebra, w),
            })
        })
        .collect();
    let roots: Vec<Json> = (0..a.state_count() as u32)
        .filter(|&q| !a.algebra.is_zero(a.root_weight(q)))
        .map(|q| {
            json!({
                "state": a.state_name(q),
                "weight": weight_to_json(&a.algebra, a.root_weight(q)),
            })
        })
        .collect();
    Ok(json!({
        "algebra": algebra_to_json(&a.algebra)?,
        "alphabet": alphabet,
        "states": a.state_names(),
        "transitions": transitions,
        "roots": roots,
    }))
}

pub fn wta_from_json(v: &Json) -> Result<Wta> {
    let obj = |k: &str| {
        v.get(k)
            .ok_or_else(|| Error::File(format!("automaton file is missing \"{k}\"")))
    };
    let algebra = algebra_from_json(obj("algebra")?)?;
    let alphabet_entries = obj("alphabet")?
        .as_array()
        .ok_or_else(|| Error::File("\"alphabet\" must be an array".into()))?;
    let mut symbols: Vec<(String, usize)> = Vec::new();
    for e in alphabet_entries {
        let name = e
            .get("symbol")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::File("alphabet entries need a \"symbol\"".into()))?;
        let rank = e
            .get("rank")
            .and_then(Json::as_u64)
            .ok_or_else(|| Error::File("alphabet entries need a \"rank\"".into()))?;
        symbols.push((name.to_string(), rank as usize));
    }
    let alphabet = RankedAlphabet::new(symbols)?;
    let states: Vec<String> = obj("states")?
        .as_array()
        .ok_or_else(|| Error::File("\"states\" must be an array".into()))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(String::from)
                .ok_or_else(|| Error::File("state names must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let mut a = Wta::new(alphabet, algebra, states);
    for t in obj("transitions")?
        .as_array()
        .ok_or_else(|| Error::File("\"transitions\" must be an array".into()))?
    {
        let children: Vec<&str> = t
            .get("children")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::File("transitions need \"children\"".into()))?
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| Error::File("child states must be strings".into()))
            })
            .collect::<Result<_>>()?;
        let symbol = t
            .get("symbol")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::File("transitions need a \"symbol\"".into()))?;
        let state = t
            .get("state")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::File("transitions need a \"state\"".into()))?;
        let weight = a.algebra.parse_weight(
            t.get("weight")
                .ok_or_else(|| Error::File("transitions need a \"weight\"".into()))?,
        )?;
        a.add_transition(&children, symbol, state, weight)?;
    }
    for r in obj("roots")?
        .as_array()
        .ok_or_else(|| Error::File("\"roots\" must be an array".into()))?
    {
        let state = r
            .get("state")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::File("roots need a \"state\"".into()))?;
        let weight = a.algebra.parse_weight(
            r.get("weight")
                .ok_or_else(|| Error::File("roots need a \"weight\"".into()))?,
        )?;
        a.set_root(state, weight)?;
    }
    Ok(a)
}

/// A recognizer as a Boolean wta: accepting states get root weight true.
/// Evaluating a tree on the result yields its membership verdict.
pub fn dfta_to_wta(d: &Dfta) -> Wta {
    let algebra = Algebra::boolean();
    let mut a = Wta::new(d.alphabet.clone(), algebra, d.names.clone());
    for (sym, children, target) in d.transitions() {
        a.set_transition(sym, children.to_vec(), target, Weight::Bool(true));
    }
    for (q, &acc) in d.accepting.iter().enumerate() {
        if acc {
            a.set_root_by_id(q as u32, Weight::Bool(true));
        }
    }
    a
}

/// A crisp-deterministic automaton as a wta: unit transition weights and
/// the outputs as root weights, so plain evaluation yields the output.
pub fn crisp_to_wta(c: &CrispDetWta) -> Wta {
    let (alg, outputs) = c.0.outputs.as_ref().expect("crisp automaton has outputs");
    let mut a = Wta::new(c.0.alphabet.clone(), alg.clone(), c.0.names.clone());
    for (sym, children, target) in c.0.transitions() {
        a.set_transition(sym, children.to_vec(), target, alg.one());
    }
    for (q, w) in outputs.iter().enumerate() {
        a.set_root_by_id(q as u32, w.clone());
    }
    a
}

/// The crisp automaton file: the wta encoding plus the marker and the
/// explicit output map.
pub fn crisp_to_json(c: &CrispDetWta) -> Result<Json> {
    let a = crisp_to_wta(c);
    let mut j = wta_to_json(&a)?;
    let (alg, outputs) = c.0.outputs.as_ref().expect("outputs");
    let map: serde_json::Map<String, Json> = c
        .0
        .names
        .iter()
        .cloned()
        .zip(outputs.iter().map(|w| weight_to_json(alg, w)))
        .collect();
    let obj = j.as_object_mut().expect("wta files are objects");
    obj.insert("crisp".into(), json!(true));
    obj.insert("outputs".into(), Json::Object(map));
    Ok(j)
}

/// String automata use their own small file shape:
///
/// ```json
/// {
///   "algebra": {"kind": "naturals"},
///   "letters": ["a", "b"],
///   "states": ["p", "q"],
///   "initial": [{"state": "p", "weight": 1}],
///   "transitions": [{"from": "p", "letter": "a", "to": "q", "weight": 1}],
///   "finals": [{"state": "q", "weight": 1}]
/// }
/// ```
pub fn wsa_from_json(v: &Json) -> Result<crate::wta::Wsa> {
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| Error::File(format!("string-automaton file is missing \"{k}\"")))
    };
    let algebra = algebra_from_json(get("algebra")?)?;
    let strings = |k: &str| -> Result<Vec<String>> {
        get(k)?
            .as_array()
            .ok_or_else(|| Error::File(format!("\"{k}\" must be an array")))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(String::from)
                    .ok_or_else(|| Error::File(format!("\"{k}\" entries must be strings")))
            })
            .collect()
    };
    let letters = strings("letters")?;
    let states = strings("states")?;
    let state_id = |name: &str| -> Result<u32> {
        states
            .iter()
            .position(|s| s == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::File(format!("unknown state {name}")))
    };
    let letter_id = |name: &str| -> Result<u32> {
        letters
            .iter()
            .position(|l| l == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::File(format!("unknown letter {name}")))
    };
    let field = |e: &Json, k: &str| -> Result<String> {
        e.get(k)
            .and_then(Json::as_str)
            .map(String::from)
            .ok_or_else(|| Error::File(format!("entries need a \"{k}\" string")))
    };
    let weight_of = |e: &Json| -> Result<Weight> {
        algebra.parse_weight(
            e.get("weight")
                .ok_or_else(|| Error::File("entries need a \"weight\"".into()))?,
        )
    };
    let mut initial = vec![algebra.zero(); states.len()];
    for e in get("initial")?.as_array().into_iter().flatten() {
        initial[state_id(&field(e, "state")?)? as usize] = weight_of(e)?;
    }
    let mut final_weights = vec![algebra.zero(); states.len()];
    for e in get("finals")?.as_array().into_iter().flatten() {
        final_weights[state_id(&field(e, "state")?)? as usize] = weight_of(e)?;
    }
    let mut transitions = std::collections::BTreeMap::new();
    for e in get("transitions")?.as_array().into_iter().flatten() {
        let p = state_id(&field(e, "from")?)?;
        let l = letter_id(&field(e, "letter")?)?;
        let q = state_id(&field(e, "to")?)?;
        let w = weight_of(e)?;
        if !algebra.is_zero(&w) {
            transitions.insert((p, l, q), w);
        }
    }
    Ok(crate::wta::Wsa {
        letters,
        states,
        algebra,
        initial,
        transitions,
        final_weights,
    })
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

/// Render a weight without an algebra at hand (used when a witness refers
/// to an internal automaton whose algebra is not the input's).
fn weight_str(alg: Option<&Algebra>, w: &Weight) -> String {
    match alg {
        Some(a) => a.format_weight(w),
        None => match w {
            Weight::Arctic(None) => "-inf".into(),
            Weight::Arctic(Some(n)) => n.to_string(),
            Weight::Nat(n) => n.to_string(),
            _ => format!("{w:?}"),
        },
    }
}

/// The report as the JSON object the command line prints.
pub fn report_to_json(r: &DecisionReport, ctx: Option<&Wta>) -> Json {
    let alphabet = ctx.map(|a| &a.alphabet);
    let algebra = ctx.map(|a| &a.algebra);
    let term = |t: &crate::term::Tree| -> Json {
        match alphabet {
            Some(sigma) => json!(t.display(sigma).to_string()),
            None => Json::Null,
        }
    };
    let state = |q: u32| -> Json {
        match ctx {
            Some(a) if (q as usize) < a.state_count() => json!(a.state_name(q)),
            _ => json!(q),
        }
    };
    let witness = match &r.witness {
        None => Json::Null,
        Some(Witness::SmallLoop(l)) => json!({
            "type": "small-loop",
            "state": state(l.state),
            "context": term(l.context.tree()),
            "weight": weight_str(algebra, &l.weight),
        }),
        Some(Witness::Pump(d)) => json!({
            "type": "pump",
            "loop_state": state(d.loop_state),
            "root_state": state(d.root_state),
            "outer_context": term(d.c_outer.tree()),
            "loop_context": term(d.c_loop.tree()),
            "base_tree": term(&d.zeta),
        }),
        Some(Witness::Ambiguity(AmbiguityWitness::TwoLoops { state: s, context })) => json!({
            "type": "two-loops",
            "state": s,
            "context": term(context.tree()),
        }),
        Some(Witness::Ambiguity(AmbiguityWitness::StateSwitch { p, q, context })) => json!({
            "type": "state-switch",
            "p": p,
            "q": q,
            "context": term(context.tree()),
        }),
        Some(Witness::Values(vs)) => json!({
            "type": "values",
            "values": vs.iter().map(|w| weight_str(algebra, w)).collect::<Vec<_>>(),
        }),
        Some(Witness::Crisp(c)) => json!({
            "type": "crisp",
            "states": c.automaton.0.state_count(),
            "image": c
                .automaton
                .image()
                .iter()
                .map(|w| weight_str(algebra, w))
                .collect::<Vec<_>>(),
        }),
    };
    json!({
        "question": r.question,
        "verdict": verdict_str(r.verdict),
        "route": r.route,
        "witness": witness,
        "fuel_used": r.fuel_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_round_trip() {
        for a in [
            fixtures::arctic_one_state(),
            fixtures::nat_three_state(),
            fixtures::arctic_two_state(),
            fixtures::tropical_two_state(),
            fixtures::join_two_state(),
        ] {
            let j = wta_to_json(&a).unwrap();
            let b = wta_from_json(&j).unwrap();
            assert_eq!(wta_to_json(&b).unwrap(), j);
            // bit-exact: same states, transitions, roots, semantics
            assert_eq!(a.state_names(), b.state_names());
            for xi in crate::term::enumerate_trees(&a.alphabet, 3) {
                assert_eq!(a.evaluate(&xi), b.evaluate(&xi));
            }
        }
    }

    #[test]
    fn dfta_encoding_evaluates_membership() {
        let a = fixtures::nat_three_state();
        let d = crate::fta::determinize(&a);
        let b = dfta_to_wta(&d);
        for xi in crate::term::enumerate_trees(&a.alphabet, 5) {
            assert_eq!(b.evaluate(&xi), Weight::Bool(d.accepts(&xi)));
        }
        let j = wta_to_json(&b).unwrap();
        let c = wta_from_json(&j).unwrap();
        for xi in crate::term::enumerate_trees(&a.alphabet, 5) {
            assert_eq!(c.evaluate(&xi), Weight::Bool(d.accepts(&xi)));
        }
    }

    #[test]
    fn crisp_encoding_evaluates_outputs() {
        let a = fixtures::arctic_two_state();
        let r = match crate::crisp::crisp_determinize(&a, 64) {
            crate::crisp::CrispOutcome::Done(r) => r,
            other => panic!("expected success, got {other:?}"),
        };
        let j = crisp_to_json(&r.automaton).unwrap();
        assert_eq!(j["crisp"], json!(true));
        let b = wta_from_json(&j).unwrap();
        for xi in crate::term::enumerate_trees(&a.alphabet, 5) {
            assert_eq!(b.evaluate(&xi), a.evaluate(&xi));
        }
    }

    #[test]
    fn report_serialization_shape() {
        let a = fixtures::arctic_one_state();
        let r = crate::decide::decide_finite_image(&a, 64);
        let j = report_to_json(&r, Some(&a));
        assert_eq!(j["verdict"], json!("no"));
        assert_eq!(j["question"], json!("finite-image"));
        assert_eq!(j["witness"]["type"], json!("pump"));
        assert_eq!(j["witness"]["loop_context"], json!("gamma([])"));
    }

    #[test]
    fn weight_literals_round_trip() {
        let flang = Algebra::flang(vec!["a".into(), "b".into()]);
        let cases: Vec<(Algebra, Weight)> = vec![
            (Algebra::arctic(), Weight::Arctic(None)),
            (Algebra::arctic(), Weight::Arctic(Some(3))),
            (Algebra::tropical(), Weight::Tropical(None)),
            (
                Algebra::new(AlgebraKind::FSet),
                Weight::Set([1u64, 4].into_iter().collect()),
            ),
            (
                flang.clone(),
                Weight::Lang(["ab".to_string()].into_iter().collect()),
            ),
            (
                Algebra::new(AlgebraKind::Mat(2)),
                Weight::Mat(vec![1, 0, 2, 1]),
            ),
            (Algebra::plusplus(), Weight::PlusPlus(None)),
            (Algebra::join(), Weight::Join(JoinValue::Primed(2))),
        ];
        for (alg, w) in &cases {
            let j = weight_to_json(alg, w);
            assert_eq!(&alg.parse_weight(&j).unwrap(), w);
        }
    }
}
