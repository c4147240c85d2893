//! Command-line surface. Every invocation prints one JSON report on
//! standard output; the exit code mirrors the verdict: 0 = yes, 1 = no,
//! 2 = unknown, 3 = usage/IO/parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use wta::algebra::check_axioms;
use wta::crisp::{crisp_determinize, CrispOutcome};
use wta::decide::{
    cfg_finite, cost_finite, decide_finite_image, decide_image_at_most, decide_step_properties,
    DecisionReport, StepMode, Verdict,
};
use wta::error::{Error, Result};
use wta::format::{
    crisp_to_json, dfta_to_wta, report_to_json, verdict_str, wsa_from_json, wta_from_json,
    wta_to_json,
};
use wta::grammar::Grammar;
use wta::structure::trim;
use wta::term::parse_term;
use wta::wta::{from_wsa, word_to_tree, Wta};

#[derive(Parser)]
#[command(name = "wta", about = "weighted tree automata over strong bimonoids")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the automaton on a tree.
    Eval {
        file: PathBuf,
        #[arg(long)]
        tree: String,
    },
    /// Remove useless states.
    Trim {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recognizer for the trees with nonzero value.
    Support {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recognizer for the trees with a given value.
    Preimage {
        file: PathBuf,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Crisp-determinize into a deterministic automaton with outputs.
    Crisp {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decision procedures with verdict reports.
    Decide {
        #[command(subcommand)]
        question: DecideCmd,
    },
    /// Decide whether a context-free grammar's language is finite.
    CfgFinite {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
    },
    /// Evaluate a weighted string automaton on a word, directly and
    /// through its tree encoding.
    WsaEval {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Check the bimonoid axioms and declared flags on sample weights.
    CheckAlgebra { file: PathBuf },
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Does the automaton attain only finitely many values?
    FiniteImage {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
    },
    /// Does it attain at most k values?
    ImageAtMost {
        file: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
    },
    /// Is the set of accepting run weights finite?
    CostFinite { file: PathBuf },
    /// Is the mapping constant (equal to --weight, when given)?
    Constant {
        file: PathBuf,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
    },
    /// Is the mapping a single weight on a recognizable language and zero
    /// elsewhere?
    OneStep {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
    },
    /// Does the mapping only attain values from --set?
    EStep {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 256)]
        fuel: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let report = json!({
                "verdict": "error",
                "error": e.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(3)
        }
    }
}

fn load_wta(path: &Path) -> Result<Wta> {
    let text = std::fs::read_to_string(path)?;
    let v: Json = serde_json::from_str(&text)?;
    wta_from_json(&v)
}

/// A weight literal from the command line: JSON where it parses, a bare
/// string otherwise (so `-inf` and `3'` need no quoting).
fn weight_literal(s: &str) -> Json {
    serde_json::from_str(s).unwrap_or_else(|_| Json::String(s.to_string()))
}

fn write_or_embed(
    out: Option<&Path>,
    automaton: Json,
    mut report: Json,
) -> Result<Json> {
    match out {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&automaton)? + "\n")?;
            report["out"] = json!(path.display().to_string());
        }
        None => {
            report["automaton"] = automaton;
        }
    }
    Ok(report)
}

fn emit(report: &Json) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(report).unwrap());
    let code = match report["verdict"].as_str() {
        Some("yes") => 0u8,
        Some("no") => 1,
        Some("unknown") => 2,
        _ => 3,
    };
    ExitCode::from(code)
}

fn emit_decision(r: &DecisionReport, ctx: Option<&Wta>) -> ExitCode {
    emit(&report_to_json(r, ctx))
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Eval { file, tree } => {
            let a = load_wta(&file)?;
            let xi = parse_term(&a.alphabet, &tree)?;
            let value = a.evaluate(&xi);
            Ok(emit(&json!({
                "question": "eval",
                "verdict": "yes",
                "tree": tree,
                "value": a.algebra.format_weight(&value),
            })))
        }
        Cmd::Trim { file, out } => {
            let a = load_wta(&file)?;
            let t = trim(&a)?;
            let report = write_or_embed(
                out.as_deref(),
                wta_to_json(&t)?,
                json!({
                    "question": "trim",
                    "verdict": "yes",
                    "states_before": a.state_count(),
                    "states_after": t.state_count(),
                }),
            )?;
            Ok(emit(&report))
        }
        Cmd::Support { file, out } => {
            let a = load_wta(&file)?;
            let d = wta::crisp::support(&a)?;
            let report = write_or_embed(
                out.as_deref(),
                wta_to_json(&dfta_to_wta(&d))?,
                json!({"question": "support", "verdict": "yes"}),
            )?;
            Ok(emit(&report))
        }
        Cmd::Preimage { file, weight, out } => {
            let a = load_wta(&file)?;
            let b = a.algebra.parse_weight(&weight_literal(&weight))?;
            let d = wta::crisp::preimage(&a, &b)?;
            let report = write_or_embed(
                out.as_deref(),
                wta_to_json(&dfta_to_wta(&d))?,
                json!({
                    "question": "preimage",
                    "verdict": "yes",
                    "weight": a.algebra.format_weight(&b),
                }),
            )?;
            Ok(emit(&report))
        }
        Cmd::Crisp { file, fuel, out } => {
            let a = load_wta(&file)?;
            match crisp_determinize(&a, fuel) {
                CrispOutcome::Done(r) => {
                    let image: Vec<String> = r
                        .automaton
                        .image()
                        .iter()
                        .map(|w| a.algebra.format_weight(w))
                        .collect();
                    let report = write_or_embed(
                        out.as_deref(),
                        crisp_to_json(&r.automaton)?,
                        json!({
                            "question": "crisp",
                            "verdict": "yes",
                            "image": image,
                            "fuel_used": r.fuel_used,
                        }),
                    )?;
                    Ok(emit(&report))
                }
                CrispOutcome::Diverged { fuel_used } => Ok(emit(&json!({
                    "question": "crisp",
                    "verdict": "unknown",
                    "route": "reachable weights or step languages kept growing within the fuel budget",
                    "fuel_used": fuel_used,
                }))),
                CrispOutcome::NotApplicable(msg) => Ok(emit(&json!({
                    "question": "crisp",
                    "verdict": "unknown",
                    "route": msg,
                }))),
            }
        }
        Cmd::Decide { question } => run_decide(question),
        Cmd::CfgFinite { file, fuel } => {
            let text = std::fs::read_to_string(&file)?;
            let g = Grammar::parse(&text)?;
            let r = cfg_finite(&g, fuel)?;
            let ctx = wta::grammar::from_cfg(&g).ok();
            Ok(emit_decision(&r, ctx.as_ref()))
        }
        Cmd::WsaEval { file, word } => {
            let text = std::fs::read_to_string(&file)?;
            let v: Json = serde_json::from_str(&text)?;
            let wsa = wsa_from_json(&v)?;
            let letters: Vec<u32> = word
                .split_whitespace()
                .map(|l| {
                    wsa.letters
                        .iter()
                        .position(|x| x == l)
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::Usage(format!("unknown letter {l}")))
                })
                .collect::<Result<_>>()?;
            let direct = wsa.evaluate(&letters);
            let a = from_wsa(&wsa)?;
            let tree = word_to_tree(&a, &letters);
            let via_tree = a.evaluate(&tree);
            Ok(emit(&json!({
                "question": "wsa-eval",
                "verdict": "yes",
                "word": word,
                "value": wsa.algebra.format_weight(&direct),
                "value_via_tree": wsa.algebra.format_weight(&via_tree),
                "tree": tree.display(&a.alphabet).to_string(),
            })))
        }
        Cmd::CheckAlgebra { file } => {
            let text = std::fs::read_to_string(&file)?;
            let v: Json = serde_json::from_str(&text)?;
            let alg = wta::format::algebra_from_json(
                v.get("algebra")
                    .ok_or_else(|| Error::File("file needs an \"algebra\" object".into()))?,
            )?;
            let mut samples = vec![alg.zero(), alg.one()];
            for s in v.get("samples").and_then(Json::as_array).into_iter().flatten() {
                samples.push(alg.parse_weight(s)?);
            }
            let violations = check_axioms(&alg, &samples);
            let verdict = if violations.is_empty() {
                Verdict::Yes
            } else {
                Verdict::No
            };
            Ok(emit(&json!({
                "question": "check-algebra",
                "verdict": verdict_str(verdict),
                "algebra": alg.name(),
                "violations": violations
                    .iter()
                    .map(|v| json!({"law": v.law, "counterexample": v.counterexample}))
                    .collect::<Vec<_>>(),
            })))
        }
    }
}

fn run_decide(q: DecideCmd) -> Result<ExitCode> {
    match q {
        DecideCmd::FiniteImage { file, fuel } => {
            let a = load_wta(&file)?;
            let r = decide_finite_image(&a, fuel);
            Ok(emit_decision(&r, Some(&a)))
        }
        DecideCmd::ImageAtMost { file, k, fuel } => {
            let a = load_wta(&file)?;
            let r = decide_image_at_most(&a, k, fuel)?;
            Ok(emit_decision(&r, Some(&a)))
        }
        DecideCmd::CostFinite { file } => {
            let a = load_wta(&file)?;
            let r = cost_finite(&a);
            Ok(emit_decision(&r, Some(&a)))
        }
        DecideCmd::Constant { file, weight, fuel } => {
            let a = load_wta(&file)?;
            let mode = match weight {
                Some(s) => StepMode::ConstantEq(a.algebra.parse_weight(&weight_literal(&s))?),
                None => StepMode::Constant,
            };
            let r = decide_step_properties(&a, &mode, fuel)?;
            Ok(emit_decision(&r, Some(&a)))
        }
        DecideCmd::OneStep { file, fuel } => {
            let a = load_wta(&file)?;
            let r = decide_step_properties(&a, &StepMode::OneStep, fuel)?;
            Ok(emit_decision(&r, Some(&a)))
        }
        DecideCmd::EStep { file, set, fuel } => {
            let a = load_wta(&file)?;
            let items: Json = serde_json::from_str(&set)
                .map_err(|_| Error::Usage("--set takes a JSON array of weight literals".into()))?;
            let weights = items
                .as_array()
                .ok_or_else(|| Error::Usage("--set takes a JSON array of weight literals".into()))?
                .iter()
                .map(|w| a.algebra.parse_weight(w))
                .collect::<Result<Vec<_>>>()?;
            let r = decide_step_properties(&a, &StepMode::WithinSet(weights), fuel)?;
            Ok(emit_decision(&r, Some(&a)))
        }
    }
}
