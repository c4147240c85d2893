//! Context-free grammars: the grammar associated with a wta (used for the
//! useful-state analysis), classic useless-symbol elimination, the text
//! format, and the encoding of a CFG as a wta over the arctic semiring.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{Algebra, Weight};
use crate::error::{Error, Result};
use crate::term::RankedAlphabet;
use crate::wta::Wta;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Sym {
    Terminal(String),
    Nonterminal(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    pub lhs: String,
    pub rhs: Vec<Sym>,
}

#[derive(Clone, Debug)]
pub struct Grammar {
    pub nonterminals: Vec<String>,
    pub terminals: Vec<String>,
    pub rules: Vec<Rule>,
    pub start: String,
}

impl Grammar {
    /// Parse the one-rule-per-line text format: `S -> a S b | ε`, tokens
    /// whitespace-separated, uppercase-first tokens as nonterminals. The
    /// first rule's left-hand side is the start symbol.
    pub fn parse(input: &str) -> Result<Grammar> {
        let mut nonterminals: Vec<String> = Vec::new();
        let mut terminals: Vec<String> = Vec::new();
        let mut raw_rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::GrammarParse {
                line: lineno + 1,
                msg: "missing '->'".into(),
            })?;
            let lhs = lhs.trim().to_string();
            if lhs.is_empty() || !is_nonterminal(&lhs) {
                return Err(Error::GrammarParse {
                    line: lineno + 1,
                    msg: format!("left-hand side {lhs:?} is not a nonterminal"),
                });
            }
            if !nonterminals.contains(&lhs) {
                nonterminals.push(lhs.clone());
            }
            let alts: Vec<Vec<String>> = rhs
                .split('|')
                .map(|alt| {
                    alt.split_whitespace()
                        .filter(|t| *t != "ε" && *t != "eps")
                        .map(str::to_string)
                        .collect()
                })
                .collect();
            raw_rules.push((lineno + 1, lhs, alts));
        }
        if raw_rules.is_empty() {
            return Err(Error::GrammarParse {
                line: 0,
                msg: "no rules".into(),
            });
        }
        let start = raw_rules[0].1.clone();
        let mut rules = Vec::new();
        for (_, lhs, alts) in &raw_rules {
            for alt in alts {
                let rhs: Vec<Sym> = alt
                    .iter()
                    .map(|tok| {
                        if is_nonterminal(tok) {
                            if !nonterminals.contains(tok) {
                                nonterminals.push(tok.clone());
                            }
                            Sym::Nonterminal(tok.clone())
                        } else {
                            if !terminals.contains(tok) {
                                terminals.push(tok.clone());
                            }
                            Sym::Terminal(tok.clone())
                        }
                    })
                    .collect();
                rules.push(Rule {
                    lhs: lhs.clone(),
                    rhs,
                });
            }
        }
        Ok(Grammar {
            nonterminals,
            terminals,
            rules,
            start,
        })
    }

    /// Nonterminals that derive some terminal word.
    fn productive(&self) -> HashSet<String> {
        let mut prod: HashSet<String> = HashSet::new();
        loop {
            let mut changed = false;
            for rule in &self.rules {
                if prod.contains(&rule.lhs) {
                    continue;
                }
                let ok = rule.rhs.iter().all(|s| match s {
                    Sym::Terminal(_) => true,
                    Sym::Nonterminal(n) => prod.contains(n),
                });
                if ok {
                    prod.insert(rule.lhs.clone());
                    changed = true;
                }
            }
            if !changed {
                return prod;
            }
        }
    }

    /// Remove nonterminals that are unproductive or unreachable from the
    /// start symbol; the generated language is unchanged.
    pub fn reduced(&self) -> Grammar {
        let prod = self.productive();
        // keep only rules whose nonterminals are all productive
        let rules: Vec<&Rule> = self
            .rules
            .iter()
            .filter(|r| {
                prod.contains(&r.lhs)
                    && r.rhs.iter().all(|s| match s {
                        Sym::Terminal(_) => true,
                        Sym::Nonterminal(n) => prod.contains(n),
                    })
            })
            .collect();
        let mut reach: HashSet<String> = HashSet::new();
        if prod.contains(&self.start) {
            reach.insert(self.start.clone());
            loop {
                let mut changed = false;
                for rule in &rules {
                    if !reach.contains(&rule.lhs) {
                        continue;
                    }
                    for s in &rule.rhs {
                        if let Sym::Nonterminal(n) = s {
                            if reach.insert(n.clone()) {
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        let rules: Vec<Rule> = rules
            .into_iter()
            .filter(|r| reach.contains(&r.lhs))
            .cloned()
            .collect();
        let nonterminals: Vec<String> = self
            .nonterminals
            .iter()
            .filter(|n| reach.contains(*n))
            .cloned()
            .collect();
        let terminals: Vec<String> = self
            .terminals
            .iter()
            .filter(|t| {
                rules
                    .iter()
                    .any(|r| r.rhs.contains(&Sym::Terminal((*t).clone())))
            })
            .cloned()
            .collect();
        Grammar {
            nonterminals,
            terminals,
            rules,
            start: self.start.clone(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        let r = self.reduced();
        r.nonterminals.len() == self.nonterminals.len() && r.rules.len() == self.rules.len()
    }

    /// All words of length at most `max_len` in the generated language, by
    /// a length-capped fixpoint over the rules. Oracle-grade only.
    pub fn words_up_to(&self, max_len: usize) -> BTreeSet<Vec<String>> {
        let mut lang: Vec<BTreeSet<Vec<String>>> =
            vec![BTreeSet::new(); self.nonterminals.len()];
        let idx = |n: &str| self.nonterminals.iter().position(|m| m == n).unwrap();
        loop {
            let mut changed = false;
            for rule in &self.rules {
                let li = idx(&rule.lhs);
                let mut partial: Vec<Vec<String>> = vec![vec![]];
                for s in &rule.rhs {
                    let mut next = Vec::new();
                    match s {
                        Sym::Terminal(t) => {
                            for mut w in partial {
                                w.push(t.clone());
                                if w.len() <= max_len {
                                    next.push(w);
                                }
                            }
                        }
                        Sym::Nonterminal(n) => {
                            let ws = lang[idx(n)].clone();
                            for w in partial {
                                for u in &ws {
                                    if w.len() + u.len() <= max_len {
                                        let mut v = w.clone();
                                        v.extend(u.iter().cloned());
                                        next.push(v);
                                    }
                                }
                            }
                        }
                    }
                    partial = next;
                }
                for w in partial {
                    if lang[li].insert(w) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        lang[idx(&self.start)].clone()
    }
}

fn is_nonterminal(tok: &str) -> bool {
    tok.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// The grammar associated with a wta: `S -> q` for each nonzero root
/// weight, and `q -> σ q1 ... qk` for each nonzero transition (symbols in
/// prefix order). Runs with accepting root correspond bijectively to
/// leftmost derivations of the tree's prefix word.
pub fn to_grammar(a: &Wta) -> Grammar {
    let start = fresh_start_name(a);
    let mut nonterminals = vec![start.clone()];
    nonterminals.extend(a.state_names().iter().cloned());
    let terminals: Vec<String> = a
        .alphabet
        .symbols()
        .map(|(_, name, _)| name.to_string())
        .collect();
    let mut rules = Vec::new();
    for q in 0..a.state_count() as u32 {
        if !a.algebra.is_zero(a.root_weight(q)) {
            rules.push(Rule {
                lhs: start.clone(),
                rhs: vec![Sym::Nonterminal(a.state_name(q).to_string())],
            });
        }
    }
    for (sym, children, target, _) in a.transitions() {
        let mut rhs = vec![Sym::Terminal(a.alphabet.name(sym).to_string())];
        rhs.extend(
            children
                .iter()
                .map(|&c| Sym::Nonterminal(a.state_name(c).to_string())),
        );
        rules.push(Rule {
            lhs: a.state_name(target).to_string(),
            rhs,
        });
    }
    Grammar {
        nonterminals,
        terminals,
        rules,
        start,
    }
}

fn fresh_start_name(a: &Wta) -> String {
    let mut name = "S".to_string();
    while a.state_names().contains(&name) {
        name.push('\'');
    }
    name
}

/// Encode a reduced CFG with nonempty language as a wta over the arctic
/// semiring: the tree language is the set of derivation trees (one ranked
/// symbol per rule), and the value of a derivation tree is the length of
/// the derived word. The encoding is deterministic per derivation (each
/// rule symbol fixes its transition), hence unambiguous, and trim.
pub fn from_cfg(g: &Grammar) -> Result<Wta> {
    let g = if g.is_reduced() { g.clone() } else { g.reduced() };
    if g.rules.is_empty() || !g.nonterminals.contains(&g.start) {
        return Err(Error::EmptySemantics);
    }
    let symbols: Vec<(String, usize)> = g
        .rules
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let rank = r
                .rhs
                .iter()
                .filter(|s| matches!(s, Sym::Nonterminal(_)))
                .count();
            (format!("r{i}_{}", r.lhs), rank)
        })
        .collect();
    let alphabet = RankedAlphabet::new(symbols)?;
    let mut a = Wta::new(alphabet, Algebra::arctic(), g.nonterminals.clone());
    let state_id = |n: &str| g.nonterminals.iter().position(|m| m == n).unwrap() as u32;
    for (i, r) in g.rules.iter().enumerate() {
        let children: Vec<u32> = r
            .rhs
            .iter()
            .filter_map(|s| match s {
                Sym::Nonterminal(n) => Some(state_id(n)),
                Sym::Terminal(_) => None,
            })
            .collect();
        let terminal_len = r.rhs.len() - children.len();
        a.set_transition(
            i as u32,
            children,
            state_id(&r.lhs),
            Weight::Arctic(Some(terminal_len as u64)),
        );
    }
    a.set_root_by_id(state_id(&g.start), Weight::Arctic(Some(0)));
    Ok(a)
}
