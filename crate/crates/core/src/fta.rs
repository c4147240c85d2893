//! Finite tree automata: determinization, Boolean combinations, decision
//! problems, run counting, and the finite-ambiguity check.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::algebra::{Algebra, Weight};
use crate::error::{Error, Result};
use crate::structure::useful_states;
use crate::term::{Context, RankedAlphabet, Tree, HOLE};
use crate::wta::Wta;

/// A complete bottom-up deterministic tree automaton. Every state in
/// `names` is reachable; the transition map is total over the listed
/// states. Optionally carries per-state output weights (the
/// crisp-deterministic form).
#[derive(Clone, Debug)]
pub struct Dfta {
    pub alphabet: RankedAlphabet,
    pub names: Vec<String>,
    pub(crate) transitions: BTreeMap<(u32, Vec<u32>), u32>,
    pub accepting: Vec<bool>,
    pub outputs: Option<(Algebra, Vec<Weight>)>,
}

impl Dfta {
    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (u32, &[u32], u32)> {
        self.transitions
            .iter()
            .map(|((s, cs), t)| (*s, cs.as_slice(), *t))
    }

    /// The state reached bottom-up on a tree.
    pub fn run(&self, xi: &Tree) -> u32 {
        let children: Vec<u32> = self.children_states(xi);
        self.transitions[&(xi.symbol, children)]
    }

    fn children_states(&self, xi: &Tree) -> Vec<u32> {
        xi.children.iter().map(|c| self.run(c)).collect()
    }

    pub fn accepts(&self, xi: &Tree) -> bool {
        self.accepting[self.run(xi) as usize]
    }

    /// Output weight of a tree, when the automaton carries outputs.
    pub fn output(&self, xi: &Tree) -> Option<Weight> {
        self.outputs
            .as_ref()
            .map(|(_, outs)| outs[self.run(xi) as usize].clone())
    }

    /// No tree is accepted. All states are reachable, so this is a scan.
    pub fn is_empty(&self) -> bool {
        !self.accepting.iter().any(|&b| b)
    }

    /// Every tree is accepted.
    pub fn is_universal(&self) -> bool {
        self.accepting.iter().all(|&b| b)
    }

    pub fn complement(&self) -> Dfta {
        let mut out = self.clone();
        out.accepting = self.accepting.iter().map(|b| !b).collect();
        out.outputs = None;
        out
    }

    /// Product automaton with the mode's acceptance predicate.
    pub fn combine(&self, other: &Dfta, mode: CombineMode) -> Result<Dfta> {
        if self.alphabet != other.alphabet {
            return Err(Error::NotApplicable(
                "combine requires the same ranked alphabet".into(),
            ));
        }
        let acceptance = |a: bool, b: bool| match mode {
            CombineMode::Intersect => a && b,
            CombineMode::Union => a || b,
            CombineMode::Difference => a && !b,
        };
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut transitions: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        // saturate reachable pairs
        loop {
            let mut changed = false;
            for (id, _, rank) in self.alphabet.symbols() {
                for combo in combos(pairs.len(), rank) {
                    let left: Vec<u32> = combo.iter().map(|&i| pairs[i].0).collect();
                    let right: Vec<u32> = combo.iter().map(|&i| pairs[i].1).collect();
                    let lt = self.transitions[&(id, left)];
                    let rt = other.transitions[&(id, right)];
                    if !index.contains_key(&(lt, rt)) {
                        index.insert((lt, rt), pairs.len() as u32);
                        pairs.push((lt, rt));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for (id, _, rank) in self.alphabet.symbols() {
            for combo in combos(pairs.len(), rank) {
                let left: Vec<u32> = combo.iter().map(|&i| pairs[i].0).collect();
                let right: Vec<u32> = combo.iter().map(|&i| pairs[i].1).collect();
                let lt = self.transitions[&(id, left)];
                let rt = other.transitions[&(id, right)];
                let children: Vec<u32> = combo.iter().map(|&i| i as u32).collect();
                transitions.insert((id, children), index[&(lt, rt)]);
            }
        }
        let names = pairs
            .iter()
            .map(|(l, r)| format!("({},{})", self.names[*l as usize], other.names[*r as usize]))
            .collect();
        let accepting = pairs
            .iter()
            .map(|(l, r)| {
                acceptance(
                    self.accepting[*l as usize],
                    other.accepting[*r as usize],
                )
            })
            .collect();
        Ok(Dfta {
            alphabet: self.alphabet.clone(),
            names,
            transitions,
            accepting,
            outputs: None,
        })
    }

    pub fn equivalent(&self, other: &Dfta) -> Result<bool> {
        let diff1 = self.combine(other, CombineMode::Difference)?;
        let diff2 = other.combine(self, CombineMode::Difference)?;
        Ok(diff1.is_empty() && diff2.is_empty())
    }

    /// Accept everything: the one-state universal automaton.
    pub fn universal(alphabet: &RankedAlphabet) -> Dfta {
        let mut transitions = BTreeMap::new();
        for (id, _, rank) in alphabet.symbols() {
            transitions.insert((id, vec![0; rank]), 0);
        }
        Dfta {
            alphabet: alphabet.clone(),
            names: vec!["*".into()],
            transitions,
            accepting: vec![true],
            outputs: None,
        }
    }

    /// Accept nothing.
    pub fn empty(alphabet: &RankedAlphabet) -> Dfta {
        let mut d = Dfta::universal(alphabet);
        d.accepting = vec![false];
        d
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CombineMode {
    Intersect,
    Union,
    Difference,
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Subset construction on the nonzero-transition structure of a wta (for a
/// Boolean wta this is classic fta determinization). The result is
/// complete: the empty subset acts as the sink.
pub fn determinize(a: &Wta) -> Dfta {
    let mut index: HashMap<BTreeSet<u32>, u32> = HashMap::new();
    let mut subsets: Vec<BTreeSet<u32>> = Vec::new();
    let mut intern = |s: BTreeSet<u32>, subsets: &mut Vec<BTreeSet<u32>>| -> (u32, bool) {
        if let Some(&i) = index.get(&s) {
            (i, false)
        } else {
            let i = subsets.len() as u32;
            index.insert(s.clone(), i);
            subsets.push(s);
            (i, true)
        }
    };
    let mut transitions: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
    loop {
        let mut changed = false;
        for (sym, _, rank) in a.alphabet.symbols() {
            let entries = a.transitions_for(sym);
            for combo in combos(subsets.len(), rank) {
                if transitions.contains_key(&(
                    sym,
                    combo.iter().map(|&i| i as u32).collect::<Vec<u32>>(),
                )) {
                    continue;
                }
                let mut target: BTreeSet<u32> = BTreeSet::new();
                for (children, tgt, _) in &entries {
                    if children
                        .iter()
                        .zip(&combo)
                        .all(|(&c, &i)| subsets[i].contains(&c))
                    {
                        target.insert(*tgt);
                    }
                }
                let (ti, new) = intern(target, &mut subsets);
                transitions.insert(
                    (sym, combo.iter().map(|&i| i as u32).collect()),
                    ti,
                );
                changed |= new;
            }
        }
        if !changed {
            break;
        }
    }
    let names: Vec<String> = subsets
        .iter()
        .map(|s| {
            let inner: Vec<&str> = s.iter().map(|&q| a.state_name(q)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let accepting: Vec<bool> = subsets
        .iter()
        .map(|s| s.iter().any(|&q| !a.algebra.is_zero(a.root_weight(q))))
        .collect();
    Dfta {
        alphabet: a.alphabet.clone(),
        names,
        transitions,
        accepting,
        outputs: None,
    }
}

/// Exact number of runs reaching a nonzero root weight, by a counting DP.
pub fn count_accepting_runs(a: &Wta, xi: &Tree) -> u64 {
    fn counts(a: &Wta, node: &Tree) -> Vec<u64> {
        let child_counts: Vec<Vec<u64>> = node.children.iter().map(|c| counts(a, c)).collect();
        let mut out = vec![0u64; a.state_count()];
        for (children, target, _) in a.transitions_for(node.symbol) {
            let product: u64 = children
                .iter()
                .enumerate()
                .map(|(i, &c)| child_counts[i][c as usize])
                .product();
            out[target as usize] += product;
        }
        out
    }
    counts(a, xi)
        .iter()
        .enumerate()
        .filter(|(q, _)| !a.algebra.is_zero(a.root_weight(*q as u32)))
        .map(|(_, &n)| n)
        .sum()
}

/// The infinite-ambiguity pattern found, if any.
#[derive(Clone, Debug)]
pub enum AmbiguityWitness {
    /// A context with two distinct loops on the same state.
    TwoLoops { state: u32, context: Context },
    /// A context carrying simultaneous runs `p -> p`, `p -> q`, `q -> q`
    /// for distinct states.
    StateSwitch { p: u32, q: u32, context: Context },
}

#[derive(Clone, Debug)]
pub struct AmbiguityVerdict {
    pub finitely_ambiguous: bool,
    pub witness: Option<AmbiguityWitness>,
}

/// Decide finite ambiguity of the nonzero structure of a trim wta. The
/// automaton is infinitely ambiguous iff some context carries two distinct
/// loops on one state, or simultaneous `p->p`, `p->q`, `q->q` runs for
/// distinct `p`, `q`; both patterns are searched over product state
/// spaces, never over explicit context enumerations.
pub fn finitely_ambiguous(a: &Wta) -> Result<AmbiguityVerdict> {
    if !useful_states(a).iter().all(|&u| u) {
        return Err(Error::NotApplicable(
            "ambiguity analysis requires a trim automaton".into(),
        ));
    }
    let inh2 = inhabited_pairs(a);
    let inh2d = inhabited_pairs_distinct(a, &inh2);
    let inh3 = inhabited_triples(a);

    if let Some(w) = find_state_switch(a, &inh3) {
        return Ok(AmbiguityVerdict {
            finitely_ambiguous: false,
            witness: Some(w),
        });
    }
    if let Some(w) = find_two_loops(a, &inh2, &inh2d) {
        return Ok(AmbiguityVerdict {
            finitely_ambiguous: false,
            witness: Some(w),
        });
    }
    Ok(AmbiguityVerdict {
        finitely_ambiguous: true,
        witness: None,
    })
}

/// At most one accepting run per tree. Determinism is the fast path;
/// otherwise look for a tree carrying two distinct runs into
/// nonzero-rooted states via the pair closures.
pub fn unambiguous(a: &Wta) -> bool {
    if a.is_deterministic() {
        return true;
    }
    let inh2 = inhabited_pairs(a);
    let inh2d = inhabited_pairs_distinct(a, &inh2);
    let accepting: Vec<u32> = (0..a.state_count() as u32)
        .filter(|&q| !a.algebra.is_zero(a.root_weight(q)))
        .collect();
    for &p in &accepting {
        for &q in &accepting {
            let two_runs = if p == q {
                inh2d.contains_key(&(p, q))
            } else {
                inh2.contains_key(&(p, q))
            };
            if two_runs {
                return false;
            }
        }
    }
    true
}

/// For each state pair, one tree on which both states are reachable.
fn inhabited_pairs(a: &Wta) -> BTreeMap<(u32, u32), Tree> {
    let mut out: BTreeMap<(u32, u32), Tree> = BTreeMap::new();
    loop {
        let mut changed = false;
        for (sym, _, _rank) in a.alphabet.symbols() {
            let entries = a.transitions_for(sym);
            for (c1, t1, _) in &entries {
                for (c2, t2, _) in &entries {
                    if out.contains_key(&(*t1, *t2)) {
                        continue;
                    }
                    let children: Option<Vec<Tree>> = c1
                        .iter()
                        .zip(c2.iter())
                        .map(|(&x, &y)| out.get(&(x, y)).cloned())
                        .collect();
                    if let Some(children) = children {
                        out.insert((*t1, *t2), Tree::node(sym, children));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// For each state pair, one tree carrying two runs to those states that
/// differ at some position.
fn inhabited_pairs_distinct(
    a: &Wta,
    inh2: &BTreeMap<(u32, u32), Tree>,
) -> BTreeMap<(u32, u32), Tree> {
    let mut out: BTreeMap<(u32, u32), Tree> = BTreeMap::new();
    loop {
        let mut changed = false;
        for (sym, _, _) in a.alphabet.symbols() {
            let entries = a.transitions_for(sym);
            for (c1, t1, _) in &entries {
                for (c2, t2, _) in &entries {
                    if out.contains_key(&(*t1, *t2)) {
                        continue;
                    }
                    let transitions_differ = c1 != c2;
                    // all child pairs must share a tree; if the two
                    // transitions coincide, some child pair must already
                    // carry distinct runs
                    let mut children: Vec<Tree> = Vec::with_capacity(c1.len());
                    let mut has_distinct_child = false;
                    let mut ok = true;
                    for (&x, &y) in c1.iter().zip(c2.iter()) {
                        // use a distinct-run child where available, once
                        if !has_distinct_child && !transitions_differ {
                            if let Some(t) = out.get(&(x, y)) {
                                children.push(t.clone());
                                has_distinct_child = true;
                                continue;
                            }
                        }
                        match inh2.get(&(x, y)) {
                            Some(t) => children.push(t.clone()),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok && (transitions_differ || has_distinct_child) {
                        out.insert((*t1, *t2), Tree::node(sym, children));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// For each state triple, one tree on which all three are reachable.
fn inhabited_triples(a: &Wta) -> BTreeMap<(u32, u32, u32), Tree> {
    let mut out: BTreeMap<(u32, u32, u32), Tree> = BTreeMap::new();
    loop {
        let mut changed = false;
        for (sym, _, _) in a.alphabet.symbols() {
            let entries = a.transitions_for(sym);
            for (c1, t1, _) in &entries {
                for (c2, t2, _) in &entries {
                    for (c3, t3, _) in &entries {
                        if out.contains_key(&(*t1, *t2, *t3)) {
                            continue;
                        }
                        let children: Option<Vec<Tree>> = (0..c1.len())
                            .map(|j| out.get(&(c1[j], c2[j], c3[j])).cloned())
                            .collect();
                        if let Some(children) = children {
                            out.insert((*t1, *t2, *t3), Tree::node(sym, children));
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// One-symbol context piece: the hole in one slot, inhabited trees in the
/// side slots.
fn ctx_piece(sym: u32, rank: usize, slot: usize, sides: &[Tree]) -> Tree {
    let mut children = Vec::with_capacity(rank);
    let mut sides = sides.iter();
    for j in 0..rank {
        if j == slot {
            children.push(Tree::hole());
        } else {
            children.push(sides.next().unwrap().clone());
        }
    }
    Tree::node(sym, children)
}

fn plug(outer: &Tree, inner: Tree) -> Tree {
    if outer.symbol == HOLE {
        return inner;
    }
    Tree {
        symbol: outer.symbol,
        children: outer
            .children
            .iter()
            .map(|c| {
                if c.contains_hole() {
                    plug(c, inner.clone())
                } else {
                    c.clone()
                }
            })
            .collect(),
    }
}

/// Search for the `p->p, p->q, q->q` pattern by forward closure over state
/// triples, composing example contexts along the way.
fn find_state_switch(
    a: &Wta,
    inh3: &BTreeMap<(u32, u32, u32), Tree>,
) -> Option<AmbiguityWitness> {
    let n = a.state_count() as u32;
    // edges of the one-step triple relation, with an example context piece
    let mut edges: Vec<((u32, u32, u32), (u32, u32, u32), Tree)> = Vec::new();
    for (sym, _, rank) in a.alphabet.symbols() {
        let entries = a.transitions_for(sym);
        for (c1, t1, _) in &entries {
            for (c2, t2, _) in &entries {
                for (c3, t3, _) in &entries {
                    for slot in 0..rank {
                        let mut sides = Vec::new();
                        let mut ok = true;
                        for j in 0..rank {
                            if j == slot {
                                continue;
                            }
                            match inh3.get(&(c1[j], c2[j], c3[j])) {
                                Some(t) => sides.push(t.clone()),
                                None => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok {
                            edges.push((
                                (c1[slot], c2[slot], c3[slot]),
                                (*t1, *t2, *t3),
                                ctx_piece(sym, rank, slot, &sides),
                            ));
                        }
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            // BFS from (p,p,q) to (p,q,q)
            let start = (p, p, q);
            let goal = (p, q, q);
            let mut seen: BTreeMap<(u32, u32, u32), Tree> = BTreeMap::new();
            seen.insert(start, Tree::hole());
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                let here = seen[&node].clone();
                for (from, to, piece) in &edges {
                    if *from != node || seen.contains_key(to) {
                        continue;
                    }
                    let composed = plug(piece, here.clone());
                    if *to == goal {
                        return Some(AmbiguityWitness::StateSwitch {
                            p,
                            q,
                            context: Context::new(composed).expect("single hole"),
                        });
                    }
                    seen.insert(*to, composed);
                    queue.push_back(*to);
                }
            }
        }
    }
    None
}

/// Search for a context with two distinct loops on one state, by forward
/// closure over state pairs with a became-distinct flag.
fn find_two_loops(
    a: &Wta,
    inh2: &BTreeMap<(u32, u32), Tree>,
    inh2d: &BTreeMap<(u32, u32), Tree>,
) -> Option<AmbiguityWitness> {
    let n = a.state_count() as u32;
    // edges over (left state, right state, distinct flag)
    let mut edges: Vec<((u32, u32, bool), (u32, u32, bool), Tree)> = Vec::new();
    for (sym, _, rank) in a.alphabet.symbols() {
        let entries = a.transitions_for(sym);
        for (c1, t1, _) in &entries {
            for (c2, t2, _) in &entries {
                let transitions_differ = c1 != c2 || t1 != t2;
                for slot in 0..rank {
                    // variant A: plain side trees
                    let mut sides = Vec::new();
                    let mut ok = true;
                    for j in 0..rank {
                        if j == slot {
                            continue;
                        }
                        match inh2.get(&(c1[j], c2[j])) {
                            Some(t) => sides.push(t.clone()),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        let piece = ctx_piece(sym, rank, slot, &sides);
                        for flag in [false, true] {
                            edges.push((
                                (c1[slot], c2[slot], flag),
                                (*t1, *t2, flag || transitions_differ),
                                piece.clone(),
                            ));
                        }
                    }
                    // variant B: one side slot contributes distinct runs
                    for dj in 0..rank {
                        if dj == slot {
                            continue;
                        }
                        let mut sides = Vec::new();
                        let mut ok = true;
                        for j in 0..rank {
                            if j == slot {
                                continue;
                            }
                            let source = if j == dj {
                                inh2d.get(&(c1[j], c2[j]))
                            } else {
                                inh2.get(&(c1[j], c2[j]))
                            };
                            match source {
                                Some(t) => sides.push(t.clone()),
                                None => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok {
                            let piece = ctx_piece(sym, rank, slot, &sides);
                            for flag in [false, true] {
                                edges.push((
                                    (c1[slot], c2[slot], flag),
                                    (*t1, *t2, true),
                                    piece.clone(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    for p in 0..n {
        let start = (p, p, false);
        let goal = (p, p, true);
        let mut seen: BTreeMap<(u32, u32, bool), Tree> = BTreeMap::new();
        seen.insert(start, Tree::hole());
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            let here = seen[&node].clone();
            for (from, to, piece) in &edges {
                if *from != node || seen.contains_key(to) {
                    continue;
                }
                let composed = plug(piece, here.clone());
                if *to == goal {
                    return Some(AmbiguityWitness::TwoLoops {
                        state: p,
                        context: Context::new(composed).expect("single hole"),
                    });
                }
                seen.insert(*to, composed);
                queue.push_back(*to);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::term::enumerate_trees;

    fn fta_of(a: &Wta) -> Wta {
        a.boolean_projection()
    }

    #[test]
    fn determinize_agrees_with_run_existence() {
        let a = fixtures::nat_three_state();
        let d = determinize(&a);
        for xi in enumerate_trees(&a.alphabet, 5) {
            let has_accepting = crate::oracle::count_accepting_runs_naive(&a, &xi) > 0;
            assert_eq!(d.accepts(&xi), has_accepting);
        }
    }

    #[test]
    fn determinize_empty_language() {
        let alphabet = RankedAlphabet::of(&[("alpha", 0)]);
        let a = Wta::new(alphabet, Algebra::boolean(), vec!["q".into()]);
        let d = determinize(&a);
        assert!(d.is_empty());
    }

    #[test]
    fn combine_laws() {
        let a = fixtures::nat_three_state();
        let d = determinize(&a);
        let nothing = d.combine(&d, CombineMode::Difference).unwrap();
        assert!(nothing.is_empty());
        let universal = Dfta::universal(&a.alphabet);
        let same = d.combine(&universal, CombineMode::Intersect).unwrap();
        assert!(same.equivalent(&d).unwrap());
        assert!(universal
            .complement()
            .is_empty());
    }

    #[test]
    fn union_of_even_and_odd_heights_is_universal() {
        // languages {gamma^even(e)} and {gamma^odd(e)} over the unary alphabet
        let alphabet = RankedAlphabet::of(&[("gamma", 1), ("e", 0)]);
        let mut even = Wta::new(
            alphabet.clone(),
            Algebra::boolean(),
            vec!["p0".into(), "p1".into()],
        );
        even.add_transition(&[], "e", "p0", Weight::Bool(true)).unwrap();
        even.add_transition(&["p0"], "gamma", "p1", Weight::Bool(true)).unwrap();
        even.add_transition(&["p1"], "gamma", "p0", Weight::Bool(true)).unwrap();
        even.set_root("p0", Weight::Bool(true)).unwrap();
        let mut odd = even.clone();
        odd.set_root("p0", Weight::Bool(false)).unwrap();
        odd.set_root("p1", Weight::Bool(true)).unwrap();
        let u = determinize(&even)
            .combine(&determinize(&odd), CombineMode::Union)
            .unwrap();
        assert!(u.is_universal());
        for xi in enumerate_trees(&alphabet, 6) {
            assert!(u.accepts(&xi));
        }
    }

    #[test]
    fn count_matches_enumeration() {
        for a in [fixtures::nat_three_state(), fixtures::arctic_two_state()] {
            for xi in enumerate_trees(&a.alphabet, 4) {
                assert_eq!(
                    count_accepting_runs(&a, &xi),
                    crate::oracle::count_accepting_runs_naive(&a, &xi)
                );
            }
        }
    }

    #[test]
    fn nat_fixture_counts_are_powers_of_two() {
        let a = fixtures::nat_three_state();
        for n in 0..=6u32 {
            let xi = fixtures::unary_tower(&a.alphabet, "gamma", "e", 2 * n as usize);
            assert_eq!(count_accepting_runs(&a, &xi), 1 << n);
        }
    }

    #[test]
    fn deterministic_fta_is_finitely_ambiguous() {
        let a = fta_of(&fixtures::arctic_one_state());
        let v = finitely_ambiguous(&a).unwrap();
        assert!(v.finitely_ambiguous);
    }

    #[test]
    fn nat_fixture_is_not_finitely_ambiguous() {
        let a = fta_of(&fixtures::nat_three_state());
        let v = finitely_ambiguous(&a).unwrap();
        assert!(!v.finitely_ambiguous);
        // the witness replays the pattern
        match v.witness.unwrap() {
            AmbiguityWitness::TwoLoops { state, context } => {
                assert!(a.runs_on_context(state, &context, state).len() >= 2);
            }
            AmbiguityWitness::StateSwitch { p, q, context } => {
                assert!(!a.runs_on_context(p, &context, p).is_empty());
                assert!(!a.runs_on_context(q, &context, p).is_empty());
                assert!(!a.runs_on_context(q, &context, q).is_empty());
            }
        }
    }

    #[test]
    fn arctic_two_state_is_finitely_ambiguous() {
        let a = fta_of(&fixtures::arctic_two_state());
        let v = finitely_ambiguous(&a).unwrap();
        assert!(v.finitely_ambiguous);
        // at most one accepting run per tree, checked exhaustively
        for xi in enumerate_trees(&a.alphabet, 6) {
            assert!(count_accepting_runs(&a, &xi) <= 1);
        }
    }

    #[test]
    fn non_trim_input_rejected() {
        let alphabet = RankedAlphabet::of(&[("alpha", 0)]);
        let mut a = Wta::new(
            alphabet,
            Algebra::boolean(),
            vec!["q".into(), "junk".into()],
        );
        a.add_transition(&[], "alpha", "q", Weight::Bool(true)).unwrap();
        a.set_root("q", Weight::Bool(true)).unwrap();
        assert!(finitely_ambiguous(&a).is_err());
    }
}
