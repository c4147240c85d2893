//! Weighted tree automata, runs, and the run semantics.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Algebra, Homomorphism, Weight};
use crate::error::{Error, Result};
use crate::term::{Context, RankedAlphabet, Tree, HOLE};

/// A weighted tree automaton. Transition tables are sparse: missing entries
/// have weight zero and are never used by runs.
#[derive(Clone, Debug)]
pub struct Wta {
    pub alphabet: RankedAlphabet,
    pub algebra: Algebra,
    states: Vec<String>,
    /// `(symbol, child states, target state) -> nonzero weight`.
    transitions: BTreeMap<(u32, Vec<u32>, u32), Weight>,
    roots: Vec<Weight>,
}

/// A state labeling mirroring the shape of the tree (or context) it runs
/// on. On a context, the hole node carries the exit state.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Run {
    pub state: u32,
    pub children: Vec<Run>,
}

impl Run {
    pub fn leaf(state: u32) -> Run {
        Run {
            state,
            children: vec![],
        }
    }

    /// State at the given position.
    pub fn at(&self, pos: &[usize]) -> u32 {
        pos.iter().fold(self, |r, &i| &r.children[i]).state
    }

    fn shape_matches(&self, tree: &Tree) -> bool {
        if tree.symbol == HOLE {
            return self.children.is_empty();
        }
        self.children.len() == tree.children.len()
            && self
                .children
                .iter()
                .zip(&tree.children)
                .all(|(r, t)| r.shape_matches(t))
    }

    /// Exit state of a run on a context: the state at the hole position.
    pub fn exit_state(&self, c: &Context) -> u32 {
        self.at(&c.hole_position())
    }
}

/// The left/right split of a context run's weight around the hole.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitWeight {
    pub left: Weight,
    pub right: Weight,
}

impl Wta {
    pub fn new(alphabet: RankedAlphabet, algebra: Algebra, states: Vec<String>) -> Wta {
        let zero = algebra.zero();
        let n = states.len();
        Wta {
            alphabet,
            algebra,
            states,
            transitions: BTreeMap::new(),
            roots: vec![zero; n],
        }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: u32) -> &str {
        &self.states[q as usize]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn lookup_state(&self, name: &str) -> Option<u32> {
        self.states.iter().position(|s| s == name).map(|i| i as u32)
    }

    pub fn add_transition(
        &mut self,
        children: &[&str],
        symbol: &str,
        target: &str,
        weight: Weight,
    ) -> Result<()> {
        let sym = self
            .alphabet
            .lookup(symbol)
            .ok_or_else(|| Error::InvalidWta(format!("unknown symbol {symbol}")))?;
        if self.alphabet.rank(sym) != children.len() {
            return Err(Error::InvalidWta(format!(
                "symbol {symbol} has rank {} but {} child states given",
                self.alphabet.rank(sym),
                children.len()
            )));
        }
        let cs: Result<Vec<u32>> = children
            .iter()
            .map(|c| {
                self.lookup_state(c)
                    .ok_or_else(|| Error::InvalidWta(format!("unknown state {c}")))
            })
            .collect();
        let tgt = self
            .lookup_state(target)
            .ok_or_else(|| Error::InvalidWta(format!("unknown state {target}")))?;
        self.set_transition(sym, cs?, tgt, weight);
        Ok(())
    }

    pub fn set_transition(&mut self, symbol: u32, children: Vec<u32>, target: u32, weight: Weight) {
        if self.algebra.is_zero(&weight) {
            self.transitions.remove(&(symbol, children, target));
        } else {
            self.transitions.insert((symbol, children, target), weight);
        }
    }

    pub fn set_root(&mut self, state: &str, weight: Weight) -> Result<()> {
        let q = self
            .lookup_state(state)
            .ok_or_else(|| Error::InvalidWta(format!("unknown state {state}")))?;
        self.roots[q as usize] = weight;
        Ok(())
    }

    pub fn set_root_by_id(&mut self, q: u32, weight: Weight) {
        self.roots[q as usize] = weight;
    }

    pub fn root_weight(&self, q: u32) -> &Weight {
        &self.roots[q as usize]
    }

    /// Transition weight; zero when the entry is absent.
    pub fn transition_weight(&self, symbol: u32, children: &[u32], target: u32) -> Weight {
        self.transitions
            .get(&(symbol, children.to_vec(), target))
            .cloned()
            .unwrap_or_else(|| self.algebra.zero())
    }

    /// All nonzero transitions in deterministic order.
    pub fn transitions(&self) -> impl Iterator<Item = (u32, &[u32], u32, &Weight)> {
        self.transitions
            .iter()
            .map(|((s, cs, t), w)| (*s, cs.as_slice(), *t, w))
    }

    /// Nonzero transitions for one symbol.
    pub fn transitions_for(&self, symbol: u32) -> Vec<(&[u32], u32, &Weight)> {
        self.transitions
            .range((symbol, vec![], 0)..(symbol + 1, vec![], 0))
            .map(|((_, cs, t), w)| (cs.as_slice(), *t, w))
            .collect()
    }

    /// All runs on a tree, ordered by root state then structure.
    pub fn runs(&self, xi: &Tree) -> Vec<Run> {
        let mut out: Vec<Run> = Vec::new();
        for q in 0..self.states.len() as u32 {
            out.extend(self.runs_to(q, xi));
        }
        out
    }

    /// All runs on `xi` whose root state is `q`.
    pub fn runs_to(&self, q: u32, xi: &Tree) -> Vec<Run> {
        self.runs_node(xi, q, None)
    }

    /// All runs on context `c` with root state `root` and exit state `exit`
    /// at the hole.
    pub fn runs_on_context(&self, root: u32, c: &Context, exit: u32) -> Vec<Run> {
        self.runs_node(c.tree(), root, Some(exit))
    }

    fn runs_node(&self, node: &Tree, state: u32, exit: Option<u32>) -> Vec<Run> {
        if node.symbol == HOLE {
            let exit = exit.expect("hole in a tree run");
            return if state == exit {
                vec![Run::leaf(state)]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        for (children_states, target, _) in self.transitions_for(node.symbol) {
            if target != state {
                continue;
            }
            // runs for each child constrained to the transition's states
            let child_runs: Vec<Vec<Run>> = node
                .children
                .iter()
                .zip(children_states)
                .map(|(c, &cq)| self.runs_node(c, cq, exit))
                .collect();
            if child_runs.iter().any(|r| r.is_empty()) {
                continue;
            }
            let mut combos: Vec<Vec<Run>> = vec![vec![]];
            for runs in &child_runs {
                let mut next = Vec::new();
                for prefix in &combos {
                    for r in runs {
                        let mut p = prefix.clone();
                        p.push(r.clone());
                        next.push(p);
                    }
                }
                combos = next;
            }
            for children in combos {
                out.push(Run { state, children });
            }
        }
        out
    }

    /// The weight of a run per the recursive run-weight definition: a hole
    /// contributes the unit and no transition factor; an inner node
    /// multiplies its children's weights left to right, then the
    /// transition weight.
    pub fn weight_of_run(&self, zeta: &Tree, rho: &Run) -> Result<Weight> {
        if !rho.shape_matches(zeta) {
            return Err(Error::InvalidRun("run shape does not match the tree".into()));
        }
        self.wt(zeta, rho)
    }

    fn wt(&self, node: &Tree, run: &Run) -> Result<Weight> {
        if node.symbol == HOLE {
            return Ok(self.algebra.one());
        }
        let mut acc = self.algebra.one();
        for (c, rc) in node.children.iter().zip(&run.children) {
            acc = self.algebra.mul(&acc, &self.wt(c, rc)?);
        }
        let child_states: Vec<u32> = run.children.iter().map(|r| r.state).collect();
        let d = self.transition_weight(node.symbol, &child_states, run.state);
        if self.algebra.is_zero(&d) {
            return Err(Error::InvalidRun(format!(
                "run uses a zero-weight transition on symbol {}",
                self.alphabet.name(node.symbol)
            )));
        }
        Ok(self.algebra.mul(&acc, &d))
    }

    /// Bottom-up evaluation: per state, the multiset of run weights with
    /// multiplicities, folded with the root weights. Agrees with naive run
    /// enumeration but avoids materializing runs.
    pub fn evaluate(&self, xi: &Tree) -> Weight {
        let dp = self.weight_profile(xi);
        let mut acc = self.algebra.zero();
        for (q, weights) in &dp {
            let f = &self.roots[*q as usize];
            if self.algebra.is_zero(f) {
                continue;
            }
            for (w, count) in weights {
                let complete = self.algebra.mul(w, f);
                acc = self.algebra.add(&acc, &self.algebra.nsum(&complete, *count));
            }
        }
        acc
    }

    /// Per-state multiset of run weights on `xi`, as weight -> multiplicity.
    pub fn weight_profile(&self, xi: &Tree) -> BTreeMap<u32, BTreeMap<Weight, u64>> {
        let child_profiles: Vec<BTreeMap<u32, BTreeMap<Weight, u64>>> =
            xi.children.iter().map(|c| self.weight_profile(c)).collect();
        let mut out: BTreeMap<u32, BTreeMap<Weight, u64>> = BTreeMap::new();
        for (children_states, target, d) in self.transitions_for(xi.symbol) {
            // fold children left to right into partial products
            let mut partial: BTreeMap<Weight, u64> =
                std::iter::once((self.algebra.one(), 1u64)).collect();
            let mut feasible = true;
            for (i, &cq) in children_states.iter().enumerate() {
                let Some(cw) = child_profiles[i].get(&cq) else {
                    feasible = false;
                    break;
                };
                let mut next: BTreeMap<Weight, u64> = BTreeMap::new();
                for (w, n) in &partial {
                    for (v, m) in cw {
                        let prod = self.algebra.mul(w, v);
                        *next.entry(prod).or_insert(0) += n * m;
                    }
                }
                partial = next;
            }
            if !feasible {
                continue;
            }
            let entry = out.entry(target).or_default();
            for (w, n) in &partial {
                let full = self.algebra.mul(w, d);
                *entry.entry(full).or_insert(0) += n;
            }
        }
        out
    }

    /// `(l, r)` with `l ⊗ r = wt(c, ρ)`, split at the unit contributed by
    /// the hole.
    pub fn split_weight(&self, c: &Context, rho: &Run) -> Result<SplitWeight> {
        if !rho.shape_matches(c.tree()) {
            return Err(Error::InvalidRun("run shape does not match the context".into()));
        }
        self.split(c.tree(), rho)
    }

    fn split(&self, node: &Tree, run: &Run) -> Result<SplitWeight> {
        if node.symbol == HOLE {
            return Ok(SplitWeight {
                left: self.algebra.one(),
                right: self.algebra.one(),
            });
        }
        let i = node
            .children
            .iter()
            .position(Tree::contains_hole)
            .expect("split called off the hole path");
        let inner = self.split(&node.children[i], &run.children[i])?;
        let mut left = self.algebra.one();
        for j in 0..i {
            left = self
                .algebra
                .mul(&left, &self.wt(&node.children[j], &run.children[j])?);
        }
        left = self.algebra.mul(&left, &inner.left);
        let mut right = inner.right;
        for j in i + 1..node.children.len() {
            right = self
                .algebra
                .mul(&right, &self.wt(&node.children[j], &run.children[j])?);
        }
        let child_states: Vec<u32> = run.children.iter().map(|r| r.state).collect();
        let d = self.transition_weight(node.symbol, &child_states, run.state);
        if self.algebra.is_zero(&d) {
            return Err(Error::InvalidRun("zero transition on the hole path".into()));
        }
        right = self.algebra.mul(&right, &d);
        Ok(SplitWeight { left, right })
    }

    /// `ρ[θ]`: replace the hole node of `rho` (a run on `c`) by `theta`.
    pub fn combine_runs(&self, c: &Context, rho: &Run, theta: &Run) -> Result<Run> {
        let hole = c.hole_position();
        if rho.at(&hole) != theta.state {
            return Err(Error::InvalidRun(format!(
                "exit state {} differs from root state {} of the inner run",
                self.state_name(rho.at(&hole)),
                self.state_name(theta.state)
            )));
        }
        fn go(run: &Run, pos: &[usize], theta: &Run) -> Run {
            match pos.split_first() {
                None => theta.clone(),
                Some((&i, rest)) => {
                    let mut r = run.clone();
                    r.children[i] = go(&run.children[i], rest, theta);
                    r
                }
            }
        }
        Ok(go(rho, &hole, theta))
    }

    /// Rewrite all weights through a homomorphism; the semantics of the
    /// result is the homomorphic image of the original semantics.
    pub fn map_weights(&self, h: &Homomorphism) -> Wta {
        let mut out = Wta::new(
            self.alphabet.clone(),
            h.target.clone(),
            self.states.clone(),
        );
        for ((s, cs, t), w) in &self.transitions {
            out.set_transition(*s, cs.clone(), *t, h.map(w));
        }
        for (q, w) in self.roots.iter().enumerate() {
            out.roots[q] = h.map(w);
        }
        out
    }

    /// The underlying tree automaton: weight 1 wherever a transition or
    /// root weight is nonzero. Preserves accepting-run counts.
    pub fn boolean_projection(&self) -> Wta {
        let boolean = Algebra::boolean();
        let mut out = Wta::new(self.alphabet.clone(), boolean, self.states.clone());
        for ((s, cs, t), _) in &self.transitions {
            out.set_transition(*s, cs.clone(), *t, Weight::Bool(true));
        }
        for (q, w) in self.roots.iter().enumerate() {
            if !self.algebra.is_zero(w) {
                out.roots[q] = Weight::Bool(true);
            }
        }
        out
    }

    /// True when no symbol has two transitions with the same child states
    /// and different targets (bottom-up determinism).
    pub fn is_deterministic(&self) -> bool {
        let mut seen: HashMap<(u32, &[u32]), u32> = HashMap::new();
        for ((s, cs, t), _) in &self.transitions {
            if let Some(prev) = seen.insert((*s, cs.as_slice()), *t) {
                if prev != *t {
                    return false;
                }
            }
        }
        true
    }

    /// Crisp shape: deterministic with all transition weights equal to one.
    pub fn is_crisp_deterministic(&self) -> bool {
        self.is_deterministic() && self.transitions.values().all(|w| self.algebra.is_one(w))
    }
}

/// A weighted string automaton, the one-letter-at-a-time counterpart of a
/// wta over a string-shaped ranked alphabet.
#[derive(Clone, Debug)]
pub struct Wsa {
    pub letters: Vec<String>,
    pub states: Vec<String>,
    pub algebra: Algebra,
    pub initial: Vec<Weight>,
    /// `(source, letter, target) -> nonzero weight`.
    pub transitions: BTreeMap<(u32, u32, u32), Weight>,
    pub final_weights: Vec<Weight>,
}

impl Wsa {
    /// Direct string semantics: sum over state sequences of
    /// `I ⊗ d_1 ⊗ ... ⊗ d_n ⊗ F`.
    pub fn evaluate(&self, word: &[u32]) -> Weight {
        let n = self.states.len();
        // vector of partial products per current state, with multiplicity
        let mut vec: Vec<BTreeMap<Weight, u64>> = (0..n)
            .map(|q| {
                let w = &self.initial[q];
                if self.algebra.is_zero(w) {
                    BTreeMap::new()
                } else {
                    std::iter::once((w.clone(), 1)).collect()
                }
            })
            .collect();
        for &a in word {
            let mut next: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); n];
            for ((p, letter, q), d) in &self.transitions {
                if *letter != a {
                    continue;
                }
                for (w, m) in &vec[*p as usize] {
                    let prod = self.algebra.mul(w, d);
                    *next[*q as usize].entry(prod).or_insert(0) += m;
                }
            }
            vec = next;
        }
        let mut acc = self.algebra.zero();
        for (q, weights) in vec.iter().enumerate() {
            let f = &self.final_weights[q];
            if self.algebra.is_zero(f) {
                continue;
            }
            for (w, m) in weights {
                let complete = self.algebra.mul(w, f);
                acc = self.algebra.add(&acc, &self.algebra.nsum(&complete, *m));
            }
        }
        acc
    }
}

/// Encode a wsa as a wta over the string ranked alphabet: one unary symbol
/// per letter plus the nullary end marker `e`. Initial weights fold into
/// the nullary transitions; words encode with the last letter outermost.
pub fn from_wsa(wsa: &Wsa) -> Result<Wta> {
    if wsa.letters.is_empty() {
        return Err(Error::InvalidWta("wsa needs a nonempty letter set".into()));
    }
    let mut symbols: Vec<(String, usize)> =
        wsa.letters.iter().map(|a| (a.clone(), 1)).collect();
    symbols.push(("e".into(), 0));
    let alphabet = RankedAlphabet::new(symbols)?;
    let e = alphabet.lookup("e").unwrap();
    let mut out = Wta::new(alphabet, wsa.algebra.clone(), wsa.states.clone());
    for (q, w) in wsa.initial.iter().enumerate() {
        out.set_transition(e, vec![], q as u32, w.clone());
    }
    for ((p, letter, q), w) in &wsa.transitions {
        out.set_transition(*letter, vec![*p], *q, w.clone());
    }
    for (q, w) in wsa.final_weights.iter().enumerate() {
        out.roots[q] = w.clone();
    }
    Ok(out)
}

/// Word-to-tree encoder matching [`from_wsa`]: `a_1 ... a_n` becomes
/// `a_n(...a_1(e)...)`.
pub fn word_to_tree(wta: &Wta, word: &[u32]) -> Tree {
    let e = wta.alphabet.lookup("e").expect("string alphabet");
    word.iter()
        .fold(Tree::leaf(e), |acc, &a| Tree::node(a, vec![acc]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::term::parse_term;

    #[test]
    fn arctic_one_state_semantics() {
        let a = fixtures::arctic_one_state();
        for n in 0..=6usize {
            let xi = fixtures::unary_tower(&a.alphabet, "gamma", "alpha", n);
            assert_eq!(a.evaluate(&xi), Weight::Arctic(Some(n as u64)));
        }
    }

    #[test]
    fn arctic_run_weight() {
        let a = fixtures::arctic_one_state();
        let xi = fixtures::unary_tower(&a.alphabet, "gamma", "alpha", 2);
        let runs = a.runs(&xi);
        assert_eq!(runs.len(), 1);
        assert_eq!(
            a.weight_of_run(&xi, &runs[0]).unwrap(),
            Weight::Arctic(Some(2))
        );
    }

    #[test]
    fn nat_three_state_semantics() {
        let a = fixtures::nat_three_state();
        for n in 0..=4u32 {
            let xi = fixtures::unary_tower(&a.alphabet, "gamma", "e", 2 * n as usize);
            assert_eq!(a.evaluate(&xi), Weight::Nat(1 << n));
        }
        // odd heights have no accepting run back to p
        let xi = fixtures::unary_tower(&a.alphabet, "gamma", "e", 3);
        assert_eq!(a.evaluate(&xi), Weight::Nat(0));
    }

    #[test]
    fn nat_three_state_run_count() {
        let a = fixtures::nat_three_state();
        let xi = fixtures::unary_tower(&a.alphabet, "gamma", "e", 4);
        let p = a.lookup_state("p").unwrap();
        assert_eq!(a.runs_to(p, &xi).len(), 4);
    }

    #[test]
    fn join_fixture_evaluates_to_primed_one() {
        let a = fixtures::join_two_state();
        for n in 0..=6usize {
            let xi = fixtures::unary_tower(&a.alphabet, "gamma", "e", n);
            assert_eq!(
                a.evaluate(&xi),
                Weight::Join(crate::algebra::JoinValue::Primed(1))
            );
        }
    }

    #[test]
    fn tree_with_no_run_is_zero() {
        let alphabet = RankedAlphabet::of(&[("gamma", 1), ("alpha", 0), ("beta", 0)]);
        let mut a = Wta::new(alphabet.clone(), Algebra::naturals(), vec!["q".into()]);
        a.add_transition(&[], "alpha", "q", Weight::Nat(1)).unwrap();
        a.add_transition(&["q"], "gamma", "q", Weight::Nat(1)).unwrap();
        a.set_root("q", Weight::Nat(1)).unwrap();
        let xi = parse_term(&alphabet, "gamma(beta)").unwrap();
        assert_eq!(a.evaluate(&xi), Weight::Nat(0));
        assert!(a.runs(&xi).is_empty());
    }

    #[test]
    fn split_weight_recombines() {
        let a = fixtures::arctic_two_state();
        let c = crate::term::parse_context(&a.alphabet, "nu(gamma([]))").unwrap();
        let q1 = a.lookup_state("q1").unwrap();
        let q2 = a.lookup_state("q2").unwrap();
        let runs = a.runs_on_context(q2, &c, q1);
        assert_eq!(runs.len(), 1);
        let sw = a.split_weight(&c, &runs[0]).unwrap();
        let whole = a.weight_of_run(c.tree(), &runs[0]).unwrap();
        assert_eq!(a.algebra.mul(&sw.left, &sw.right), whole);
    }

    #[test]
    fn split_of_hole_is_units() {
        let a = fixtures::arctic_one_state();
        let c = Context::hole_context();
        let rho = Run::leaf(0);
        let sw = a.split_weight(&c, &rho).unwrap();
        assert_eq!(sw.left, a.algebra.one());
        assert_eq!(sw.right, a.algebra.one());
    }

    #[test]
    fn noncommutative_factor_order() {
        // leaf weights {x}, {y}; top weight {z}; result must be {"xyz"}
        let alphabet = RankedAlphabet::of(&[("sigma", 2), ("a", 0), ("b", 0)]);
        let alg = Algebra::flang(vec!["x".into(), "y".into(), "z".into()]);
        let lit = |s: &str| Weight::Lang([s.to_string()].into_iter().collect());
        let mut a = Wta::new(alphabet.clone(), alg.clone(), vec!["q".into()]);
        a.add_transition(&[], "a", "q", lit("x")).unwrap();
        a.add_transition(&[], "b", "q", lit("y")).unwrap();
        a.add_transition(&["q", "q"], "sigma", "q", lit("z")).unwrap();
        a.set_root("q", alg.one()).unwrap();
        let xi = parse_term(&alphabet, "sigma(a,b)").unwrap();
        assert_eq!(a.evaluate(&xi), lit("xyz"));
    }

    #[test]
    fn combine_runs_substitutes_at_hole() {
        let a = fixtures::arctic_two_state();
        let c = crate::term::parse_context(&a.alphabet, "nu([])").unwrap();
        let q1 = a.lookup_state("q1").unwrap();
        let q2 = a.lookup_state("q2").unwrap();
        let rho = &a.runs_on_context(q2, &c, q1)[0];
        let xi = parse_term(&a.alphabet, "alpha").unwrap();
        let theta = &a.runs_to(q1, &xi)[0];
        let combined = a.combine_runs(&c, rho, theta).unwrap();
        assert_eq!(combined.at(&[0]), q1);
        // mismatched exit state is rejected
        let bad = &a.runs_to(q2, &parse_term(&a.alphabet, "nu(alpha)").unwrap())[0];
        assert!(a.combine_runs(&c, rho, bad).is_err());
    }

    #[test]
    fn boolean_projection_preserves_run_counts() {
        let a = fixtures::nat_three_state();
        let b = a.boolean_projection();
        for n in 0..=6usize {
            let xi = fixtures::unary_tower(&a.alphabet, "gamma", "e", n);
            let count_a = a
                .runs(&xi)
                .iter()
                .filter(|r| !a.algebra.is_zero(a.root_weight(r.state)))
                .count();
            let count_b = b
                .runs(&xi)
                .iter()
                .filter(|r| !b.algebra.is_zero(b.root_weight(r.state)))
                .count();
            assert_eq!(count_a, count_b);
        }
    }

    #[test]
    fn map_weights_identity() {
        let a = fixtures::arctic_two_state();
        let h = Homomorphism::identity(&a.algebra);
        let b = a.map_weights(&h);
        for xi in crate::term::enumerate_trees(&a.alphabet, 3) {
            assert_eq!(a.evaluate(&xi), b.evaluate(&xi));
        }
    }

    #[test]
    fn wsa_round_trip() {
        let wsa = fixtures::wsa_unary_counting();
        let wta = from_wsa(&wsa).unwrap();
        for len in 0..=6usize {
            let word: Vec<u32> = vec![0; len];
            let tree = word_to_tree(&wta, &word);
            assert_eq!(wsa.evaluate(&word), wta.evaluate(&tree));
        }
    }

    #[test]
    fn wsa_empty_word_is_initial_times_final() {
        let wsa = fixtures::wsa_unary_counting();
        let mut expected = wsa.algebra.zero();
        for q in 0..wsa.states.len() {
            expected = wsa.algebra.add(
                &expected,
                &wsa.algebra.mul(&wsa.initial[q], &wsa.final_weights[q]),
            );
        }
        assert_eq!(wsa.evaluate(&[]), expected);
    }
}
