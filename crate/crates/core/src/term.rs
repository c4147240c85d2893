//! Ranked alphabets, trees, and contexts (trees with exactly one hole).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sentinel symbol id for the context hole.
pub const HOLE: u32 = u32::MAX;

/// A finite set of symbols, each with a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedAlphabet {
    symbols: Vec<(String, usize)>,
}

impl RankedAlphabet {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<RankedAlphabet> {
        if !symbols.iter().any(|(_, r)| *r == 0) {
            return Err(Error::InvalidWta(
                "ranked alphabet needs at least one nullary symbol".into(),
            ));
        }
        for (i, (name, _)) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::InvalidWta(format!("duplicate symbol {name}")));
            }
        }
        Ok(RankedAlphabet { symbols })
    }

    /// Convenience constructor from `("name", rank)` pairs.
    pub fn of(pairs: &[(&str, usize)]) -> RankedAlphabet {
        RankedAlphabet::new(pairs.iter().map(|(n, r)| (n.to_string(), *r)).collect())
            .expect("valid alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (u32, &str, usize)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, (n, r))| (i as u32, n.as_str(), *r))
    }

    pub fn name(&self, id: u32) -> &str {
        if id == HOLE {
            "[]"
        } else {
            &self.symbols[id as usize].0
        }
    }

    pub fn rank(&self, id: u32) -> usize {
        if id == HOLE {
            0
        } else {
            self.symbols[id as usize].1
        }
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.symbols.iter().position(|(n, _)| n == name).map(|i| i as u32)
    }
}

/// A tree over a ranked alphabet; also the carrier for contexts, where one
/// leaf is the [`HOLE`] symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tree {
    pub symbol: u32,
    pub children: Vec<Tree>,
}

impl Tree {
    pub fn node(symbol: u32, children: Vec<Tree>) -> Tree {
        Tree { symbol, children }
    }

    pub fn leaf(symbol: u32) -> Tree {
        Tree {
            symbol,
            children: vec![],
        }
    }

    pub fn hole() -> Tree {
        Tree::leaf(HOLE)
    }

    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    /// Positions in depth-first preorder; a position is a child-index path
    /// from the root.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Vec::new())];
        while let Some((t, pos)) = stack.pop() {
            for (i, c) in t.children.iter().enumerate().rev() {
                let mut p = pos.clone();
                p.push(i);
                stack.push((c, p));
            }
            out.push(pos);
        }
        out.sort();
        out
    }

    pub fn at(&self, pos: &[usize]) -> &Tree {
        pos.iter().fold(self, |t, &i| &t.children[i])
    }

    /// Subtree replacement `ξ[ζ]_v`.
    pub fn replace_at(&self, pos: &[usize], sub: Tree) -> Tree {
        match pos.split_first() {
            None => sub,
            Some((&i, rest)) => {
                let mut t = self.clone();
                t.children[i] = t.children[i].replace_at(rest, sub);
                t
            }
        }
    }

    pub fn hole_count(&self) -> usize {
        if self.symbol == HOLE {
            1
        } else {
            self.children.iter().map(Tree::hole_count).sum()
        }
    }

    pub fn contains_hole(&self) -> bool {
        self.hole_count() > 0
    }

    pub fn display<'a>(&'a self, alphabet: &'a RankedAlphabet) -> TreeDisplay<'a> {
        TreeDisplay {
            tree: self,
            alphabet,
        }
    }
}

pub struct TreeDisplay<'a> {
    tree: &'a Tree,
    alphabet: &'a RankedAlphabet,
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alphabet.name(self.tree.symbol))?;
        if !self.tree.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.tree.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c.display(self.alphabet))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A tree with exactly one hole, at a leaf.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Context(Tree);

impl Context {
    pub fn new(tree: Tree) -> Result<Context> {
        if tree.hole_count() != 1 {
            return Err(Error::TermParse {
                at: 0,
                msg: format!("context must contain exactly one [], found {}", tree.hole_count()),
            });
        }
        Ok(Context(tree))
    }

    pub fn hole_context() -> Context {
        Context(Tree::hole())
    }

    pub fn tree(&self) -> &Tree {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.height()
    }

    pub fn hole_position(&self) -> Vec<usize> {
        fn go(t: &Tree, acc: &mut Vec<usize>) -> bool {
            if t.symbol == HOLE {
                return true;
            }
            for (i, c) in t.children.iter().enumerate() {
                acc.push(i);
                if go(c, acc) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut pos = Vec::new();
        assert!(go(&self.0, &mut pos));
        pos
    }

    /// `c[ζ]` for a tree argument.
    pub fn substitute_tree(&self, z: &Tree) -> Tree {
        substitute_hole(&self.0, z)
    }

    /// `c[c′]` for a context argument; the result is again a context.
    pub fn substitute_context(&self, z: &Context) -> Context {
        Context(substitute_hole(&self.0, &z.0))
    }

    /// `cⁿ`.
    pub fn power(&self, n: usize) -> Context {
        let mut acc = Context::hole_context();
        for _ in 0..n {
            acc = self.substitute_context(&acc);
        }
        acc
    }
}

fn substitute_hole(t: &Tree, z: &Tree) -> Tree {
    if t.symbol == HOLE {
        z.clone()
    } else {
        Tree {
            symbol: t.symbol,
            children: t.children.iter().map(|c| substitute_hole(c, z)).collect(),
        }
    }
}

/// All trees of height at most `max_height`, grouped by exact height in
/// increasing order; within a height, ordered by root symbol index, then by
/// children tuples lexicographically in enumeration order.
pub fn enumerate_trees(alphabet: &RankedAlphabet, max_height: usize) -> Vec<Tree> {
    let mut by_height: Vec<Vec<Tree>> = Vec::new();
    let mut out = Vec::new();
    for h in 0..=max_height {
        let layer = trees_of_exact_height(alphabet, h, &by_height);
        out.extend(layer.iter().cloned());
        by_height.push(layer);
    }
    out
}

fn trees_of_exact_height(
    alphabet: &RankedAlphabet,
    h: usize,
    lower: &[Vec<Tree>],
) -> Vec<Tree> {
    // candidate children: all trees of height < h, in enumeration order
    let pool: Vec<&Tree> = lower.iter().flatten().collect();
    let mut out = Vec::new();
    for (id, _, rank) in alphabet.symbols() {
        if h == 0 {
            if rank == 0 {
                out.push(Tree::leaf(id));
            }
            continue;
        }
        if rank == 0 {
            continue;
        }
        for combo in tuples(pool.len(), rank) {
            let max_h = combo.iter().map(|&i| pool[i].height()).max().unwrap();
            if max_h + 1 != h {
                continue;
            }
            out.push(Tree::node(
                id,
                combo.iter().map(|&i| pool[i].clone()).collect(),
            ));
        }
    }
    out
}

/// All contexts of height at most `max_height`, in the same deterministic
/// order as [`enumerate_trees`]. The hole counts as a height-0 leaf.
pub fn enumerate_contexts(alphabet: &RankedAlphabet, max_height: usize) -> Vec<Context> {
    let mut tree_layers: Vec<Vec<Tree>> = Vec::new();
    let mut ctx_layers: Vec<Vec<Tree>> = Vec::new();
    let mut out = Vec::new();
    for h in 0..=max_height {
        let trees = trees_of_exact_height(alphabet, h, &tree_layers);
        let ctxs = contexts_of_exact_height(alphabet, h, &tree_layers, &ctx_layers);
        out.extend(ctxs.iter().cloned().map(Context));
        tree_layers.push(trees);
        ctx_layers.push(ctxs);
    }
    out
}

fn contexts_of_exact_height(
    alphabet: &RankedAlphabet,
    h: usize,
    tree_layers: &[Vec<Tree>],
    ctx_layers: &[Vec<Tree>],
) -> Vec<Tree> {
    if h == 0 {
        return vec![Tree::hole()];
    }
    let tree_pool: Vec<&Tree> = tree_layers.iter().flatten().collect();
    let ctx_pool: Vec<&Tree> = ctx_layers.iter().flatten().collect();
    let mut out = Vec::new();
    for (id, _, rank) in alphabet.symbols() {
        if rank == 0 {
            continue;
        }
        // exactly one child drawn from contexts, the rest from trees
        for hole_slot in 0..rank {
            for c_idx in 0..ctx_pool.len() {
                for combo in tuples(tree_pool.len(), rank - 1) {
                    let mut children = Vec::with_capacity(rank);
                    let mut rest = combo.iter();
                    for slot in 0..rank {
                        if slot == hole_slot {
                            children.push(ctx_pool[c_idx].clone());
                        } else {
                            children.push(tree_pool[*rest.next().unwrap()].clone());
                        }
                    }
                    let max_h = children.iter().map(Tree::height).max().unwrap();
                    if max_h + 1 == h {
                        out.push(Tree::node(id, children));
                    }
                }
            }
        }
    }
    out
}

/// All index tuples of length `k` over `0..n`, lexicographic.
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

/// Unbounded tree enumeration by increasing height; backs procedures that
/// scan all of the term algebra with an external fuel cap.
pub struct TreeStream<'a> {
    alphabet: &'a RankedAlphabet,
    layers: Vec<Vec<Tree>>,
    current: std::vec::IntoIter<Tree>,
}

impl<'a> TreeStream<'a> {
    pub fn new(alphabet: &'a RankedAlphabet) -> TreeStream<'a> {
        let layer0 = trees_of_exact_height(alphabet, 0, &[]);
        TreeStream {
            alphabet,
            layers: vec![layer0.clone()],
            current: layer0.into_iter(),
        }
    }
}

impl Iterator for TreeStream<'_> {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        loop {
            if let Some(t) = self.current.next() {
                return Some(t);
            }
            let h = self.layers.len();
            let layer = trees_of_exact_height(self.alphabet, h, &self.layers);
            if layer.is_empty() && self.layers.last().map_or(true, |l| l.is_empty()) {
                // no unary-or-higher symbols can extend anything further
                return None;
            }
            self.layers.push(layer.clone());
            self.current = layer.into_iter();
        }
    }
}

/// Parse the term syntax `name(child,...,child)`; nullary symbols as bare
/// names; the hole spelled `[]`.
pub fn parse_term(alphabet: &RankedAlphabet, input: &str) -> Result<Tree> {
    let bytes = input.as_bytes();
    let mut pos = 0usize;
    let tree = parse_node(alphabet, input, bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::TermParse {
            at: pos,
            msg: "trailing input after term".into(),
        });
    }
    Ok(tree)
}

/// Parse a context: a term containing exactly one `[]`.
pub fn parse_context(alphabet: &RankedAlphabet, input: &str) -> Result<Context> {
    Context::new(parse_term(alphabet, input)?)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_node(
    alphabet: &RankedAlphabet,
    input: &str,
    bytes: &[u8],
    pos: &mut usize,
) -> Result<Tree> {
    skip_ws(bytes, pos);
    if bytes[*pos..].starts_with(b"[]") {
        *pos += 2;
        return Ok(Tree::hole());
    }
    let start = *pos;
    while *pos < bytes.len()
        && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_' || bytes[*pos] == b'\'')
    {
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::TermParse {
            at: start,
            msg: "expected a symbol name".into(),
        });
    }
    let name = &input[start..*pos];
    let id = alphabet.lookup(name).ok_or_else(|| Error::TermParse {
        at: start,
        msg: format!("unknown symbol {name}"),
    })?;
    let rank = alphabet.rank(id);
    skip_ws(bytes, pos);
    let mut children = Vec::new();
    if *pos < bytes.len() && bytes[*pos] == b'(' {
        *pos += 1;
        loop {
            children.push(parse_node(alphabet, input, bytes, pos)?);
            skip_ws(bytes, pos);
            match bytes.get(*pos) {
                Some(b',') => *pos += 1,
                Some(b')') => {
                    *pos += 1;
                    break;
                }
                _ => {
                    return Err(Error::TermParse {
                        at: *pos,
                        msg: "expected ',' or ')'".into(),
                    })
                }
            }
        }
    }
    if children.len() != rank {
        return Err(Error::TermParse {
            at: start,
            msg: format!(
                "symbol {name} has rank {rank} but {} children given",
                children.len()
            ),
        });
    }
    Ok(Tree::node(id, children))
}
