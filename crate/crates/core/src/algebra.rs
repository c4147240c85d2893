//! Weight algebras: strong bimonoids with optional partial order, past
//! enumeration, and quotient constructions.
//!
//! A strong bimonoid is an algebra `(B, ⊕, ⊗, 0, 1)` where `(B, ⊕, 0)` is a
//! commutative monoid, `(B, ⊗, 1)` is a monoid, `0 ≠ 1`, and `0` annihilates
//! under `⊗`. Distributivity is not assumed; each concrete algebra declares
//! what it actually satisfies through tri-state capability flags.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde_json::Value as Json;

use crate::error::{Error, Result};

/// An element of some weight algebra. Which variants are meaningful depends
/// on the algebra the value belongs to; operations panic on foreign values
/// only in debug assertions and otherwise report an error.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Weight {
    Bool(bool),
    Nat(u64),
    /// Arctic semiring element; `None` encodes `-inf`.
    Arctic(Option<u64>),
    /// Tropical semiring element; `None` encodes `+inf`.
    Tropical(Option<u64>),
    /// Finite set of naturals.
    Set(BTreeSet<u64>),
    /// Finite language over a fixed alphabet.
    Lang(BTreeSet<String>),
    /// Row-major n-by-n matrix of naturals.
    Mat(Vec<u64>),
    /// Plus-plus bimonoid element; `None` encodes the adjoined zero.
    PlusPlus(Option<u64>),
    Induced(InducedValue),
    Join(JoinValue),
    /// Congruence class index of a quotient algebra.
    Class(u32),
}

/// Element of a strong bimonoid induced from two semigroups on the positive
/// naturals, with adjoined unit elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum InducedValue {
    Zero,
    One,
    Elem(u64),
}

/// Element of the two-chain join algebra on two copies of the positive
/// naturals (used as the idempotent, non-past-finite fixture algebra).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum JoinValue {
    Zero,
    One,
    Plain(u64),
    Primed(u64),
}

/// Tri-state capability flag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flag {
    True,
    False,
    Unknown,
}

impl Flag {
    pub fn is_true(self) -> bool {
        self == Flag::True
    }
}

/// Declared structural properties of an algebra. `Unknown` means the
/// property is neither asserted nor denied; decision procedures degrade to
/// `unknown` verdicts rather than assume anything.
#[derive(Clone, Copy, Debug)]
pub struct Flags {
    pub commutative: Flag,
    pub left_distributive: Flag,
    pub right_distributive: Flag,
    pub idempotent: Flag,
    pub monotonic: Flag,
    pub past_finite: Flag,
    pub additively_locally_finite: Flag,
}

/// Result of an additive-order query for an element `b`: the shape of the
/// cyclic structure of `{b, 2b, 3b, ...}` under `⊕`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdditiveOrder {
    /// `index·b = (index+period)·b`, both minimal.
    Finite { index: u64, period: u64 },
    Infinite,
    Unknown,
}

/// Semigroup operations available for the induced-bimonoid construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InducedOp {
    Plus,
    Max,
    Times,
    /// `a ∘ b = a + b + 2ab`.
    PlusPlusTwoAb,
}

impl InducedOp {
    fn apply(self, a: u64, b: u64) -> u64 {
        match self {
            InducedOp::Plus => a + b,
            InducedOp::Max => a.max(b),
            InducedOp::Times => a * b,
            InducedOp::PlusPlusTwoAb => a + b + 2 * a * b,
        }
    }
}

/// How a quotient algebra maps base elements onto class indices.
#[derive(Clone, Debug)]
enum ClassRule {
    /// Classes `{0}, ..., {n}` and the absorbing class of everything above.
    Threshold(u64),
    /// Residue classes modulo `n`.
    Modulo(u64),
    /// Singleton classes for `past(b)` plus one absorbing class.
    PastCut,
}

/// A finite quotient algebra: representatives, operation tables, and the
/// projection rule from the base algebra.
#[derive(Debug)]
pub struct QuotientTable {
    pub base: Algebra,
    pub label: String,
    /// One base-algebra representative per class.
    pub reps: Vec<Weight>,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    zero: u32,
    one: u32,
    leq: Option<Vec<Vec<bool>>>,
    rule: ClassRule,
    /// Index of the absorbing class for `PastCut`.
    absorbing: Option<u32>,
}

impl QuotientTable {
    pub fn class_of(&self, b: &Weight) -> u32 {
        match &self.rule {
            ClassRule::Threshold(n) => match b {
                Weight::Nat(x) => (*x).min(n + 1) as u32,
                _ => panic!("threshold quotient applied to non-natural"),
            },
            ClassRule::Modulo(n) => match b {
                Weight::Nat(x) => (x % n) as u32,
                _ => panic!("modulo quotient applied to non-natural"),
            },
            ClassRule::PastCut => self
                .reps
                .iter()
                .position(|r| r == b)
                .map(|i| i as u32)
                .filter(|i| Some(*i) != self.absorbing)
                .unwrap_or_else(|| self.absorbing.expect("pastCut has absorbing class")),
        }
    }
}

/// The kind of a weight algebra, carrying whatever parameters it needs.
#[derive(Clone, Debug)]
pub enum AlgebraKind {
    Boolean,
    Naturals,
    Arctic,
    Tropical,
    Lcm,
    FSet,
    Mat(usize),
    FLang(Vec<String>),
    PlusPlus,
    TruncatedPlus,
    Induced { add: InducedOp, mul: InducedOp },
    Join,
    Quotient(Arc<QuotientTable>),
}

/// A computable strong bimonoid. Values are [`Weight`]s; the algebra object
/// interprets them. Immutable after construction and safe to share.
#[derive(Clone, Debug)]
pub struct Algebra {
    kind: AlgebraKind,
    flags_override: Option<Flags>,
}

/// Saturation bound of the truncated-addition bimonoid.
const TRUNC_CAP: u64 = 100;

impl Algebra {
    pub fn new(kind: AlgebraKind) -> Algebra {
        Algebra {
            kind,
            flags_override: None,
        }
    }

    /// Same algebra with different declared flags; used to exercise
    /// flag-mismatch detection in axiom checking.
    pub fn with_flags(mut self, flags: Flags) -> Algebra {
        self.flags_override = Some(flags);
        self
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn boolean() -> Algebra {
        Algebra::new(AlgebraKind::Boolean)
    }
    pub fn naturals() -> Algebra {
        Algebra::new(AlgebraKind::Naturals)
    }
    pub fn arctic() -> Algebra {
        Algebra::new(AlgebraKind::Arctic)
    }
    pub fn tropical() -> Algebra {
        Algebra::new(AlgebraKind::Tropical)
    }
    pub fn plusplus() -> Algebra {
        Algebra::new(AlgebraKind::PlusPlus)
    }
    pub fn truncated_plus() -> Algebra {
        Algebra::new(AlgebraKind::TruncatedPlus)
    }
    pub fn join() -> Algebra {
        Algebra::new(AlgebraKind::Join)
    }
    pub fn flang(letters: Vec<String>) -> Algebra {
        Algebra::new(AlgebraKind::FLang(letters))
    }

    pub fn name(&self) -> String {
        match &self.kind {
            AlgebraKind::Boolean => "boolean".into(),
            AlgebraKind::Naturals => "naturals".into(),
            AlgebraKind::Arctic => "arctic".into(),
            AlgebraKind::Tropical => "tropical".into(),
            AlgebraKind::Lcm => "lcm".into(),
            AlgebraKind::FSet => "fset".into(),
            AlgebraKind::Mat(n) => format!("mat_{n}"),
            AlgebraKind::FLang(_) => "flang".into(),
            AlgebraKind::PlusPlus => "plusplus".into(),
            AlgebraKind::TruncatedPlus => "truncated_plus".into(),
            AlgebraKind::Induced { .. } => "induced".into(),
            AlgebraKind::Join => "join".into(),
            AlgebraKind::Quotient(t) => t.label.clone(),
        }
    }

    pub fn zero(&self) -> Weight {
        match &self.kind {
            AlgebraKind::Boolean => Weight::Bool(false),
            AlgebraKind::Naturals | AlgebraKind::TruncatedPlus => Weight::Nat(0),
            AlgebraKind::Arctic => Weight::Arctic(None),
            AlgebraKind::Tropical => Weight::Tropical(None),
            AlgebraKind::Lcm => Weight::Nat(0),
            AlgebraKind::FSet => Weight::Set(BTreeSet::new()),
            AlgebraKind::Mat(n) => Weight::Mat(vec![0; n * n]),
            AlgebraKind::FLang(_) => Weight::Lang(BTreeSet::new()),
            AlgebraKind::PlusPlus => Weight::PlusPlus(None),
            AlgebraKind::Induced { .. } => Weight::Induced(InducedValue::Zero),
            AlgebraKind::Join => Weight::Join(JoinValue::Zero),
            AlgebraKind::Quotient(t) => Weight::Class(t.zero),
        }
    }

    pub fn one(&self) -> Weight {
        match &self.kind {
            AlgebraKind::Boolean => Weight::Bool(true),
            AlgebraKind::Naturals | AlgebraKind::TruncatedPlus => Weight::Nat(1),
            AlgebraKind::Arctic => Weight::Arctic(Some(0)),
            AlgebraKind::Tropical => Weight::Tropical(Some(0)),
            AlgebraKind::Lcm => Weight::Nat(1),
            AlgebraKind::FSet => Weight::Set(std::iter::once(0).collect()),
            AlgebraKind::Mat(n) => {
                let mut m = vec![0; n * n];
                for i in 0..*n {
                    m[i * n + i] = 1;
                }
                Weight::Mat(m)
            }
            AlgebraKind::FLang(_) => Weight::Lang(std::iter::once(String::new()).collect()),
            AlgebraKind::PlusPlus => Weight::PlusPlus(Some(0)),
            AlgebraKind::Induced { .. } => Weight::Induced(InducedValue::One),
            AlgebraKind::Join => Weight::Join(JoinValue::One),
            AlgebraKind::Quotient(t) => Weight::Class(t.one),
        }
    }

    pub fn is_zero(&self, w: &Weight) -> bool {
        *w == self.zero()
    }

    pub fn is_one(&self, w: &Weight) -> bool {
        *w == self.one()
    }

    pub fn add(&self, a: &Weight, b: &Weight) -> Weight {
        match (&self.kind, a, b) {
            (AlgebraKind::Boolean, Weight::Bool(x), Weight::Bool(y)) => Weight::Bool(*x || *y),
            (AlgebraKind::Naturals, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(x + y),
            (AlgebraKind::Arctic, Weight::Arctic(x), Weight::Arctic(y)) => {
                Weight::Arctic(match (x, y) {
                    (None, v) | (v, None) => *v,
                    (Some(x), Some(y)) => Some(*x.max(y)),
                })
            }
            (AlgebraKind::Tropical, Weight::Tropical(x), Weight::Tropical(y)) => {
                Weight::Tropical(match (x, y) {
                    (None, v) | (v, None) => *v,
                    (Some(x), Some(y)) => Some(*x.min(y)),
                })
            }
            (AlgebraKind::Lcm, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(lcm(*x, *y)),
            (AlgebraKind::FSet, Weight::Set(x), Weight::Set(y)) => {
                Weight::Set(x.union(y).copied().collect())
            }
            (AlgebraKind::Mat(n), Weight::Mat(x), Weight::Mat(y)) => {
                debug_assert_eq!(x.len(), n * n);
                Weight::Mat(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (AlgebraKind::FLang(_), Weight::Lang(x), Weight::Lang(y)) => {
                Weight::Lang(x.union(y).cloned().collect())
            }
            (AlgebraKind::PlusPlus, Weight::PlusPlus(x), Weight::PlusPlus(y)) => {
                Weight::PlusPlus(match (x, y) {
                    (None, v) | (v, None) => *v,
                    (Some(x), Some(y)) => Some(x + y),
                })
            }
            (AlgebraKind::TruncatedPlus, Weight::Nat(x), Weight::Nat(y)) => {
                Weight::Nat(if *x <= TRUNC_CAP && *y <= TRUNC_CAP {
                    (x + y).min(TRUNC_CAP)
                } else {
                    *x.max(y)
                })
            }
            (AlgebraKind::Induced { add, .. }, Weight::Induced(x), Weight::Induced(y)) => {
                Weight::Induced(match (x, y) {
                    (InducedValue::Zero, v) | (v, InducedValue::Zero) => *v,
                    (InducedValue::One, v) | (v, InducedValue::One) => *v,
                    (InducedValue::Elem(x), InducedValue::Elem(y)) => {
                        InducedValue::Elem(add.apply(*x, *y))
                    }
                })
            }
            (AlgebraKind::Join, Weight::Join(x), Weight::Join(y)) => Weight::Join(join_sup(*x, *y)),
            (AlgebraKind::Quotient(t), Weight::Class(x), Weight::Class(y)) => {
                Weight::Class(t.add[*x as usize][*y as usize])
            }
            _ => panic!("add: values {a:?}, {b:?} foreign to algebra {}", self.name()),
        }
    }

    pub fn mul(&self, a: &Weight, b: &Weight) -> Weight {
        match (&self.kind, a, b) {
            (AlgebraKind::Boolean, Weight::Bool(x), Weight::Bool(y)) => Weight::Bool(*x && *y),
            (AlgebraKind::Naturals, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(x * y),
            (AlgebraKind::Arctic, Weight::Arctic(x), Weight::Arctic(y)) => {
                Weight::Arctic(match (x, y) {
                    (None, _) | (_, None) => None,
                    (Some(x), Some(y)) => Some(x + y),
                })
            }
            (AlgebraKind::Tropical, Weight::Tropical(x), Weight::Tropical(y)) => {
                Weight::Tropical(match (x, y) {
                    (None, _) | (_, None) => None,
                    (Some(x), Some(y)) => Some(x + y),
                })
            }
            (AlgebraKind::Lcm, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(x * y),
            (AlgebraKind::FSet, Weight::Set(x), Weight::Set(y)) => Weight::Set(
                x.iter()
                    .flat_map(|a| y.iter().map(move |b| a + b))
                    .collect(),
            ),
            (AlgebraKind::Mat(n), Weight::Mat(x), Weight::Mat(y)) => {
                let n = *n;
                let mut out = vec![0u64; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let v = x[i * n + k];
                        if v == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] += v * y[k * n + j];
                        }
                    }
                }
                Weight::Mat(out)
            }
            (AlgebraKind::FLang(_), Weight::Lang(x), Weight::Lang(y)) => Weight::Lang(
                x.iter()
                    .flat_map(|a| y.iter().map(move |b| format!("{a}{b}")))
                    .collect(),
            ),
            (AlgebraKind::PlusPlus, Weight::PlusPlus(x), Weight::PlusPlus(y)) => {
                Weight::PlusPlus(match (x, y) {
                    (None, _) | (_, None) => None,
                    (Some(x), Some(y)) => Some(x + y),
                })
            }
            (AlgebraKind::TruncatedPlus, Weight::Nat(x), Weight::Nat(y)) => Weight::Nat(x * y),
            (AlgebraKind::Induced { mul, .. }, Weight::Induced(x), Weight::Induced(y)) => {
                Weight::Induced(match (x, y) {
                    (InducedValue::Zero, _) | (_, InducedValue::Zero) => InducedValue::Zero,
                    (InducedValue::One, v) | (v, InducedValue::One) => *v,
                    (InducedValue::Elem(x), InducedValue::Elem(y)) => {
                        InducedValue::Elem(mul.apply(*x, *y))
                    }
                })
            }
            (AlgebraKind::Join, Weight::Join(x), Weight::Join(y)) => {
                Weight::Join(match (x, y) {
                    (JoinValue::Zero, _) | (_, JoinValue::Zero) => JoinValue::Zero,
                    (JoinValue::One, v) | (v, JoinValue::One) => *v,
                    (JoinValue::Plain(x), JoinValue::Plain(y)) => JoinValue::Plain(x + y),
                    (JoinValue::Primed(x), JoinValue::Primed(y)) => JoinValue::Primed(x + y),
                    // mixed products land in the primed copy
                    (JoinValue::Plain(x), JoinValue::Primed(y))
                    | (JoinValue::Primed(y), JoinValue::Plain(x)) => JoinValue::Primed(x + y),
                })
            }
            (AlgebraKind::Quotient(t), Weight::Class(x), Weight::Class(y)) => {
                Weight::Class(t.mul[*x as usize][*y as usize])
            }
            _ => panic!("mul: values {a:?}, {b:?} foreign to algebra {}", self.name()),
        }
    }

    /// n-fold sum `n·b` computed by doubling.
    pub fn nsum(&self, b: &Weight, n: u64) -> Weight {
        let mut acc = self.zero();
        let mut base = b.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Partial-order test, if the algebra carries an order.
    pub fn leq(&self, a: &Weight, b: &Weight) -> Option<bool> {
        match (&self.kind, a, b) {
            (AlgebraKind::Boolean, Weight::Bool(x), Weight::Bool(y)) => Some(!x || *y),
            (
                AlgebraKind::Naturals | AlgebraKind::Lcm | AlgebraKind::TruncatedPlus,
                Weight::Nat(x),
                Weight::Nat(y),
            ) => Some(x <= y),
            (AlgebraKind::Arctic, Weight::Arctic(x), Weight::Arctic(y)) => Some(match (x, y) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(x), Some(y)) => x <= y,
            }),
            // natural order on values with +inf on top; NOT monotonic for min-plus
            (AlgebraKind::Tropical, Weight::Tropical(x), Weight::Tropical(y)) => {
                Some(match (x, y) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(x), Some(y)) => x <= y,
                })
            }
            (AlgebraKind::FSet, Weight::Set(x), Weight::Set(y)) => {
                Some(injective_matching(x, y, |a, b| a <= b))
            }
            (AlgebraKind::Mat(_), Weight::Mat(x), Weight::Mat(y)) => {
                Some(x.iter().zip(y).all(|(a, b)| a <= b))
            }
            (AlgebraKind::FLang(_), Weight::Lang(x), Weight::Lang(y)) => {
                Some(injective_matching(x, y, |a, b| is_subword(a, b)))
            }
            (AlgebraKind::PlusPlus, Weight::PlusPlus(x), Weight::PlusPlus(y)) => {
                Some(match (x, y) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(x), Some(y)) => x <= y,
                })
            }
            (AlgebraKind::Induced { .. }, Weight::Induced(x), Weight::Induced(y)) => {
                Some(match (x, y) {
                    (InducedValue::Zero, _) => true,
                    (_, InducedValue::Zero) => false,
                    (InducedValue::One, _) => true,
                    (_, InducedValue::One) => false,
                    (InducedValue::Elem(x), InducedValue::Elem(y)) => x <= y,
                })
            }
            (AlgebraKind::Join, Weight::Join(x), Weight::Join(y)) => Some(join_leq(*x, *y)),
            (AlgebraKind::Quotient(t), Weight::Class(x), Weight::Class(y)) => t
                .leq
                .as_ref()
                .map(|table| table[*x as usize][*y as usize]),
            _ => None,
        }
    }

    /// Finite enumeration of `{a | a ⪯ b}`, when the algebra is past-finite
    /// and the enumeration is computable.
    pub fn past(&self, b: &Weight) -> Option<Vec<Weight>> {
        match (&self.kind, b) {
            (AlgebraKind::Boolean, Weight::Bool(x)) => Some(if *x {
                vec![Weight::Bool(false), Weight::Bool(true)]
            } else {
                vec![Weight::Bool(false)]
            }),
            (
                AlgebraKind::Naturals | AlgebraKind::Lcm | AlgebraKind::TruncatedPlus,
                Weight::Nat(n),
            ) => Some((0..=*n).map(Weight::Nat).collect()),
            (AlgebraKind::Arctic, Weight::Arctic(x)) => {
                let mut v = vec![Weight::Arctic(None)];
                if let Some(n) = x {
                    v.extend((0..=*n).map(|k| Weight::Arctic(Some(k))));
                }
                Some(v)
            }
            (AlgebraKind::FSet, Weight::Set(s)) => {
                let hi = s.iter().max().copied().unwrap_or(0);
                let universe: Vec<u64> = (0..=hi).collect();
                let mut out = Vec::new();
                for cand in subsets_up_to(&universe, s.len()) {
                    let cand: BTreeSet<u64> = cand.into_iter().collect();
                    if injective_matching(&cand, s, |a, b| a <= b) {
                        out.push(Weight::Set(cand));
                    }
                }
                Some(out)
            }
            (AlgebraKind::Mat(n), Weight::Mat(m)) => {
                // pointwise order; enumerate entrywise ranges
                let mut out = vec![vec![]];
                for &e in m {
                    let mut next = Vec::new();
                    for prefix in &out {
                        for v in 0..=e {
                            let mut p: Vec<u64> = prefix.clone();
                            p.push(v);
                            next.push(p);
                        }
                    }
                    out = next;
                }
                let _ = n;
                Some(out.into_iter().map(Weight::Mat).collect())
            }
            (AlgebraKind::FLang(_), Weight::Lang(l)) => {
                let mut candidates: BTreeSet<String> = BTreeSet::new();
                for w in l {
                    subwords_of(w, &mut candidates);
                }
                let candidates: Vec<String> = candidates.into_iter().collect();
                let mut out = Vec::new();
                for cand in subsets_up_to(&candidates, l.len()) {
                    let cand: BTreeSet<String> = cand.into_iter().collect();
                    if injective_matching(&cand, l, |a, b| is_subword(a, b)) {
                        out.push(Weight::Lang(cand));
                    }
                }
                Some(out)
            }
            (AlgebraKind::PlusPlus, Weight::PlusPlus(x)) => {
                let mut v = vec![Weight::PlusPlus(None)];
                if let Some(n) = x {
                    v.extend((0..=*n).map(|k| Weight::PlusPlus(Some(k))));
                }
                Some(v)
            }
            (AlgebraKind::Induced { .. }, Weight::Induced(x)) => {
                let mut v = vec![
                    Weight::Induced(InducedValue::Zero),
                    Weight::Induced(InducedValue::One),
                ];
                match x {
                    InducedValue::Zero => return Some(vec![Weight::Induced(InducedValue::Zero)]),
                    InducedValue::One => v.truncate(2),
                    InducedValue::Elem(n) => {
                        v.extend((1..=*n).map(|k| Weight::Induced(InducedValue::Elem(k))))
                    }
                }
                Some(v)
            }
            (AlgebraKind::Join, _) => None,
            (AlgebraKind::Tropical, _) => None,
            (AlgebraKind::Quotient(t), Weight::Class(c)) => {
                let leq = t.leq.as_ref()?;
                Some(
                    (0..t.reps.len() as u32)
                        .filter(|i| leq[*i as usize][*c as usize])
                        .map(Weight::Class)
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Some element strictly above `b`, for past-finite algebras. Used to
    /// seed the absorbing class of a `pastCut` quotient.
    fn beyond(&self, b: &Weight) -> Option<Weight> {
        match (&self.kind, b) {
            (
                AlgebraKind::Naturals | AlgebraKind::Lcm | AlgebraKind::TruncatedPlus,
                Weight::Nat(n),
            ) => Some(Weight::Nat(n + 1)),
            (AlgebraKind::Boolean, _) => None,
            (AlgebraKind::Arctic, Weight::Arctic(x)) => {
                Some(Weight::Arctic(Some(x.map_or(0, |n| n + 1))))
            }
            (AlgebraKind::FSet, Weight::Set(s)) => {
                let hi = s.iter().max().copied().unwrap_or(0);
                let mut t = s.clone();
                t.insert(hi + 1);
                Some(Weight::Set(t))
            }
            (AlgebraKind::Mat(n), Weight::Mat(m)) => {
                let mut m = m.clone();
                m[0] += 1;
                let _ = n;
                Some(Weight::Mat(m))
            }
            (AlgebraKind::FLang(letters), Weight::Lang(l)) => {
                let a = letters.first().cloned().unwrap_or_else(|| "a".into());
                let longest = l.iter().max_by_key(|w| w.len()).cloned().unwrap_or_default();
                let mut t = l.clone();
                t.insert(format!("{longest}{a}"));
                Some(Weight::Lang(t))
            }
            (AlgebraKind::PlusPlus, Weight::PlusPlus(x)) => {
                Some(Weight::PlusPlus(Some(x.map_or(0, |n| n + 1))))
            }
            (AlgebraKind::Induced { .. }, Weight::Induced(x)) => Some(Weight::Induced(match x {
                InducedValue::Zero => InducedValue::One,
                InducedValue::One => InducedValue::Elem(1),
                InducedValue::Elem(n) => InducedValue::Elem(n + 1),
            })),
            _ => None,
        }
    }

    pub fn flags(&self) -> Flags {
        if let Some(f) = self.flags_override {
            return f;
        }
        use Flag::*;
        let all = |c, ld, rd, i, m, pf, alf| Flags {
            commutative: c,
            left_distributive: ld,
            right_distributive: rd,
            idempotent: i,
            monotonic: m,
            past_finite: pf,
            additively_locally_finite: alf,
        };
        match &self.kind {
            AlgebraKind::Boolean => all(True, True, True, True, True, True, True),
            AlgebraKind::Naturals => all(True, True, True, False, True, True, False),
            AlgebraKind::Arctic => all(True, True, True, True, True, True, True),
            AlgebraKind::Tropical => all(True, True, True, True, False, False, True),
            AlgebraKind::Lcm => all(True, True, True, True, True, True, True),
            AlgebraKind::FSet => all(True, True, True, True, True, True, True),
            AlgebraKind::Mat(_) => all(False, True, True, False, True, True, False),
            AlgebraKind::FLang(_) => all(False, True, True, True, True, True, True),
            AlgebraKind::PlusPlus => all(True, False, False, False, True, True, False),
            AlgebraKind::TruncatedPlus => all(True, False, False, False, True, True, True),
            AlgebraKind::Induced { add, mul } => {
                let comm = True; // all supported semigroup ops are commutative
                let idem = if *add == InducedOp::Max { True } else { False };
                let _ = mul;
                all(comm, Unknown, Unknown, idem, True, True, idem)
            }
            AlgebraKind::Join => all(True, True, True, True, True, False, True),
            AlgebraKind::Quotient(t) => {
                let base = t.base.flags();
                Flags {
                    commutative: base.commutative,
                    left_distributive: base.left_distributive,
                    right_distributive: base.right_distributive,
                    idempotent: base.idempotent,
                    monotonic: Unknown,
                    past_finite: True,
                    additively_locally_finite: True,
                }
            }
        }
    }

    /// Whether the carrier is finite, with its enumeration.
    pub fn finite_carrier(&self) -> Option<Vec<Weight>> {
        match &self.kind {
            AlgebraKind::Boolean => Some(vec![Weight::Bool(false), Weight::Bool(true)]),
            AlgebraKind::Quotient(t) => {
                Some((0..t.reps.len() as u32).map(Weight::Class).collect())
            }
            _ => None,
        }
    }

    /// Oracle for the shape of `⟨b⟩_⊕`, when the algebra knows it directly.
    pub fn additive_order_hint(&self, b: &Weight) -> AdditiveOrder {
        use AdditiveOrder::*;
        if self.is_zero(b) {
            return Finite { index: 1, period: 1 };
        }
        match (&self.kind, b) {
            (AlgebraKind::Boolean, _) => Finite { index: 1, period: 1 },
            (AlgebraKind::Naturals, _) => Infinite,
            (
                AlgebraKind::Arctic
                | AlgebraKind::Tropical
                | AlgebraKind::Lcm
                | AlgebraKind::FSet
                | AlgebraKind::FLang(_)
                | AlgebraKind::Join,
                _,
            ) => Finite { index: 1, period: 1 },
            (AlgebraKind::Mat(_), _) => Infinite,
            (AlgebraKind::PlusPlus, Weight::PlusPlus(Some(0))) => Finite { index: 1, period: 1 },
            (AlgebraKind::PlusPlus, _) => Infinite,
            (AlgebraKind::TruncatedPlus, _) => {
                enumerate_additive_order(self, b, 2 * TRUNC_CAP + 4).unwrap_or(Unknown)
            }
            (AlgebraKind::Induced { add, .. }, Weight::Induced(v)) => match v {
                InducedValue::One => Finite { index: 1, period: 1 },
                _ if *add == InducedOp::Max => Finite { index: 1, period: 1 },
                _ => Infinite,
            },
            (AlgebraKind::Quotient(t), _) => {
                enumerate_additive_order(self, b, t.reps.len() as u64 + 2).unwrap_or(Unknown)
            }
            _ => Unknown,
        }
    }

    /// Canonical text encoding of a weight; round-trips through
    /// [`Algebra::parse_weight`] bit-exactly.
    pub fn format_weight(&self, w: &Weight) -> String {
        match w {
            Weight::Bool(b) => if *b { "1" } else { "0" }.into(),
            Weight::Nat(n) => n.to_string(),
            Weight::Arctic(None) => "-inf".into(),
            Weight::Arctic(Some(n)) => n.to_string(),
            Weight::Tropical(None) => "inf".into(),
            Weight::Tropical(Some(n)) => n.to_string(),
            Weight::Set(s) => {
                let items: Vec<String> = s.iter().map(u64::to_string).collect();
                format!("[{}]", items.join(","))
            }
            Weight::Lang(l) => {
                let items: Vec<String> = l.iter().map(|w| format!("\"{w}\"")).collect();
                format!("[{}]", items.join(","))
            }
            Weight::Mat(m) => {
                let items: Vec<String> = m.iter().map(u64::to_string).collect();
                format!("[{}]", items.join(","))
            }
            Weight::PlusPlus(None) => "zero".into(),
            Weight::PlusPlus(Some(n)) => n.to_string(),
            Weight::Induced(InducedValue::Zero) => "zero".into(),
            Weight::Induced(InducedValue::One) => "one".into(),
            Weight::Induced(InducedValue::Elem(n)) => n.to_string(),
            Weight::Join(JoinValue::Zero) => "zero".into(),
            Weight::Join(JoinValue::One) => "one".into(),
            Weight::Join(JoinValue::Plain(n)) => n.to_string(),
            Weight::Join(JoinValue::Primed(n)) => format!("{n}'"),
            Weight::Class(c) => {
                if let AlgebraKind::Quotient(t) = &self.kind {
                    t.base.format_weight(&t.reps[*c as usize])
                } else {
                    format!("#{c}")
                }
            }
        }
    }

    /// Parse a weight literal given as JSON (string, number, or array).
    pub fn parse_weight(&self, v: &Json) -> Result<Weight> {
        let bad = || Error::WeightLiteral {
            algebra: self.name(),
            literal: v.to_string(),
        };
        let as_u64 = |v: &Json| -> Option<u64> {
            match v {
                Json::Number(n) => n.as_u64(),
                Json::String(s) => s.parse().ok(),
                _ => None,
            }
        };
        match &self.kind {
            AlgebraKind::Boolean => match as_u64(v) {
                Some(0) => Ok(Weight::Bool(false)),
                Some(1) => Ok(Weight::Bool(true)),
                _ => Err(bad()),
            },
            AlgebraKind::Naturals | AlgebraKind::Lcm | AlgebraKind::TruncatedPlus => {
                as_u64(v).map(Weight::Nat).ok_or_else(bad)
            }
            AlgebraKind::Arctic => match v {
                Json::String(s) if s == "-inf" => Ok(Weight::Arctic(None)),
                _ => as_u64(v).map(|n| Weight::Arctic(Some(n))).ok_or_else(bad),
            },
            AlgebraKind::Tropical => match v {
                Json::String(s) if s == "inf" => Ok(Weight::Tropical(None)),
                _ => as_u64(v).map(|n| Weight::Tropical(Some(n))).ok_or_else(bad),
            },
            AlgebraKind::FSet => match v {
                Json::Array(items) => items
                    .iter()
                    .map(|x| as_u64(x).ok_or_else(bad))
                    .collect::<Result<BTreeSet<u64>>>()
                    .map(Weight::Set),
                _ => Err(bad()),
            },
            AlgebraKind::Mat(n) => match v {
                Json::Array(items) if items.len() == n * n => items
                    .iter()
                    .map(|x| as_u64(x).ok_or_else(bad))
                    .collect::<Result<Vec<u64>>>()
                    .map(Weight::Mat),
                _ => Err(bad()),
            },
            AlgebraKind::FLang(letters) => match v {
                Json::Array(items) => {
                    let mut l = BTreeSet::new();
                    for it in items {
                        let s = it.as_str().ok_or_else(bad)?;
                        if !s.chars().all(|c| letters.iter().any(|l| l == &c.to_string())) {
                            return Err(bad());
                        }
                        l.insert(s.to_string());
                    }
                    Ok(Weight::Lang(l))
                }
                _ => Err(bad()),
            },
            AlgebraKind::PlusPlus => match v {
                Json::String(s) if s == "zero" => Ok(Weight::PlusPlus(None)),
                _ => as_u64(v).map(|n| Weight::PlusPlus(Some(n))).ok_or_else(bad),
            },
            AlgebraKind::Induced { .. } => match v {
                Json::String(s) if s == "zero" => Ok(Weight::Induced(InducedValue::Zero)),
                Json::String(s) if s == "one" => Ok(Weight::Induced(InducedValue::One)),
                _ => as_u64(v)
                    .filter(|n| *n >= 1)
                    .map(|n| Weight::Induced(InducedValue::Elem(n)))
                    .ok_or_else(bad),
            },
            AlgebraKind::Join => match v {
                Json::String(s) if s == "zero" => Ok(Weight::Join(JoinValue::Zero)),
                Json::String(s) if s == "one" => Ok(Weight::Join(JoinValue::One)),
                Json::String(s) if s.ends_with('\'') => s[..s.len() - 1]
                    .parse::<u64>()
                    .ok()
                    .filter(|n| *n >= 1)
                    .map(|n| Weight::Join(JoinValue::Primed(n)))
                    .ok_or_else(bad),
                _ => as_u64(v)
                    .filter(|n| *n >= 1)
                    .map(|n| Weight::Join(JoinValue::Plain(n)))
                    .ok_or_else(bad),
            },
            AlgebraKind::Quotient(t) => {
                let rep = t.base.parse_weight(v)?;
                Ok(Weight::Class(t.class_of(&rep)))
            }
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    // lcm(0, n) = n in this semiring: 0 is the additive identity
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    a / gcd(a, b) * b
}

fn join_sup(a: JoinValue, b: JoinValue) -> JoinValue {
    if join_leq(a, b) {
        b
    } else if join_leq(b, a) {
        a
    } else {
        unreachable!("join order is total")
    }
}

fn join_leq(a: JoinValue, b: JoinValue) -> bool {
    let rank = |v: JoinValue| match v {
        JoinValue::Zero => (0u8, 0u64),
        JoinValue::One => (1, 0),
        JoinValue::Plain(n) => (2, n),
        JoinValue::Primed(n) => (3, n),
    };
    rank(a) <= rank(b)
}

/// `w1` a scattered subword of `w2`.
fn is_subword(w1: &str, w2: &str) -> bool {
    let mut it = w2.chars();
    w1.chars().all(|c| it.any(|d| d == c))
}

fn subwords_of(w: &str, out: &mut BTreeSet<String>) {
    let chars: Vec<char> = w.chars().collect();
    let n = chars.len();
    // fine for the short words used at desk scale
    for mask in 0..(1u32 << n) {
        let s: String = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| chars[i]).collect();
        out.insert(s);
    }
}

/// All subsets of `items` of size at most `max_size`.
fn subsets_up_to<T: Clone>(items: &[T], max_size: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for item in items {
        let mut next = Vec::new();
        for s in &out {
            next.push(s.clone());
            if s.len() < max_size {
                let mut t = s.clone();
                t.push(item.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive search for an injective mapping `f: from -> to` with
/// `rel(x, f(x))` for all `x`. Operands stay tiny at desk scale.
fn injective_matching<T: Ord + Clone>(
    from: &BTreeSet<T>,
    to: &BTreeSet<T>,
    rel: impl Fn(&T, &T) -> bool + Copy,
) -> bool {
    fn go<T: Ord + Clone>(
        xs: &[T],
        to: &[T],
        used: &mut Vec<bool>,
        rel: impl Fn(&T, &T) -> bool + Copy,
    ) -> bool {
        let Some((x, rest)) = xs.split_first() else {
            return true;
        };
        for (i, y) in to.iter().enumerate() {
            if !used[i] && rel(x, y) {
                used[i] = true;
                if go(rest, to, used, rel) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    let xs: Vec<T> = from.iter().cloned().collect();
    let ys: Vec<T> = to.iter().cloned().collect();
    go(&xs, &ys, &mut vec![false; ys.len()], rel)
}

fn enumerate_additive_order(alg: &Algebra, b: &Weight, fuel: u64) -> Option<AdditiveOrder> {
    let mut seen: Vec<Weight> = Vec::new();
    let mut cur = b.clone();
    for _ in 0..fuel {
        if let Some(pos) = seen.iter().position(|w| *w == cur) {
            // seen[j] = (j+1)·b, so a repeat at pos means index = pos+1
            let index = pos as u64 + 1;
            let period = seen.len() as u64 - pos as u64;
            return Some(AdditiveOrder::Finite { index, period });
        }
        seen.push(cur.clone());
        cur = alg.add(&cur, b);
    }
    None
}

/// Decide the shape of `⟨b⟩_⊕`: delegate to the algebra's oracle, then to
/// the dichotomy for distributive monotonic algebras, then to bounded
/// enumeration.
pub fn additive_order(alg: &Algebra, b: &Weight, fuel: u64) -> AdditiveOrder {
    let hint = alg.additive_order_hint(b);
    if hint != AdditiveOrder::Unknown {
        return hint;
    }
    let flags = alg.flags();
    let distributive =
        flags.left_distributive.is_true() || flags.right_distributive.is_true();
    if distributive && flags.monotonic.is_true() {
        let one = alg.one();
        if alg.add(&one, &one) == one {
            return AdditiveOrder::Finite { index: 1, period: 1 };
        }
        if !alg.is_zero(b) {
            return AdditiveOrder::Infinite;
        }
        return AdditiveOrder::Finite { index: 1, period: 1 };
    }
    enumerate_additive_order(alg, b, fuel).unwrap_or(AdditiveOrder::Unknown)
}

/// A strong bimonoid homomorphism with an effective `map` function.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: Algebra,
    pub target: Algebra,
    rule: HomRule,
}

#[derive(Clone, Debug)]
enum HomRule {
    Identity,
    IntoQuotient(Arc<QuotientTable>),
}

impl Homomorphism {
    pub fn identity(alg: &Algebra) -> Homomorphism {
        Homomorphism {
            source: alg.clone(),
            target: alg.clone(),
            rule: HomRule::Identity,
        }
    }

    pub fn map(&self, b: &Weight) -> Weight {
        match &self.rule {
            HomRule::Identity => b.clone(),
            HomRule::IntoQuotient(t) => Weight::Class(t.class_of(b)),
        }
    }
}

/// The quotient constructions used by the decision procedures.
#[derive(Clone, Debug)]
pub enum QuotientKind {
    /// Over the naturals: classes `{0},...,{n}` and everything above.
    Threshold(u64),
    /// Over the naturals: residues modulo `n`.
    Modulo(u64),
    /// Over any past-finite monotonic algebra: singletons for `past(b)` plus
    /// one absorbing class.
    PastCut(Weight),
}

/// Build the finite quotient algebra and the canonical homomorphism.
pub fn quotient(alg: &Algebra, kind: QuotientKind) -> Result<(Algebra, Homomorphism)> {
    let table = match kind {
        QuotientKind::Threshold(n) => {
            if !matches!(alg.kind(), AlgebraKind::Naturals) {
                return Err(Error::Quotient("threshold quotient requires the naturals".into()));
            }
            let reps: Vec<Weight> = (0..=n + 1).map(Weight::Nat).collect();
            build_table(alg, reps, ClassRule::Threshold(n), format!("nat/threshold({n})"), None)?
        }
        QuotientKind::Modulo(n) => {
            if !matches!(alg.kind(), AlgebraKind::Naturals) {
                return Err(Error::Quotient("modulo quotient requires the naturals".into()));
            }
            if n < 2 {
                return Err(Error::Quotient(format!(
                    "modulo({n}) collapses 0 and 1 into one class"
                )));
            }
            let reps: Vec<Weight> = (0..n).map(Weight::Nat).collect();
            build_table(alg, reps, ClassRule::Modulo(n), format!("nat/mod({n})"), None)?
        }
        QuotientKind::PastCut(b) => {
            let past = alg.past(&b).ok_or_else(|| {
                Error::Quotient(format!(
                    "pastCut requires a past enumeration on {}",
                    alg.name()
                ))
            })?;
            let mut reps = past;
            // representative of the absorbing class: the ⪯-least element
            // outside past(b) encountered while closing under the operations
            let mut outside: Vec<Weight> = Vec::new();
            let in_past = |w: &Weight, reps: &[Weight]| reps.iter().any(|r| r == w);
            for x in &reps {
                for y in &reps {
                    for z in [alg.add(x, y), alg.mul(x, y)] {
                        if !in_past(&z, &reps) && !outside.contains(&z) {
                            outside.push(z);
                        }
                    }
                }
            }
            if outside.is_empty() {
                if let Some(w) = alg.beyond(&b) {
                    outside.push(w);
                }
            }
            let c_rep = outside
                .iter()
                .min_by(|x, y| {
                    if alg.leq(x, y) == Some(true) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                })
                .cloned()
                .ok_or_else(|| {
                    Error::Quotient("pastCut: could not find an element outside past(b)".into())
                })?;
            let absorbing = reps.len() as u32;
            reps.push(c_rep);
            build_table(
                alg,
                reps,
                ClassRule::PastCut,
                format!("{}/pastCut({})", alg.name(), alg.format_weight(&b)),
                Some(absorbing),
            )?
        }
    };
    let table = Arc::new(table);
    let quotient_alg = Algebra::new(AlgebraKind::Quotient(table.clone()));
    let hom = Homomorphism {
        source: alg.clone(),
        target: quotient_alg.clone(),
        rule: HomRule::IntoQuotient(table),
    };
    Ok((quotient_alg, hom))
}

fn build_table(
    base: &Algebra,
    reps: Vec<Weight>,
    rule: ClassRule,
    label: String,
    absorbing: Option<u32>,
) -> Result<QuotientTable> {
    let n = reps.len();
    let mut probe = QuotientTable {
        base: base.clone(),
        label,
        reps,
        add: vec![],
        mul: vec![],
        zero: 0,
        one: 0,
        leq: None,
        rule,
        absorbing,
    };
    let mut add = vec![vec![0u32; n]; n];
    let mut mul = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            add[i][j] = probe.class_of(&base.add(&probe.reps[i], &probe.reps[j]));
            mul[i][j] = probe.class_of(&base.mul(&probe.reps[i], &probe.reps[j]));
        }
    }
    let zero = probe.class_of(&base.zero());
    let one = probe.class_of(&base.one());
    if zero == one {
        return Err(Error::Quotient(
            "degenerate quotient: additive and multiplicative units coincide".into(),
        ));
    }
    // class order: representatives compare where both are in past-style
    // singleton classes; the absorbing class sits on top
    let leq = {
        let mut table = vec![vec![false; n]; n];
        let mut ok = true;
        for i in 0..n {
            for j in 0..n {
                let v = if Some(i as u32) == probe.absorbing {
                    Some(i == j)
                } else if Some(j as u32) == probe.absorbing {
                    Some(true)
                } else {
                    base.leq(&probe.reps[i], &probe.reps[j])
                };
                match v {
                    Some(b) => table[i][j] = b,
                    None => {
                        ok = false;
                    }
                }
            }
        }
        // residue classes carry no meaningful order
        if ok && !matches!(probe.rule, ClassRule::Modulo(_)) {
            Some(table)
        } else {
            None
        }
    };
    probe.add = add;
    probe.mul = mul;
    probe.zero = zero;
    probe.one = one;
    probe.leq = leq;
    Ok(probe)
}

/// Descriptor for [`make_algebra`].
#[derive(Clone, Debug)]
pub enum AlgebraSpec {
    Boolean,
    Naturals,
    Arctic,
    Tropical,
    Lcm,
    FSet,
    Mat(usize),
    FLang(Vec<String>),
    PlusPlus,
    TruncatedPlus,
    Induced { add: InducedOp, mul: InducedOp },
    Join,
}

/// Build one of the concrete algebras from its descriptor.
pub fn make_algebra(spec: &AlgebraSpec) -> Result<Algebra> {
    Ok(match spec {
        AlgebraSpec::Boolean => Algebra::boolean(),
        AlgebraSpec::Naturals => Algebra::naturals(),
        AlgebraSpec::Arctic => Algebra::arctic(),
        AlgebraSpec::Tropical => Algebra::tropical(),
        AlgebraSpec::Lcm => Algebra::new(AlgebraKind::Lcm),
        AlgebraSpec::FSet => Algebra::new(AlgebraKind::FSet),
        AlgebraSpec::Mat(n) => {
            if *n == 0 {
                return Err(Error::Algebra("mat_0: dimension must be at least 1".into()));
            }
            Algebra::new(AlgebraKind::Mat(*n))
        }
        AlgebraSpec::FLang(letters) => {
            if letters.is_empty() {
                return Err(Error::Algebra("flang: alphabet must be nonempty".into()));
            }
            Algebra::flang(letters.clone())
        }
        AlgebraSpec::PlusPlus => Algebra::plusplus(),
        AlgebraSpec::TruncatedPlus => Algebra::truncated_plus(),
        AlgebraSpec::Induced { add, mul } => Algebra::new(AlgebraKind::Induced {
            add: *add,
            mul: *mul,
        }),
        AlgebraSpec::Join => Algebra::join(),
    })
}

/// An axiom or flag violation found on a sample set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub counterexample: Vec<String>,
}

/// Check the strong-bimonoid axioms and all non-`Unknown` flags against a
/// finite sample of elements. Total: returns the list of violations.
pub fn check_axioms(alg: &Algebra, samples: &[Weight]) -> Vec<Violation> {
    let mut out = Vec::new();
    let fmt = |w: &Weight| alg.format_weight(w);
    let mut report = |law: &str, tuple: &[&Weight]| {
        out.push(Violation {
            law: law.to_string(),
            counterexample: tuple.iter().map(|w| fmt(w)).collect(),
        });
    };
    let zero = alg.zero();
    let one = alg.one();
    if zero == one {
        report("0 ≠ 1", &[&zero]);
    }
    for a in samples {
        if alg.add(a, &zero) != *a {
            report("a ⊕ 0 = a", &[a]);
        }
        if alg.mul(a, &one) != *a || alg.mul(&one, a) != *a {
            report("a ⊗ 1 = 1 ⊗ a = a", &[a]);
        }
        if !alg.is_zero(&alg.mul(a, &zero)) || !alg.is_zero(&alg.mul(&zero, a)) {
            report("a ⊗ 0 = 0 ⊗ a = 0", &[a]);
        }
        for b in samples {
            if alg.add(a, b) != alg.add(b, a) {
                report("⊕ commutative", &[a, b]);
            }
            for c in samples {
                if alg.add(&alg.add(a, b), c) != alg.add(a, &alg.add(b, c)) {
                    report("⊕ associative", &[a, b, c]);
                }
                if alg.mul(&alg.mul(a, b), c) != alg.mul(a, &alg.mul(b, c)) {
                    report("⊗ associative", &[a, b, c]);
                }
            }
        }
    }

    let flags = alg.flags();
    check_flag(alg, samples, flags.commutative, "commutative", &mut out, |alg, t| {
        alg.mul(&t[0], &t[1]) == alg.mul(&t[1], &t[0])
    });
    check_flag(
        alg,
        samples,
        flags.left_distributive,
        "left distributive",
        &mut out,
        |alg, t| {
            alg.mul(&t[0], &alg.add(&t[1], &t[2]))
                == alg.add(&alg.mul(&t[0], &t[1]), &alg.mul(&t[0], &t[2]))
        },
    );
    check_flag(
        alg,
        samples,
        flags.right_distributive,
        "right distributive",
        &mut out,
        |alg, t| {
            alg.mul(&alg.add(&t[0], &t[1]), &t[2])
                == alg.add(&alg.mul(&t[0], &t[2]), &alg.mul(&t[1], &t[2]))
        },
    );
    check_flag(alg, samples, flags.idempotent, "idempotent", &mut out, |alg, t| {
        alg.add(&t[0], &t[0]) == t[0]
    });
    check_flag(alg, samples, flags.monotonic, "monotonic", &mut out, |alg, t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        if alg.leq(a, &alg.add(a, b)) != Some(true) {
            return false;
        }
        if !alg.is_zero(a) && !alg.is_zero(b) && !alg.is_zero(c) && !alg.is_one(b) {
            let lhs = alg.mul(a, c);
            let rhs = alg.mul(&alg.mul(a, b), c);
            return alg.leq(&lhs, &rhs) == Some(true) && lhs != rhs;
        }
        true
    });
    if flags.past_finite.is_true() {
        for b in samples {
            match alg.past(b) {
                None => {
                    out.push(Violation {
                        law: "past-finite: past(b) enumerable".into(),
                        counterexample: vec![fmt(b)],
                    });
                }
                Some(past) => {
                    for a in samples {
                        let in_past = past.contains(a);
                        if alg.leq(a, b) == Some(true) && !in_past
                            || alg.leq(a, b) == Some(false) && in_past
                        {
                            out.push(Violation {
                                law: "a ∈ past(b) ⟺ a ⪯ b".into(),
                                counterexample: vec![fmt(a), fmt(b)],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// For a `True` flag, report tuples where the law fails; for a `False`
/// flag, report a mismatch when no counterexample exists among the samples.
fn check_flag(
    alg: &Algebra,
    samples: &[Weight],
    flag: Flag,
    law: &str,
    out: &mut Vec<Violation>,
    holds: impl Fn(&Algebra, &[Weight; 3]) -> bool,
) {
    if flag == Flag::Unknown {
        return;
    }
    let mut counterexample = None;
    'outer: for a in samples {
        for b in samples {
            for c in samples {
                let t = [a.clone(), b.clone(), c.clone()];
                if !holds(alg, &t) {
                    counterexample = Some(t);
                    break 'outer;
                }
            }
        }
    }
    match (flag, counterexample) {
        (Flag::True, Some(t)) => out.push(Violation {
            law: format!("flag {law}=true"),
            counterexample: t.iter().map(|w| alg.format_weight(w)).collect(),
        }),
        (Flag::False, None) => out.push(Violation {
            law: format!("flag {law}=false but no counterexample among samples"),
            counterexample: vec![],
        }),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Weight {
        Weight::Nat(n)
    }

    #[test]
    fn arctic_ops() {
        let a = Algebra::arctic();
        assert_eq!(
            a.add(&Weight::Arctic(Some(3)), &Weight::Arctic(Some(5))),
            Weight::Arctic(Some(5))
        );
        assert_eq!(
            a.mul(&Weight::Arctic(Some(3)), &Weight::Arctic(Some(5))),
            Weight::Arctic(Some(8))
        );
        assert_eq!(a.zero(), Weight::Arctic(None));
        assert_eq!(a.one(), Weight::Arctic(Some(0)));
    }

    #[test]
    fn boolean_past() {
        let a = Algebra::boolean();
        assert_eq!(
            a.past(&Weight::Bool(true)).unwrap(),
            vec![Weight::Bool(false), Weight::Bool(true)]
        );
    }

    #[test]
    fn plusplus_ops() {
        let a = Algebra::plusplus();
        let z = a.zero();
        let x = Weight::PlusPlus(Some(7));
        assert_eq!(a.add(&z, &x), x);
        assert_eq!(a.mul(&z, &x), z);
        assert_eq!(
            a.mul(&Weight::PlusPlus(Some(2)), &Weight::PlusPlus(Some(3))),
            Weight::PlusPlus(Some(5))
        );
    }

    #[test]
    fn truncated_plus_saturates() {
        let a = Algebra::truncated_plus();
        assert_eq!(a.add(&nat(50), &nat(60)), nat(100));
        assert_eq!(a.add(&nat(150), &nat(7)), nat(150));
    }

    #[test]
    fn axioms_hold_on_arctic_samples() {
        let a = Algebra::arctic();
        let samples = vec![
            Weight::Arctic(None),
            Weight::Arctic(Some(0)),
            Weight::Arctic(Some(1)),
            Weight::Arctic(Some(2)),
        ];
        assert_eq!(check_axioms(&a, &samples), vec![]);
    }

    #[test]
    fn tropical_monotonicity_fails() {
        // min(1, 0) = 0 but 1 ⪯ 0 does not hold in the natural order
        let a = Algebra::tropical().with_flags(Flags {
            monotonic: Flag::True,
            ..Algebra::tropical().flags()
        });
        let samples = vec![
            Weight::Tropical(Some(0)),
            Weight::Tropical(Some(1)),
            Weight::Tropical(Some(2)),
        ];
        let violations = check_axioms(&a, &samples);
        assert!(violations.iter().any(|v| v.law == "flag monotonic=true"));
    }

    #[test]
    fn wrong_distributivity_flag_reported() {
        let a = Algebra::naturals().with_flags(Flags {
            left_distributive: Flag::False,
            ..Algebra::naturals().flags()
        });
        let samples = vec![nat(0), nat(1), nat(2), nat(3)];
        let violations = check_axioms(&a, &samples);
        assert!(violations
            .iter()
            .any(|v| v.law.contains("left distributive") && v.law.contains("false")));
    }

    #[test]
    fn additive_order_cases() {
        assert_eq!(
            additive_order(&Algebra::boolean(), &Weight::Bool(true), 10),
            AdditiveOrder::Finite { index: 1, period: 1 }
        );
        assert_eq!(
            additive_order(&Algebra::naturals(), &nat(1), 10),
            AdditiveOrder::Infinite
        );
        // 1·50 = 50, 2·50 = 100, 3·50 = 100
        assert_eq!(
            additive_order(&Algebra::truncated_plus(), &nat(50), 10),
            AdditiveOrder::Finite { index: 2, period: 1 }
        );
    }

    #[test]
    fn threshold_quotient() {
        let (q, h) = quotient(&Algebra::naturals(), QuotientKind::Threshold(2)).unwrap();
        assert_eq!(q.finite_carrier().unwrap().len(), 4);
        let two = h.map(&nat(2));
        let top = q.add(&two, &two);
        assert_eq!(top, h.map(&nat(17)));
        // homomorphism on sampled pairs
        for x in 0..6u64 {
            for y in 0..6u64 {
                assert_eq!(h.map(&nat(x + y)), q.add(&h.map(&nat(x)), &h.map(&nat(y))));
                assert_eq!(h.map(&nat(x * y)), q.mul(&h.map(&nat(x)), &h.map(&nat(y))));
            }
        }
    }

    #[test]
    fn modulo_one_rejected() {
        assert!(quotient(&Algebra::naturals(), QuotientKind::Modulo(1)).is_err());
    }

    #[test]
    fn pastcut_arctic() {
        let (q, h) = quotient(
            &Algebra::arctic(),
            QuotientKind::PastCut(Weight::Arctic(Some(2))),
        )
        .unwrap();
        // classes: {-inf}, {0}, {1}, {2}, C
        assert_eq!(q.finite_carrier().unwrap().len(), 5);
        let c1 = h.map(&Weight::Arctic(Some(1)));
        let c2 = h.map(&Weight::Arctic(Some(2)));
        let absorbed = q.mul(&c1, &c2); // 1 + 2 = 3 ∉ past(2)
        assert_eq!(absorbed, h.map(&Weight::Arctic(Some(3))));
        assert_ne!(absorbed, c2);
        // C is closed under ⊕ with anything and ⊗ with nonzero
        for x in [&c1, &c2, &absorbed] {
            assert_eq!(q.add(&absorbed, x), absorbed);
            assert_eq!(q.mul(&absorbed, x), absorbed);
        }
        assert_eq!(q.mul(&absorbed, &q.zero()), q.zero());
    }

    #[test]
    fn fset_order_by_injective_matching() {
        let a = Algebra::new(AlgebraKind::FSet);
        let s1: Weight = Weight::Set([1u64, 2].into_iter().collect());
        let s2: Weight = Weight::Set([2u64, 5].into_iter().collect());
        assert_eq!(a.leq(&s1, &s2), Some(true));
        assert_eq!(a.leq(&s2, &s1), Some(false));
    }

    #[test]
    fn flang_order_and_ops() {
        let a = Algebra::flang(vec!["a".into(), "b".into()]);
        let l1 = Weight::Lang(["ab".to_string()].into_iter().collect());
        let l2 = Weight::Lang(["aabb".to_string()].into_iter().collect());
        assert_eq!(a.leq(&l1, &l2), Some(true));
        assert_eq!(
            a.mul(&l1, &l2),
            Weight::Lang(["abaabb".to_string()].into_iter().collect())
        );
    }

    #[test]
    fn join_algebra_is_a_chain() {
        let a = Algebra::join();
        let p1 = Weight::Join(JoinValue::Plain(1));
        let q1 = Weight::Join(JoinValue::Primed(1));
        assert_eq!(a.add(&p1, &q1), q1);
        assert_eq!(a.mul(&p1, &q1), Weight::Join(JoinValue::Primed(2)));
        assert!(a.past(&q1).is_none());
    }

    #[test]
    fn weight_literals_round_trip() {
        let cases: Vec<(Algebra, Json)> = vec![
            (Algebra::arctic(), serde_json::json!("-inf")),
            (Algebra::arctic(), serde_json::json!(4)),
            (Algebra::naturals(), serde_json::json!(12)),
            (Algebra::boolean(), serde_json::json!(1)),
            (Algebra::plusplus(), serde_json::json!("zero")),
            (Algebra::join(), serde_json::json!("3'")),
            (
                Algebra::flang(vec!["x".into(), "y".into()]),
                serde_json::json!(["xy", "y"]),
            ),
        ];
        for (alg, lit) in cases {
            let w = alg.parse_weight(&lit).unwrap();
            let text = alg.format_weight(&w);
            let reparsed = alg.parse_weight(&Json::String(text.clone())).or_else(|_| {
                alg.parse_weight(&serde_json::from_str(&text).unwrap_or(Json::String(text)))
            });
            assert_eq!(reparsed.unwrap(), w);
        }
    }
}
