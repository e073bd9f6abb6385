//! Signatures, terms, statements and free-word normal forms.

mod parse;
mod print;
mod word;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use parse::{parse, parse_statement, parse_term, Parsed};
pub use word::{free_reduce, GroupWord, Letter, MonoidWord};

use crate::{Error, Result};

/// Operation symbols that may occur in a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Mul,
    One,
    Zero,
    Join,
    Meet,
    Inv,
}

impl Op {
    /// The ASCII spelling used by the parser and printer.
    pub fn symbol(self) -> &'static str {
        match self {
            Op::Mul => "*",
            Op::One => "e",
            Op::Zero => "0",
            Op::Join => "\\/",
            Op::Meet => "/\\",
            Op::Inv => "^-1",
        }
    }
}

/// The five signatures terms can be declared in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Signature {
    Monoid,
    Group,
    Semiring,
    Semiring0,
    Lgroup,
}

impl Signature {
    pub const ALL: [Signature; 5] = [
        Signature::Monoid,
        Signature::Group,
        Signature::Semiring,
        Signature::Semiring0,
        Signature::Lgroup,
    ];

    pub fn ops(self) -> &'static [Op] {
        match self {
            Signature::Monoid => &[Op::Mul, Op::One],
            Signature::Group => &[Op::Mul, Op::One, Op::Inv],
            Signature::Semiring => &[Op::Mul, Op::One, Op::Join],
            Signature::Semiring0 => &[Op::Mul, Op::One, Op::Join, Op::Zero],
            Signature::Lgroup => &[Op::Mul, Op::One, Op::Inv, Op::Join, Op::Meet],
        }
    }

    pub fn allows(self, op: Op) -> bool {
        self.ops().contains(&op)
    }

    /// Every symbol of `self` is also a symbol of `other`.
    pub fn is_subsignature_of(self, other: Signature) -> bool {
        self.ops().iter().all(|&op| other.allows(op))
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Monoid => "monoid",
            Signature::Group => "group",
            Signature::Semiring => "semiring",
            Signature::Semiring0 => "semiring0",
            Signature::Lgroup => "lgroup",
        }
    }

    pub fn check(self, op: Op) -> Result<()> {
        if self.allows(op) {
            Ok(())
        } else {
            Err(Error::OutsideSignature {
                symbol: op.symbol().to_string(),
                signature: self.name().to_string(),
            })
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Signature::ALL
            .into_iter()
            .find(|sig| sig.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown signature `{s}`")))
    }
}

/// A variable name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

/// Prefix of machine-generated variables. User identifiers cannot start with `_`.
pub const FRESH_PREFIX: &str = "_f";

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    /// The `index`-th reserved fresh variable, `_f<index>`.
    pub fn fresh(index: u32) -> Self {
        Var::new(&format!("{FRESH_PREFIX}{index}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `Some(n)` when this is the reserved variable `_f<n>`.
    pub fn fresh_index(&self) -> Option<u32> {
        self.0.strip_prefix(FRESH_PREFIX)?.parse().ok()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <alloc::string::String as serde::Deserialize>::deserialize(d)?;
        Ok(Var::new(&s))
    }
}

/// Deterministic supply of reserved fresh variables, starting above every
/// `_f<n>` already present in the input.
#[derive(Debug, Clone)]
pub struct FreshVars {
    next: u32,
    issued: Vec<Var>,
}

impl FreshVars {
    pub fn avoiding<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Self {
        let next = vars
            .into_iter()
            .filter_map(Var::fresh_index)
            .max()
            .map_or(1, |n| n + 1);
        FreshVars {
            next,
            issued: Vec::new(),
        }
    }

    pub fn next_var(&mut self) -> Var {
        let v = Var::fresh(self.next);
        self.next += 1;
        self.issued.push(v.clone());
        v
    }

    /// Every variable handed out so far, in order.
    pub fn issued(&self) -> &[Var] {
        &self.issued
    }
}

/// A term. Build compound terms with [`Term::mul`], [`Term::join`], [`Term::meet`]
/// and [`Term::inv`] so that products and lattice operations are flattened and
/// joins/meets are deduplicated; `Mul`, `Join` and `Meet` always have at least two
/// children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    One,
    Zero,
    Mul(Vec<Term>),
    Join(Vec<Term>),
    Meet(Vec<Term>),
    Inv(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    /// Flattened product; the empty product is `e`.
    pub fn mul(factors: impl IntoIterator<Item = Term>) -> Term {
        let mut out = Vec::new();
        for f in factors {
            match f {
                Term::Mul(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Term::One,
            1 => out.pop().unwrap(),
            _ => Term::Mul(out),
        }
    }

    /// Flattened, deduplicated join. Panics on an empty iterator.
    pub fn join(parts: impl IntoIterator<Item = Term>) -> Term {
        Self::lattice(parts, true)
    }

    /// Flattened, deduplicated meet. Panics on an empty iterator.
    pub fn meet(parts: impl IntoIterator<Item = Term>) -> Term {
        Self::lattice(parts, false)
    }

    fn lattice(parts: impl IntoIterator<Item = Term>, join: bool) -> Term {
        let mut out: Vec<Term> = Vec::new();
        let push = |t: Term, out: &mut Vec<Term>| {
            if !out.contains(&t) {
                out.push(t);
            }
        };
        for p in parts {
            match (p, join) {
                (Term::Join(inner), true) | (Term::Meet(inner), false) => {
                    for t in inner {
                        push(t, &mut out);
                    }
                }
                (other, _) => push(other, &mut out),
            }
        }
        assert!(!out.is_empty(), "empty lattice combination");
        if out.len() == 1 {
            out.pop().unwrap()
        } else if join {
            Term::Join(out)
        } else {
            Term::Meet(out)
        }
    }

    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    /// Symbol-occurrence count: every variable, constant and operation symbol
    /// counts once, with n-ary products and lattice operations counted as n-1
    /// binary symbols.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::One | Term::Zero => 1,
            Term::Mul(ts) | Term::Join(ts) | Term::Meet(ts) => {
                ts.iter().map(Term::size).sum::<usize>() + ts.len() - 1
            }
            Term::Inv(t) => 1 + t.size(),
        }
    }

    pub fn ops(&self) -> BTreeSet<Op> {
        let mut ops = BTreeSet::new();
        self.collect_ops(&mut ops);
        ops
    }

    fn collect_ops(&self, ops: &mut BTreeSet<Op>) {
        match self {
            Term::Var(_) => {}
            Term::One => {
                ops.insert(Op::One);
            }
            Term::Zero => {
                ops.insert(Op::Zero);
            }
            Term::Mul(ts) | Term::Join(ts) | Term::Meet(ts) => {
                ops.insert(match self {
                    Term::Mul(_) => Op::Mul,
                    Term::Join(_) => Op::Join,
                    _ => Op::Meet,
                });
                ts.iter().for_each(|t| t.collect_ops(ops));
            }
            Term::Inv(t) => {
                ops.insert(Op::Inv);
                t.collect_ops(ops);
            }
        }
    }

    /// Fails with the first symbol outside `sig`.
    pub fn check_signature(&self, sig: Signature) -> Result<()> {
        self.ops().into_iter().try_for_each(|op| sig.check(op))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = BTreeSet::new();
        self.collect_vars(&mut vs);
        vs
    }

    pub(crate) fn collect_vars(&self, vs: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                vs.insert(v.clone());
            }
            Term::One | Term::Zero => {}
            Term::Mul(ts) | Term::Join(ts) | Term::Meet(ts) => {
                ts.iter().for_each(|t| t.collect_vars(vs))
            }
            Term::Inv(t) => t.collect_vars(vs),
        }
    }

    /// Homomorphic replacement of variables; variables outside `map` are kept.
    /// The result is rebuilt through the smart constructors, so joins and meets
    /// are re-deduplicated but units are not removed.
    pub fn substitute(&self, map: &BTreeMap<Var, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::One | Term::Zero => self.clone(),
            Term::Mul(ts) => Term::mul(ts.iter().map(|t| t.substitute(map))),
            Term::Join(ts) => Term::join(ts.iter().map(|t| t.substitute(map))),
            Term::Meet(ts) => Term::meet(ts.iter().map(|t| t.substitute(map))),
            Term::Inv(t) => Term::inv(t.substitute(map)),
        }
    }

    /// The free-group element denoted by a group term (`None` if the term uses
    /// lattice operations or `0`).
    pub fn to_group_word(&self) -> Option<GroupWord> {
        let mut letters = Vec::new();
        self.push_group_letters(false, &mut letters)?;
        Some(free_reduce(letters))
    }

    fn push_group_letters(&self, inverted: bool, out: &mut Vec<Letter>) -> Option<()> {
        match self {
            Term::Var(v) => out.push(Letter {
                var: v.clone(),
                inverse: inverted,
            }),
            Term::One => {}
            Term::Mul(ts) => {
                if inverted {
                    for t in ts.iter().rev() {
                        t.push_group_letters(true, out)?;
                    }
                } else {
                    for t in ts {
                        t.push_group_letters(false, out)?;
                    }
                }
            }
            Term::Inv(t) => t.push_group_letters(!inverted, out)?,
            Term::Zero | Term::Join(_) | Term::Meet(_) => return None,
        }
        Some(())
    }

    /// The free-monoid element denoted by a monoid term.
    pub fn to_monoid_word(&self) -> Option<MonoidWord> {
        let mut vars = Vec::new();
        self.push_monoid_vars(&mut vars)?;
        Some(MonoidWord::new(vars))
    }

    fn push_monoid_vars(&self, out: &mut Vec<Var>) -> Option<()> {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::One => {}
            Term::Mul(ts) => {
                for t in ts {
                    t.push_monoid_vars(out)?;
                }
            }
            _ => return None,
        }
        Some(())
    }
}

/// `=` or `<=`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Le,
}

/// An equation `s = t` or an inequation `s <= t` (which abbreviates
/// `s \/ t = t`), with both sides in one declared signature.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    pub relation: Relation,
    pub lhs: Term,
    pub rhs: Term,
    pub signature: Signature,
}

impl Statement {
    pub fn new(relation: Relation, lhs: Term, rhs: Term, signature: Signature) -> Result<Self> {
        if relation == Relation::Le && !signature.allows(Op::Join) {
            return Err(Error::OutsideSignature {
                symbol: "<=".to_string(),
                signature: signature.name().to_string(),
            });
        }
        lhs.check_signature(signature)?;
        rhs.check_signature(signature)?;
        Ok(Statement {
            relation,
            lhs,
            rhs,
            signature,
        })
    }

    pub fn equation(lhs: Term, rhs: Term, signature: Signature) -> Result<Self> {
        Self::new(Relation::Eq, lhs, rhs, signature)
    }

    pub fn inequation(lhs: Term, rhs: Term, signature: Signature) -> Result<Self> {
        Self::new(Relation::Le, lhs, rhs, signature)
    }

    /// The equation this statement stands for: `s <= t` becomes `s \/ t = t`.
    pub fn as_equation(&self) -> (Term, Term) {
        match self.relation {
            Relation::Eq => (self.lhs.clone(), self.rhs.clone()),
            Relation::Le => (
                Term::join([self.lhs.clone(), self.rhs.clone()]),
                self.rhs.clone(),
            ),
        }
    }

    /// Sum of both sides' sizes; the relation symbol is not counted.
    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.lhs.vars();
        self.rhs.collect_vars(&mut vs);
        vs
    }

    pub fn substitute(&self, map: &BTreeMap<Var, Term>) -> Result<Statement> {
        for image in map.values() {
            image.check_signature(self.signature).map_err(|e| {
                Error::SignatureMismatch(format!("substitution image {image}: {e}"))
            })?;
        }
        Ok(Statement {
            relation: self.relation,
            lhs: self.lhs.substitute(map),
            rhs: self.rhs.substitute(map),
            signature: self.signature,
        })
    }

    /// Same statement, re-declared in a larger signature.
    pub fn widen(&self, signature: Signature) -> Result<Statement> {
        Statement::new(self.relation, self.lhs.clone(), self.rhs.clone(), signature)
    }
}
