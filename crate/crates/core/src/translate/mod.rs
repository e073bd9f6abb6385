//! Translations between statement shapes.
//!
//! The three shapes consumed downstream are [`SimpleInequation`] (monoid words
//! on both sides), [`BasicInequation`] (monoid word on the left, group words on
//! the right) and [`Quasiequation`] (an implication between word equations).

mod basic;
mod reducts;
mod star;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

pub use basic::{
    ell_to_basic, ell_to_basic_with, split_to_basic, BasicTranslation, DEFAULT_TERM_BUDGET,
};
pub use reducts::{efree_wrap, strip_e, zero_simplify, zero_simplify_statement};
pub use star::{star_translate, star_translate_with, StarTranslation, StarVariant};

use crate::terms::{
    parse_statement, GroupWord, MonoidWord, Relation, Signature, Statement, Term, Var,
};
use crate::{Error, ParseError, Result};

fn dedup<T: PartialEq>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

/// `s <= t1 \/ ... \/ tn` with every side a monoid word. Joinands are kept
/// deduplicated in first-occurrence order and are never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleInequation {
    lhs: MonoidWord,
    rhs: Vec<MonoidWord>,
}

impl SimpleInequation {
    /// Panics if `rhs` is empty.
    pub fn new(lhs: MonoidWord, rhs: impl IntoIterator<Item = MonoidWord>) -> Self {
        let rhs = dedup(rhs);
        assert!(!rhs.is_empty(), "simple inequation needs a joinand");
        SimpleInequation { lhs, rhs }
    }

    pub fn lhs(&self) -> &MonoidWord {
        &self.lhs
    }

    pub fn rhs(&self) -> &[MonoidWord] {
        &self.rhs
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.lhs.var_set();
        for t in &self.rhs {
            vs.extend(t.vars().iter().cloned());
        }
        vs
    }

    pub fn to_statement(&self) -> Statement {
        Statement {
            relation: Relation::Le,
            lhs: self.lhs.to_term(),
            rhs: Term::join(self.rhs.iter().map(MonoidWord::to_term)),
            signature: Signature::Semiring,
        }
    }

    pub fn to_basic(&self) -> BasicInequation {
        BasicInequation::new(
            self.lhs.clone(),
            self.rhs.iter().map(MonoidWord::to_group_word),
        )
    }

    /// Reads `s <= t1 \/ ... \/ tn` where every side is a product of variables.
    pub fn from_statement(st: &Statement) -> Result<Self> {
        if st.relation != Relation::Le {
            return Err(Error::Domain(format!("`{st}` is not an inequation")));
        }
        let lhs = st
            .lhs
            .to_monoid_word()
            .ok_or_else(|| Error::Domain(format!("left side of `{st}` is not a monoid word")))?;
        let rhs = joinands(&st.rhs)
            .iter()
            .map(|t| t.to_monoid_word())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::Domain(format!(
                    "right side of `{st}` is not a join of monoid words"
                ))
            })?;
        Ok(SimpleInequation::new(lhs, rhs))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_statement(&parse_statement(text, Signature::Semiring)?)
    }

    pub fn size(&self) -> usize {
        self.to_statement().size()
    }
}

impl fmt::Display for SimpleInequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_statement(), f)
    }
}

pub(crate) fn joinands(t: &Term) -> Vec<Term> {
    match t {
        Term::Join(ts) => ts.clone(),
        other => alloc::vec![other.clone()],
    }
}

/// `s <= t1 \/ ... \/ tn` with `s` a monoid word and each `ti` a freely
/// reduced group word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicInequation {
    lhs: MonoidWord,
    rhs: Vec<GroupWord>,
}

impl BasicInequation {
    /// Panics if `rhs` is empty.
    pub fn new(lhs: MonoidWord, rhs: impl IntoIterator<Item = GroupWord>) -> Self {
        let rhs = dedup(rhs);
        assert!(!rhs.is_empty(), "basic inequation needs a joinand");
        BasicInequation { lhs, rhs }
    }

    /// `e <= t1 \/ ... \/ tn`.
    pub fn positive(rhs: impl IntoIterator<Item = GroupWord>) -> Self {
        Self::new(MonoidWord::empty(), rhs)
    }

    pub fn lhs(&self) -> &MonoidWord {
        &self.lhs
    }

    pub fn rhs(&self) -> &[GroupWord] {
        &self.rhs
    }

    pub fn inverse_count(&self) -> usize {
        self.rhs.iter().map(GroupWord::inverse_count).sum()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.lhs.var_set();
        for t in &self.rhs {
            vs.extend(t.vars());
        }
        vs
    }

    /// `Some` when no joinand contains an inverse.
    pub fn to_simple(&self) -> Option<SimpleInequation> {
        let rhs = self
            .rhs
            .iter()
            .map(GroupWord::to_monoid_word)
            .collect::<Option<Vec<_>>>()?;
        Some(SimpleInequation::new(self.lhs.clone(), rhs))
    }

    /// The reduced words `w_i = s^-1 t_i`; the inequation holds in an ℓ-group
    /// exactly when `e <= w_1 \/ ... \/ w_n` does (conjugate of `t_i s^-1`).
    pub fn normalized_joinands(&self) -> Vec<GroupWord> {
        let s_inv = self.lhs.to_group_word().inverse();
        self.rhs.iter().map(|t| s_inv.mul(t)).collect()
    }

    pub fn to_statement(&self) -> Statement {
        Statement {
            relation: Relation::Le,
            lhs: self.lhs.to_term(),
            rhs: Term::join(self.rhs.iter().map(GroupWord::to_term)),
            signature: Signature::Lgroup,
        }
    }

    pub fn from_statement(st: &Statement) -> Result<Self> {
        if st.relation != Relation::Le {
            return Err(Error::Domain(format!("`{st}` is not an inequation")));
        }
        let lhs = st
            .lhs
            .to_monoid_word()
            .ok_or_else(|| Error::Domain(format!("left side of `{st}` is not a monoid word")))?;
        let rhs = joinands(&st.rhs)
            .iter()
            .map(Term::to_group_word)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::Domain(format!("right side of `{st}` is not a join of group words"))
            })?;
        Ok(BasicInequation::new(lhs, rhs))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_statement(&parse_statement(text, Signature::Lgroup)?)
    }

    pub fn size(&self) -> usize {
        self.to_statement().size()
    }
}

impl fmt::Display for BasicInequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_statement(), f)
    }
}

serde_via_display!(SimpleInequation, SimpleInequation::parse);
serde_via_display!(BasicInequation, BasicInequation::parse);

/// An equation between two monoid words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordEquation {
    pub lhs: MonoidWord,
    pub rhs: MonoidWord,
}

impl WordEquation {
    pub fn new(lhs: MonoidWord, rhs: MonoidWord) -> Self {
        WordEquation { lhs, rhs }
    }
}

impl fmt::Display for WordEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `premises => conclusion` over monoid words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quasiequation {
    pub premises: Vec<WordEquation>,
    pub conclusion: WordEquation,
}

impl Quasiequation {
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = BTreeSet::new();
        for eq in self
            .premises
            .iter()
            .chain(core::iter::once(&self.conclusion))
        {
            vs.extend(eq.lhs.vars().iter().cloned());
            vs.extend(eq.rhs.vars().iter().cloned());
        }
        vs
    }

    /// Parses `s1 = t1, s2 = t2 => s = t`; the premise list may be empty
    /// (`=> s = t`).
    pub fn parse(text: &str) -> Result<Self> {
        let arrow = text.find("=>").ok_or_else(|| ParseError {
            position: text.len(),
            message: "expected `=>`".to_string(),
        })?;
        let word_eq = |part: &str, offset: usize| -> Result<WordEquation> {
            let st = parse_statement(part, Signature::Monoid).map_err(|e| match e {
                Error::Parse(p) => Error::Parse(ParseError {
                    position: p.position + offset,
                    message: p.message,
                }),
                other => other,
            })?;
            if st.relation != Relation::Eq {
                return Err(Error::Domain(format!("`{st}` is not an equation")));
            }
            // Monoid-signature terms always denote monoid words.
            Ok(WordEquation::new(
                st.lhs.to_monoid_word().expect("monoid term"),
                st.rhs.to_monoid_word().expect("monoid term"),
            ))
        };
        let (before, after) = (&text[..arrow], &text[arrow + 2..]);
        let mut premises = Vec::new();
        let mut offset = 0;
        if !before.trim().is_empty() {
            for part in before.split(',') {
                premises.push(word_eq(part, offset)?);
                offset += part.len() + 1;
            }
        }
        let conclusion = word_eq(after, arrow + 2)?;
        Ok(Quasiequation {
            premises,
            conclusion,
        })
    }
}

impl fmt::Display for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "=> {}", self.conclusion)
    }
}

/// Join-of-words normal form of a semiring term, distributing products over joins.
pub(crate) fn monoid_dnf(t: &Term) -> Result<Vec<MonoidWord>> {
    Ok(match t {
        Term::Var(v) => alloc::vec![MonoidWord::new(alloc::vec![v.clone()])],
        Term::One => alloc::vec![MonoidWord::empty()],
        Term::Mul(ts) => {
            let mut acc = alloc::vec![MonoidWord::empty()];
            for f in ts {
                let rhs = monoid_dnf(f)?;
                acc = dedup(
                    acc.iter()
                        .flat_map(|a| rhs.iter().map(move |b| a.concat(b))),
                );
            }
            acc
        }
        Term::Join(ts) => {
            let mut acc = Vec::new();
            for c in ts {
                acc.extend(monoid_dnf(c)?);
            }
            dedup(acc)
        }
        other => {
            return Err(Error::OutsideSignature {
                symbol: match other {
                    Term::Zero => "0",
                    Term::Meet(_) => "/\\",
                    _ => "^-1",
                }
                .to_string(),
                signature: Signature::Semiring.name().to_string(),
            })
        }
    })
}

/// Split a semiring statement into simple inequations: `=` becomes two `<=`,
/// products are distributed over joins, and left-hand joins are split.
pub fn to_simple(st: &Statement) -> Result<Vec<SimpleInequation>> {
    if !st.signature.is_subsignature_of(Signature::Semiring) {
        return Err(Error::SignatureMismatch(format!(
            "expected a semiring statement, got {}",
            st.signature
        )));
    }
    let lhs = monoid_dnf(&st.lhs)?;
    let rhs = monoid_dnf(&st.rhs)?;
    let mut sides = alloc::vec![(&lhs, &rhs)];
    if st.relation == Relation::Eq {
        sides.push((&rhs, &lhs));
    }
    Ok(dedup(sides.into_iter().flat_map(|(l, r)| {
        l.iter()
            .map(move |s| SimpleInequation::new(s.clone(), r.iter().cloned()))
    })))
}

/// Every variable of the left side occurs in some joinand.
pub fn is_left_regular(eps: &SimpleInequation) -> bool {
    let right: BTreeSet<&Var> = eps.rhs.iter().flat_map(|t| t.vars()).collect();
    eps.lhs.vars().iter().all(|v| right.contains(v))
}

/// Every variable of every joinand occurs on the left side.
pub fn is_right_regular(eps: &SimpleInequation) -> bool {
    let left = eps.lhs.var_set();
    eps.rhs
        .iter()
        .all(|t| t.vars().iter().all(|v| left.contains(v)))
}

/// Drop every joinand that mentions a variable absent from the left side.
/// `None` when nothing is left.
pub fn right_regularize(eps: &SimpleInequation) -> Option<SimpleInequation> {
    let left = eps.lhs.var_set();
    let kept: Vec<MonoidWord> = eps
        .rhs
        .iter()
        .filter(|t| t.vars().iter().all(|v| left.contains(v)))
        .cloned()
        .collect();
    (!kept.is_empty()).then(|| SimpleInequation {
        lhs: eps.lhs.clone(),
        rhs: kept,
    })
}

/// `{t1 = t2, ..., t1 = tn} => t1 = s`.
pub fn to_quasiequation(eps: &SimpleInequation) -> Quasiequation {
    let first = &eps.rhs[0];
    Quasiequation {
        premises: eps.rhs[1..]
            .iter()
            .map(|t| WordEquation::new(first.clone(), t.clone()))
            .collect(),
        conclusion: WordEquation::new(first.clone(), eps.lhs.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn simple(s: &str) -> SimpleInequation {
        SimpleInequation::parse(s).unwrap()
    }

    fn st(s: &str) -> Statement {
        parse_statement(s, Signature::Semiring).unwrap()
    }

    #[test]
    fn to_simple_splits_equation() {
        let out = to_simple(&st("x \\/ e = e")).unwrap();
        assert_eq!(
            out,
            vec![simple("x <= e"), simple("e <= e"), simple("e <= x \\/ e")]
        );
    }

    #[test]
    fn to_simple_distributes() {
        let out = to_simple(&st("e <= x*(y \\/ z)")).unwrap();
        assert_eq!(out, vec![simple("e <= x*y \\/ x*z")]);
        assert_eq!(to_simple(&st("x <= x")).unwrap(), vec![simple("x <= x")]);
    }

    #[test]
    fn to_simple_rejects_group_statements() {
        let g = parse_statement("x <= y^-1", Signature::Lgroup).unwrap();
        assert!(to_simple(&g).is_err());
    }

    #[test]
    fn left_regularity() {
        assert!(is_left_regular(&simple("x <= e \\/ x^2")));
        assert!(!is_left_regular(&simple("x*y <= y")));
        assert!(is_left_regular(&simple("e <= x")));
    }

    #[test]
    fn right_regularization() {
        assert_eq!(
            right_regularize(&simple("x <= x \\/ y")),
            Some(simple("x <= x"))
        );
        assert_eq!(right_regularize(&simple("x <= y")), None);
        let w = simple("x <= e \\/ x^2");
        assert_eq!(right_regularize(&w), Some(w.clone()));
        assert!(is_right_regular(&w));
    }

    #[test]
    fn quasiequation_translation() {
        assert_eq!(
            to_quasiequation(&simple("x <= e \\/ x^2")).to_string(),
            "e = x^2 => e = x"
        );
        assert_eq!(to_quasiequation(&simple("x <= y")).to_string(), "=> y = x");
        assert_eq!(
            to_quasiequation(&simple("e <= x \\/ y")).to_string(),
            "x = y => x = e"
        );
    }

    #[test]
    fn quasiequation_parse_round_trip() {
        for text in ["e = x^2 => e = x", "=> y = x", "x = y, x = z => x*y = e"] {
            let q = Quasiequation::parse(text).unwrap();
            assert_eq!(q.to_string(), text);
        }
        assert!(Quasiequation::parse("x = y").is_err());
        assert!(Quasiequation::parse("x <= y => x = y").is_err());
    }

    #[test]
    fn basic_inequation_accessors() {
        let b = BasicInequation::parse("x <= y^-1*x \\/ e").unwrap();
        assert_eq!(b.inverse_count(), 1);
        assert_eq!(b.to_string(), "x <= y^-1*x \\/ e");
        assert!(b.to_simple().is_none());
        assert!(BasicInequation::parse("x^-1 <= y").is_err());
    }
}
