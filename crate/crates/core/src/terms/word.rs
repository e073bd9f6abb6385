//! Free-group and free-monoid words.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::{Term, Var};

/// A generator or its formal inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub var: Var,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(var: Var) -> Self {
        Letter {
            var,
            inverse: false,
        }
    }

    pub fn neg(var: Var) -> Self {
        Letter { var, inverse: true }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            var: self.var.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.var == other.var && self.inverse != other.inverse
    }
}

/// Cancel adjacent `x x^-1` / `x^-1 x` pairs until none remain.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> GroupWord {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last().is_some_and(|top| top.cancels(&l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    GroupWord(stack)
}

/// A freely reduced word; the normal form of an element of the free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        free_reduce(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(Letter::inverted).collect())
    }

    pub fn inverse_count(&self) -> usize {
        self.0.iter().filter(|l| l.inverse).count()
    }

    /// `Some` if the word has no inverse letters.
    pub fn to_monoid_word(&self) -> Option<MonoidWord> {
        self.0
            .iter()
            .map(|l| (!l.inverse).then(|| l.var.clone()))
            .collect::<Option<Vec<_>>>()
            .map(MonoidWord)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().map(|l| l.var.clone()).collect()
    }

    /// Symbol count of the word as a term (`e` has size 1).
    pub fn size(&self) -> usize {
        if self.0.is_empty() {
            1
        } else {
            2 * self.0.len() - 1 + self.inverse_count()
        }
    }

    pub fn to_term(&self) -> Term {
        Term::mul(self.0.iter().map(|l| {
            let v = Term::Var(l.var.clone());
            if l.inverse {
                Term::inv(v)
            } else {
                v
            }
        }))
    }

    /// Replace every generator by a word and reduce.
    pub fn substitute(&self, image: impl Fn(&Var) -> GroupWord) -> GroupWord {
        let mut letters = Vec::new();
        for l in &self.0 {
            let w = image(&l.var);
            if l.inverse {
                letters.extend(w.inverse().0);
            } else {
                letters.extend(w.0);
            }
        }
        free_reduce(letters)
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        free_reduce(iter)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_term(), f)
    }
}

/// A word in the free monoid; the empty word is `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidWord(Vec<Var>);

impl MonoidWord {
    pub fn new(vars: Vec<Var>) -> Self {
        MonoidWord(vars)
    }

    pub fn empty() -> Self {
        MonoidWord(Vec::new())
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.0.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        MonoidWord(v)
    }

    pub fn size(&self) -> usize {
        if self.0.is_empty() {
            1
        } else {
            2 * self.0.len() - 1
        }
    }

    pub fn to_group_word(&self) -> GroupWord {
        GroupWord(self.0.iter().cloned().map(Letter::pos).collect())
    }

    pub fn to_term(&self) -> Term {
        Term::mul(self.0.iter().cloned().map(Term::Var))
    }
}

impl FromIterator<Var> for MonoidWord {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        MonoidWord(iter.into_iter().collect())
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_term(), f)
    }
}

#[cfg(feature = "serde")]
fn parse_group_word(text: &str) -> crate::Result<GroupWord> {
    parse_word(text, super::Signature::Group, Term::to_group_word)
}

#[cfg(feature = "serde")]
fn parse_monoid_word(text: &str) -> crate::Result<MonoidWord> {
    parse_word(text, super::Signature::Monoid, Term::to_monoid_word)
}

#[cfg(feature = "serde")]
fn parse_word<W>(text: &str, sig: super::Signature, f: fn(&Term) -> Option<W>) -> crate::Result<W> {
    let t = super::parse_term(text, sig)?;
    f(&t).ok_or_else(|| crate::Error::Domain(alloc::format!("`{text}` is not a word")))
}

serde_via_display!(GroupWord, parse_group_word);
serde_via_display!(MonoidWord, parse_monoid_word);
