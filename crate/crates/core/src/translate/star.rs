//! Inverse elimination for basic inequations.
//!
//! While some joinand contains an inverse, take the first such joinand
//! `t_i = u x^-1 v` (`u` inverse-free), pick a fresh `y`, and replace
//!
//! ```text
//! s <= t_1 \/ ... \/ t_n
//! ```
//!
//! by
//!
//! ```text
//! x y s <= x y t_1 \/ ... \/ x y u y s \/ v \/ ... \/ x y t_n
//! ```
//!
//! Each step removes exactly one inverse letter, and validity over
//! ℓ-groups is preserved.

use alloc::vec::Vec;

use super::{BasicInequation, SimpleInequation};
use crate::terms::{FreshVars, GroupWord, Letter, MonoidWord, Var};

/// Which word replaces the eliminated joinand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StarVariant {
    /// `x y u y s`: the form obtained from product splitting.
    #[default]
    Chain,
    /// `x y u x s`.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTranslation {
    pub result: SimpleInequation,
    pub steps: usize,
    pub fresh: Vec<Var>,
}

pub fn star_translate(eps: &BasicInequation) -> SimpleInequation {
    star_translate_with(eps, StarVariant::Chain).result
}

pub fn star_translate_with(eps: &BasicInequation, variant: StarVariant) -> StarTranslation {
    let mut fresh = FreshVars::avoiding(eps.vars().iter());
    let mut lhs: GroupWord = eps.lhs().to_group_word();
    let mut rhs: Vec<GroupWord> = eps.rhs().to_vec();
    let mut steps = 0;

    while let Some(i) = rhs.iter().position(|t| t.inverse_count() > 0) {
        let letters = rhs[i].letters();
        let at = letters
            .iter()
            .position(|l| l.inverse)
            .expect("has an inverse");
        let x = letters[at].var.clone();
        let u: GroupWord = letters[..at].iter().cloned().collect();
        let v: GroupWord = letters[at + 1..].iter().cloned().collect();
        let y = fresh.next_var();
        let xy: GroupWord = [Letter::pos(x.clone()), Letter::pos(y.clone())]
            .into_iter()
            .collect();

        let middle = match variant {
            StarVariant::Chain => Letter::pos(y.clone()),
            StarVariant::Literal => Letter::pos(x.clone()),
        };
        let replaced = xy.mul(&u).mul(&GroupWord::from_iter([middle])).mul(&lhs);

        let mut next = Vec::with_capacity(rhs.len() + 1);
        for (j, t) in rhs.iter().enumerate() {
            if j == i {
                next.push(replaced.clone());
                next.push(v.clone());
            } else {
                next.push(xy.mul(t));
            }
        }
        lhs = xy.mul(&lhs);
        rhs = next;
        steps += 1;
    }

    let lhs = lhs.to_monoid_word().expect("left side stays inverse-free");
    let rhs: Vec<MonoidWord> = rhs
        .iter()
        .map(|t| t.to_monoid_word().expect("all inverses eliminated"))
        .collect();
    StarTranslation {
        result: SimpleInequation::new(lhs, rhs),
        steps,
        fresh: fresh.issued().to_vec(),
    }
}
