//! Reduction of arbitrary ℓ-group statements to basic inequations.
//!
//! Each `<=` (an `=` gives two) is brought to the shape
//!
//! ```text
//! /\_i \/_j s_ij  <=  \/_k /\_l J_kl        (J_kl a join of group words)
//! ```
//!
//! either by reading it off syntactically or, failing that, by full
//! lattice normalisation. A single group word `s` on the left is moved across,
//! giving `e <= \/_k /\_l J_kl s^-1`; otherwise a product split with a fresh
//! `y` gives `e <= \/_k /\_l J_kl y  \/  \/_i /\_j y^-1 s_ij^-1`. Every meet
//! block `A_1 /\ ... /\ A_m` is then eliminated with fresh `y_1 .. y_{m-1}`:
//!
//! ```text
//! A_1 y_1 \/ A_2 y_1^-1 y_2 \/ ... \/ A_m y_1^-1 ... y_{m-1}^-1
//! ```

use alloc::format;
use alloc::vec::Vec;

use super::{dedup, BasicInequation};
use crate::terms::{
    FreshVars, GroupWord, Letter, MonoidWord, Relation, Signature, Statement, Term, Var,
};
use crate::{Error, Result};

/// Default cap on the number of words produced by lattice normalisation.
pub const DEFAULT_TERM_BUDGET: usize = 100_000;

/// A join of group words.
type Join = Vec<GroupWord>;
/// A meet of joins.
type Block = Vec<Join>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicTranslation {
    pub outputs: Vec<BasicInequation>,
    pub fresh: Vec<Var>,
    /// Whether every inequation was already in the meet-of-joins / join-of-meets shape.
    pub shaped: bool,
}

pub fn ell_to_basic(st: &Statement) -> Result<Vec<BasicInequation>> {
    ell_to_basic_with(st, DEFAULT_TERM_BUDGET).map(|t| t.outputs)
}

pub fn ell_to_basic_with(st: &Statement, budget: usize) -> Result<BasicTranslation> {
    if !st.signature.is_subsignature_of(Signature::Lgroup) {
        return Err(Error::SignatureMismatch(format!(
            "expected an lgroup statement, got {}",
            st.signature
        )));
    }
    let mut fresh = FreshVars::avoiding(st.vars().iter());
    let mut sides = alloc::vec![(&st.lhs, &st.rhs)];
    if st.relation == Relation::Eq {
        sides.push((&st.rhs, &st.lhs));
    }
    let mut outputs = Vec::new();
    let mut shaped = true;
    for (l, r) in sides {
        let (lhs, rhs) = match (lhs_shape(l), rhs_shape(r)) {
            (Some(lhs), Some(rhs)) => (lhs, rhs),
            _ => {
                shaped = false;
                let mut words = 0;
                let lhs = cnf(l, budget, &mut words)?;
                let rhs = dnf(r, budget, &mut words)?
                    .into_iter()
                    .map(|meet| meet.into_iter().map(|w| alloc::vec![w]).collect())
                    .collect();
                (lhs, rhs)
            }
        };
        outputs.push(reduce_shaped(lhs, rhs, &mut fresh));
    }
    Ok(BasicTranslation {
        outputs: dedup(outputs),
        fresh: fresh.issued().to_vec(),
        shaped,
    })
}

/// Basic inequations equivalid with `st` and free of fresh variables. Each
/// side is normalised (the left to a join of meets, the right to a meet of
/// joins) and split pointwise; a piece `s_1 /\ ... /\ s_m <= t_1 \/ ... \/ t_n`
/// becomes `e <= \/_jk t_k s_j^-1`. The normal forms can be exponentially
/// large; `budget` caps the number of words produced.
pub fn split_to_basic(st: &Statement, budget: usize) -> Result<Vec<BasicInequation>> {
    if !st.signature.is_subsignature_of(Signature::Lgroup) {
        return Err(Error::SignatureMismatch(format!(
            "expected an lgroup statement, got {}",
            st.signature
        )));
    }
    let mut sides = alloc::vec![(&st.lhs, &st.rhs)];
    if st.relation == Relation::Eq {
        sides.push((&st.rhs, &st.lhs));
    }
    let mut words = 0;
    let mut out = Vec::new();
    for (l, r) in sides {
        let meets = dnf(l, budget, &mut words)?;
        let joins = cnf(r, budget, &mut words)?;
        for m in &meets {
            for j in &joins {
                word_budget(&mut words, m.len() * j.len(), budget)?;
                let single = match m.as_slice() {
                    [s] => s.to_monoid_word(),
                    _ => None,
                };
                out.push(match single {
                    Some(s) => BasicInequation::new(s, j.iter().cloned()),
                    None => BasicInequation::new(
                        MonoidWord::empty(),
                        m.iter().flat_map(|s| {
                            let s_inv = s.inverse();
                            j.iter().map(move |t| t.mul(&s_inv))
                        }),
                    ),
                });
            }
        }
    }
    Ok(dedup(out))
}

fn group_word(t: &Term) -> Option<GroupWord> {
    t.to_group_word()
}

/// A join of group terms (possibly a single term).
fn join_shape(t: &Term) -> Option<Join> {
    match t {
        Term::Join(ts) => ts.iter().map(group_word).collect(),
        other => Some(alloc::vec![group_word(other)?]),
    }
}

/// `/\_i \/_j s_ij`
fn lhs_shape(t: &Term) -> Option<Vec<Join>> {
    match t {
        Term::Meet(ts) => ts.iter().map(join_shape).collect(),
        other => Some(alloc::vec![join_shape(other)?]),
    }
}

/// `\/_k /\_l J_kl`
fn rhs_shape(t: &Term) -> Option<Vec<Block>> {
    let block = |b: &Term| -> Option<Block> {
        match b {
            Term::Meet(ts) => ts.iter().map(join_shape).collect(),
            other => Some(alloc::vec![join_shape(other)?]),
        }
    };
    match t {
        Term::Join(ts) => ts.iter().map(block).collect(),
        other => Some(alloc::vec![block(other)?]),
    }
}

fn word_budget(words: &mut usize, add: usize, budget: usize) -> Result<()> {
    *words += add;
    if *words > budget {
        Err(Error::Budget {
            resource: "term",
            limit: budget as u64,
        })
    } else {
        Ok(())
    }
}

/// Join-of-meets normal form. Products distribute over both lattice operations
/// and inverses turn joins into meets.
fn dnf(t: &Term, budget: usize, words: &mut usize) -> Result<Vec<Vec<GroupWord>>> {
    Ok(match t {
        Term::Var(v) => alloc::vec![alloc::vec![GroupWord::from_iter([Letter::pos(v.clone())])]],
        Term::One => alloc::vec![alloc::vec![GroupWord::identity()]],
        Term::Zero => {
            return Err(Error::OutsideSignature {
                symbol: "0".into(),
                signature: "lgroup".into(),
            })
        }
        Term::Join(ts) => {
            let mut acc = Vec::new();
            for c in ts {
                acc.extend(dnf(c, budget, words)?);
            }
            dedup(acc)
        }
        Term::Meet(ts) => {
            let mut acc: Vec<Vec<GroupWord>> = alloc::vec![Vec::new()];
            for c in ts {
                let d = dnf(c, budget, words)?;
                let mut next = Vec::new();
                for a in &acc {
                    for b in &d {
                        word_budget(words, a.len() + b.len(), budget)?;
                        next.push(dedup(a.iter().chain(b.iter()).cloned()));
                    }
                }
                acc = dedup(next);
            }
            acc
        }
        Term::Mul(ts) => {
            let mut acc: Vec<Vec<GroupWord>> = alloc::vec![alloc::vec![GroupWord::identity()]];
            for c in ts {
                let d = dnf(c, budget, words)?;
                let mut next = Vec::new();
                for a in &acc {
                    for b in &d {
                        word_budget(words, a.len() * b.len(), budget)?;
                        next.push(dedup(
                            a.iter().flat_map(|u| b.iter().map(move |v| u.mul(v))),
                        ));
                    }
                }
                acc = dedup(next);
            }
            acc
        }
        Term::Inv(c) => {
            // (\/_k /\ B_k)^-1 = /\_k \/ B_k^-1, redistributed into a join of meets.
            let d = dnf(c, budget, words)?;
            let mut acc: Vec<Vec<GroupWord>> = alloc::vec![Vec::new()];
            for block in &d {
                let mut next = Vec::new();
                for a in &acc {
                    for w in block {
                        word_budget(words, a.len() + 1, budget)?;
                        let mut m = a.clone();
                        let inv = w.inverse();
                        if !m.contains(&inv) {
                            m.push(inv);
                        }
                        next.push(m);
                    }
                }
                acc = dedup(next);
            }
            acc
        }
    })
}

/// Meet-of-joins normal form, by duality: `t = (t^-1)^-1`.
fn cnf(t: &Term, budget: usize, words: &mut usize) -> Result<Vec<Vec<GroupWord>>> {
    let d = dnf(&Term::inv(t.clone()), budget, words)?;
    Ok(d.into_iter()
        .map(|block| block.iter().map(GroupWord::inverse).collect())
        .collect())
}

fn word_of(letters: impl IntoIterator<Item = Letter>) -> GroupWord {
    letters.into_iter().collect()
}

fn reduce_shaped(lhs: Vec<Join>, rhs: Vec<Block>, fresh: &mut FreshVars) -> BasicInequation {
    match lhs.as_slice() {
        [only] if only.len() == 1 => reduce_word(&only[0], rhs, fresh),
        _ => {
            let y = fresh.next_var();
            let y_pos = word_of([Letter::pos(y.clone())]);
            let y_neg = word_of([Letter::neg(y)]);
            let mut blocks: Vec<Block> = rhs
                .into_iter()
                .map(|b| {
                    b.into_iter()
                        .map(|j| j.iter().map(|w| w.mul(&y_pos)).collect())
                        .collect()
                })
                .collect();
            for join in lhs {
                blocks.push(
                    join.iter()
                        .map(|s| alloc::vec![y_neg.mul(&s.inverse())])
                        .collect(),
                );
            }
            eliminate_meets(blocks, fresh)
        }
    }
}

/// `s <= \/_k /\_l J_kl` for a single group word `s`.
fn reduce_word(s: &GroupWord, rhs: Vec<Block>, fresh: &mut FreshVars) -> BasicInequation {
    if let Some(s_word) = s.to_monoid_word() {
        if rhs.iter().all(|b| b.len() == 1) {
            return BasicInequation::new(
                s_word,
                rhs.into_iter().flat_map(|mut b| b.pop().unwrap()),
            );
        }
    }
    // e <= \/ /\ J s^-1
    let s_inv = s.inverse();
    let blocks = rhs
        .into_iter()
        .map(|b| {
            b.into_iter()
                .map(|j| j.iter().map(|w| w.mul(&s_inv)).collect())
                .collect()
        })
        .collect();
    eliminate_meets(blocks, fresh)
}

fn eliminate_meets(blocks: Vec<Block>, fresh: &mut FreshVars) -> BasicInequation {
    let mut joinands = Vec::new();
    for block in blocks {
        let m = block.len();
        if m == 1 {
            joinands.extend(block.into_iter().flatten());
            continue;
        }
        let ys: Vec<Var> = (0..m - 1).map(|_| fresh.next_var()).collect();
        for (i, join) in block.into_iter().enumerate() {
            // y_1^-1 ... y_{i-1}^-1 y_i, with no trailing y for the last element.
            let mut suffix: Vec<Letter> = ys[..i].iter().cloned().map(Letter::neg).collect();
            if i < m - 1 {
                suffix.push(Letter::pos(ys[i].clone()));
            }
            let suffix = word_of(suffix);
            joinands.extend(join.iter().map(|w| w.mul(&suffix)));
        }
    }
    BasicInequation::new(MonoidWord::empty(), joinands)
}
