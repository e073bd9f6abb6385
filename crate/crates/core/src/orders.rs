//! Right orders on free groups and free monoids.
//!
//! A right order on the free group with `e < s_1, ..., e < s_n` exists
//! exactly when `e <= s_1 \/ ... \/ s_n` fails in some ℓ-group, so every
//! query here is one call to [`decide_lgroup`]. Monoid constraints `s < t`
//! become `e < t s^-1` by right invariance.

use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Roots;

use crate::decide::{decide_lgroup_with, Certificate, Diagram, Limits, Stats};
use crate::terms::{GroupWord, Letter, MonoidWord, Var};
use crate::translate::BasicInequation;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrderVerdict {
    pub exists: bool,
    /// The words required to be positive, after reduction.
    pub reduced_words: Vec<GroupWord>,
    /// A diagram refuting `e <= w_1 \/ ... \/ w_n` when an order exists.
    pub certificate: Option<Diagram>,
    pub stats: Stats,
}

pub fn group_right_order_exists(words: &[GroupWord]) -> Result<OrderVerdict> {
    group_right_order_exists_with(words, &Limits::default())
}

pub fn group_right_order_exists_with(words: &[GroupWord], limits: &Limits) -> Result<OrderVerdict> {
    if words.is_empty() {
        return Err(Error::Domain(String::from(
            "an order query needs at least one word",
        )));
    }
    let reduced_words = words.to_vec();
    if words.iter().any(GroupWord::is_empty) {
        return Ok(OrderVerdict {
            exists: false,
            reduced_words,
            certificate: None,
            stats: Stats::default(),
        });
    }
    let v = decide_lgroup_with(&BasicInequation::positive(words.iter().cloned()), limits)?;
    let exists = !v.is_valid();
    let certificate = v.certificate.map(|c| match c {
        Certificate::Diagram { diagram, .. } => diagram,
        other => unreachable!("ℓ-group search certifies with diagrams, got {other:?}"),
    });
    Ok(OrderVerdict {
        exists,
        reduced_words,
        certificate,
        stats: v.stats,
    })
}

/// Is there a right order on the free monoid with `s_i < t_i` for all `i`?
pub fn monoid_right_order_exists(pairs: &[(MonoidWord, MonoidWord)]) -> Result<OrderVerdict> {
    monoid_right_order_exists_with(pairs, &Limits::default())
}

pub fn monoid_right_order_exists_with(
    pairs: &[(MonoidWord, MonoidWord)],
    limits: &Limits,
) -> Result<OrderVerdict> {
    let words: Vec<GroupWord> = pairs
        .iter()
        .map(|(s, t)| t.to_group_word().mul(&s.to_group_word().inverse()))
        .collect();
    group_right_order_exists_with(&words, limits)
}

/// `[x1, x2^j] = x1^-1 x2^-j x1 x2^j`.
pub fn commutator_image(j: usize) -> GroupWord {
    let (x1, x2) = (Var::new("x1"), Var::new("x2"));
    let mut letters = Vec::with_capacity(2 * j + 2);
    letters.push(Letter::neg(x1.clone()));
    letters.extend(core::iter::repeat(Letter::neg(x2.clone())).take(j));
    letters.push(Letter::pos(x1));
    letters.extend(core::iter::repeat(Letter::pos(x2)).take(j));
    letters.into_iter().collect()
}

/// Send the `j`-th distinct variable (first-occurrence order across all
/// words, counting from 1) to `[x1, x2^j]` and reduce.
pub fn rank2_embed(words: &[GroupWord]) -> Vec<GroupWord> {
    let mut order: Vec<Var> = Vec::new();
    for w in words {
        for l in w.letters() {
            if !order.contains(&l.var) {
                order.push(l.var.clone());
            }
        }
    }
    words
        .iter()
        .map(|w| {
            w.substitute(|v| {
                commutator_image(order.iter().position(|u| u == v).expect("collected") + 1)
            })
        })
        .collect()
}

fn zeta(k: i64) -> Result<u64> {
    match k {
        0 => Err(Error::Domain(String::from(
            "pair_index is defined on nonzero integers",
        ))),
        k if k > 0 => Ok(2 * (k as u64) - 2),
        k => Ok(2 * k.unsigned_abs() - 1),
    }
}

fn zeta_inverse(n: u64) -> i64 {
    if n % 2 == 0 {
        (n / 2 + 1) as i64
    } else {
        -(((n + 1) / 2) as i64)
    }
}

/// A bijection from pairs of nonzero integers to the naturals.
pub fn pair_index(k: i64, l: i64) -> Result<u64> {
    let (a, b) = (zeta(k)?, zeta(l)?);
    let s = a
        .checked_add(b)
        .ok_or_else(|| Error::Domain(String::from("pair_index overflow")))?;
    s.checked_mul(s + 1)
        .map(|t| t / 2 + b)
        .ok_or_else(|| Error::Domain(String::from("pair_index overflow")))
}

pub fn pair_index_inverse(n: u64) -> (i64, i64) {
    let mut w = (8 * n as u128 + 1).sqrt() as u64;
    w = (w - 1) / 2;
    let b = n - w * (w + 1) / 2;
    let a = w - b;
    (zeta_inverse(a), zeta_inverse(b))
}
