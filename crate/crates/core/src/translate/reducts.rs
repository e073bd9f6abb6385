//! Translations for the `e`-free and `0`-expanded signatures.

use alloc::vec::Vec;

use super::SimpleInequation;
use crate::terms::{FreshVars, MonoidWord, Relation, Signature, Statement, Term, Var};
use crate::{Error, Result};

/// Delete every `e`. `None` when the term (or one of its joinands) consists
/// of `e` alone and so has no `e`-free counterpart.
pub fn strip_e(t: &Term) -> Option<Term> {
    match t {
        Term::One => None,
        Term::Var(_) | Term::Zero => Some(t.clone()),
        Term::Mul(ts) => {
            let kept: Vec<Term> = ts.iter().filter_map(strip_e).collect();
            (!kept.is_empty()).then(|| Term::mul(kept))
        }
        Term::Join(ts) => ts
            .iter()
            .map(strip_e)
            .collect::<Option<Vec<_>>>()
            .map(Term::join),
        Term::Meet(ts) => ts
            .iter()
            .map(strip_e)
            .collect::<Option<Vec<_>>>()
            .map(Term::meet),
        Term::Inv(c) => strip_e(c).map(Term::inv),
    }
}

/// `z s <= z t_1 \/ ... \/ z t_n` for a fresh `z`: holds in an idempotent
/// semifield exactly when `eps` does, and never needs `e`.
pub fn efree_wrap(eps: &SimpleInequation) -> (SimpleInequation, Var) {
    let z = FreshVars::avoiding(eps.vars().iter()).next_var();
    let zw = MonoidWord::new(alloc::vec![z.clone()]);
    let wrap = |w: &MonoidWord| {
        let t = strip_e(&zw.concat(w).to_term()).expect("wrapped words are nonempty");
        t.to_monoid_word().expect("product of variables")
    };
    (
        SimpleInequation::new(wrap(eps.lhs()), eps.rhs().iter().map(wrap)),
        z,
    )
}

/// Bottom-up `x*0 -> 0`, `0*x -> 0`, `0 \/ x -> x`, `x \/ 0 -> x`, plus unit
/// deletion in products. The result is `0` or a `0`-free term.
///
/// A first pass marks the subterms that vanish; the second writes each
/// maximal product straight into one factor list, so nested products are
/// never copied level by level.
pub fn zero_simplify(t: &Term) -> Term {
    emit(t, &mark(t))
}

struct Mark {
    zero: bool,
    kids: Vec<Mark>,
}

fn mark(t: &Term) -> Mark {
    let leaf = |zero| Mark {
        zero,
        kids: Vec::new(),
    };
    match t {
        Term::Var(_) | Term::One => leaf(false),
        Term::Zero => leaf(true),
        Term::Mul(ts) | Term::Meet(ts) => {
            let kids: Vec<Mark> = ts.iter().map(mark).collect();
            Mark {
                zero: kids.iter().any(|k| k.zero),
                kids,
            }
        }
        Term::Join(ts) => {
            let kids: Vec<Mark> = ts.iter().map(mark).collect();
            Mark {
                zero: kids.iter().all(|k| k.zero),
                kids,
            }
        }
        Term::Inv(c) => Mark {
            zero: false,
            kids: alloc::vec![mark(c)],
        },
    }
}

fn surviving<'a>(ts: &'a [Term], m: &'a Mark) -> impl Iterator<Item = (&'a Term, &'a Mark)> {
    ts.iter().zip(&m.kids).filter(|(_, k)| !k.zero)
}

fn emit(t: &Term, m: &Mark) -> Term {
    if m.zero {
        return Term::Zero;
    }
    match t {
        Term::Var(_) | Term::One | Term::Zero => t.clone(),
        Term::Mul(_) => {
            let mut out = Vec::new();
            factors(t, m, &mut out);
            match out.len() {
                0 => Term::One,
                1 => out.pop().unwrap(),
                _ => Term::Mul(out),
            }
        }
        Term::Join(ts) => {
            let mut kept = surviving(ts, m);
            match (kept.next(), kept.next()) {
                (Some((only, k)), None) => emit(only, k),
                _ => Term::join(surviving(ts, m).map(|(c, k)| emit(c, k))),
            }
        }
        Term::Meet(ts) => Term::meet(ts.iter().zip(&m.kids).map(|(c, k)| emit(c, k))),
        Term::Inv(c) => Term::inv(emit(c, &m.kids[0])),
    }
}

/// Append the simplified factors of a non-vanishing `t` to `out`.
fn factors(t: &Term, m: &Mark, out: &mut Vec<Term>) {
    match t {
        Term::One => {}
        Term::Mul(ts) => {
            for (c, k) in ts.iter().zip(&m.kids) {
                factors(c, k, out);
            }
        }
        Term::Join(ts) if surviving(ts, m).nth(1).is_none() => {
            let (only, k) = surviving(ts, m).next().expect("not all joinands vanish");
            factors(only, k, out);
        }
        _ => match emit(t, m) {
            Term::One => {}
            Term::Mul(fs) => out.extend(fs),
            other => out.push(other),
        },
    }
}

/// Simplify both sides; when neither side is `0` the result is re-declared in
/// the semiring signature.
pub fn zero_simplify_statement(st: &Statement) -> Result<(Term, Relation, Term)> {
    if !st.signature.is_subsignature_of(Signature::Semiring0) {
        return Err(Error::SignatureMismatch(alloc::format!(
            "expected a semiring0 statement, got {}",
            st.signature
        )));
    }
    Ok((zero_simplify(&st.lhs), st.relation, zero_simplify(&st.rhs)))
}
