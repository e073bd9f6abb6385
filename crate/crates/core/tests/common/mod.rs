//! Generators and an independent ℓ-group model shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use semifield_core::decide::Diagram;
use semifield_core::terms::{
    GroupWord, Letter, MonoidWord, Relation, Signature, Statement, Term, Var,
};
use semifield_core::translate::{BasicInequation, SimpleInequation};

pub const NAMES: [&str; 4] = ["x", "y", "z", "u"];

pub fn var(i: usize) -> Var {
    Var::new(NAMES[i])
}

pub fn monoid_word(
    vars: usize,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = MonoidWord> + Clone {
    prop::collection::vec(0..vars, len)
        .prop_map(|vs| MonoidWord::new(vs.into_iter().map(var).collect()))
}

pub fn group_word(vars: usize, max: usize) -> impl Strategy<Value = GroupWord> + Clone {
    prop::collection::vec((0..vars, any::<bool>()), 0..=max).prop_map(|ls| {
        ls.into_iter()
            .map(|(v, inv)| {
                if inv {
                    Letter::neg(var(v))
                } else {
                    Letter::pos(var(v))
                }
            })
            .collect()
    })
}

pub fn simple(vars: usize, joinands: usize, max: usize) -> impl Strategy<Value = SimpleInequation> {
    (
        monoid_word(vars, 0..=max),
        prop::collection::vec(monoid_word(vars, 0..=max), 1..=joinands),
    )
        .prop_map(|(s, ts)| SimpleInequation::new(s, ts))
}

pub fn basic(vars: usize, joinands: usize, max: usize) -> impl Strategy<Value = BasicInequation> {
    (
        monoid_word(vars, 0..=max),
        prop::collection::vec(group_word(vars, max), 1..=joinands),
    )
        .prop_map(|(s, ts)| BasicInequation::new(s, ts))
}

/// Arbitrary ℓ-group terms of bounded depth.
pub fn lgroup_term(vars: usize, depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => (0..vars).prop_map(|i| Term::Var(var(i))),
        1 => Just(Term::One),
    ];
    leaf.prop_recursive(depth, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet([a, b])),
            inner.prop_map(Term::inv),
        ]
    })
}

pub fn lgroup_statement(vars: usize, depth: u32) -> impl Strategy<Value = Statement> {
    (
        lgroup_term(vars, depth),
        lgroup_term(vars, depth),
        any::<bool>(),
    )
        .prop_map(|(l, r, eq)| {
            let rel = if eq { Relation::Eq } else { Relation::Le };
            Statement::new(rel, l, r, Signature::Lgroup).unwrap()
        })
}

fn gw_term(w: &GroupWord) -> Term {
    w.to_term()
}

/// `/\ (\/ s) <= \/ /\ (\/ t)` with group-word leaves.
pub fn shaped_statement(vars: usize, max: usize) -> impl Strategy<Value = Statement> {
    let join = prop::collection::vec(group_word(vars, max), 1..=2)
        .prop_map(|ws| Term::join(ws.iter().map(gw_term)));
    let meet = prop::collection::vec(join.clone(), 1..=2).prop_map(Term::meet);
    (meet.clone(), prop::collection::vec(meet, 1..=2))
        .prop_map(|(l, rs)| Statement::inequation(l, Term::join(rs), Signature::Lgroup).unwrap())
}

/// An order automorphism of the reals: piecewise linear through the given
/// knots, slope 1 outside them.
#[derive(Debug, Clone)]
pub struct Pl {
    knots: Vec<(f64, f64)>,
}

impl Pl {
    pub fn new(mut knots: Vec<(f64, f64)>) -> Self {
        knots.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!(knots.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
        Pl { knots }
    }

    fn through(knots: &[(f64, f64)], p: f64) -> f64 {
        let (Some(first), Some(last)) = (knots.first(), knots.last()) else {
            return p;
        };
        if p <= first.0 {
            return first.1 + (p - first.0);
        }
        if p >= last.0 {
            return last.1 + (p - last.0);
        }
        let i = knots.partition_point(|k| k.0 <= p) - 1;
        let ((x0, y0), (x1, y1)) = (knots[i], knots[i + 1]);
        y0 + (p - x0) * (y1 - y0) / (x1 - x0)
    }

    pub fn apply(&self, p: f64) -> f64 {
        Self::through(&self.knots, p)
    }

    pub fn apply_inv(&self, p: f64) -> f64 {
        let swapped: Vec<(f64, f64)> = self.knots.iter().map(|&(a, b)| (b, a)).collect();
        Self::through(&swapped, p)
    }
}

pub fn random_pl() -> impl Strategy<Value = Pl> {
    prop::collection::btree_set(-12i32..12, 0..5).prop_flat_map(|xs| {
        let n = xs.len();
        prop::collection::btree_set(-12i32..12, n..=n).prop_map(move |ys| {
            Pl::new(
                xs.iter()
                    .zip(&ys)
                    .map(|(&x, &y)| (x as f64, y as f64))
                    .collect(),
            )
        })
    })
}

/// The value at `p` of the automorphism `t` denotes, acting on the right.
pub fn eval(t: &Term, env: &BTreeMap<Var, Pl>, p: f64) -> f64 {
    eval_signed(t, false, env, p)
}

fn eval_signed(t: &Term, inverted: bool, env: &BTreeMap<Var, Pl>, p: f64) -> f64 {
    match t {
        Term::Var(v) => match env.get(v) {
            Some(f) if inverted => f.apply_inv(p),
            Some(f) => f.apply(p),
            None => p,
        },
        Term::One => p,
        Term::Zero => panic!("no 0 in an ℓ-group"),
        Term::Inv(s) => eval_signed(s, !inverted, env, p),
        Term::Mul(ts) if inverted => ts.iter().rev().fold(p, |q, s| eval_signed(s, true, env, q)),
        Term::Mul(ts) => ts.iter().fold(p, |q, s| eval_signed(s, false, env, q)),
        Term::Join(ts) | Term::Meet(ts) => {
            let vals = ts.iter().map(|s| eval_signed(s, inverted, env, p));
            // Inversion swaps join and meet.
            if matches!(t, Term::Join(_)) != inverted {
                vals.fold(f64::NEG_INFINITY, f64::max)
            } else {
                vals.fold(f64::INFINITY, f64::min)
            }
        }
    }
}

const EPS: f64 = 1e-7;

/// Does `st` fail at the point `p` under `env`?
pub fn fails_at(st: &Statement, env: &BTreeMap<Var, Pl>, p: f64) -> bool {
    let (l, r) = (eval(&st.lhs, env, p), eval(&st.rhs, env, p));
    match st.relation {
        Relation::Le => l > r + EPS,
        Relation::Eq => (l - r).abs() > EPS,
    }
}

/// Extend each partial map of `d` to an automorphism of the reals, with
/// point `i` placed at `i`.
pub fn extend(d: &Diagram) -> BTreeMap<Var, Pl> {
    d.maps
        .iter()
        .map(|(v, pairs)| {
            (
                v.clone(),
                Pl::new(pairs.iter().map(|&(a, b)| (a as f64, b as f64)).collect()),
            )
        })
        .collect()
}

/// Sample points for refutation searches.
pub fn sample_points() -> Vec<f64> {
    (-30..=30).map(|i| i as f64 * 0.5).collect()
}
