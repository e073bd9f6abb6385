mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use semifield_core::decide::{
    decide_lgroup_with, decide_statement_with, eval_integer, verify_certificate, Class, Limits,
    Status, Verdict,
};
use semifield_core::models::{endo_monoid_algebra, holds_finite, FiniteAlgebra};
use semifield_core::terms::{GroupWord, Letter, Relation, Signature, Statement, Term, Var};
use semifield_core::translate::{is_left_regular, BasicInequation};

fn limits() -> Limits {
    Limits {
        nodes: 300_000,
        ..Limits::default()
    }
}

/// `None` when the search ran out of budget.
fn decide(st: &Statement, class: Class) -> Option<Verdict> {
    match decide_statement_with(st, class, &limits()) {
        Ok(v) => Some(v),
        Err(e) if e.is_budget() => None,
        Err(e) => panic!("{st} over {class}: {e}"),
    }
}

fn audit(st: &Statement, class: Class) -> Result<Option<Verdict>, TestCaseError> {
    let Some(v) = decide(st, class) else {
        return Ok(None);
    };
    match (&v.status, &v.certificate) {
        (Status::Valid, None) => {}
        (Status::Invalid, Some(c)) => {
            if let Err(e) = verify_certificate(st, class, c) {
                return Err(TestCaseError::fail(format!("{st} over {class}: {e}")));
            }
        }
        other => {
            return Err(TestCaseError::fail(format!(
                "{st}: inconsistent verdict {other:?}"
            )))
        }
    }
    Ok(Some(v))
}

fn term(vars: usize, ops: &'static [&'static str], constants: Vec<Term>) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> =
        vec![(0..vars).prop_map(|i| Term::Var(var(i))).boxed()];
    for c in constants {
        leaves.push(Just(c).boxed());
    }
    let leaf = prop::strategy::Union::new_weighted(
        leaves
            .into_iter()
            .enumerate()
            .map(|(i, s)| (if i == 0 { 4 } else { 1 }, s))
            .collect(),
    );
    leaf.prop_recursive(3, 10, 2, move |inner| {
        let mut arms: Vec<BoxedStrategy<Term>> = Vec::new();
        for &op in ops {
            let s = match op {
                "*" => (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Term::mul([a, b]))
                    .boxed(),
                "\\/" => (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Term::join([a, b]))
                    .boxed(),
                "/\\" => (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Term::meet([a, b]))
                    .boxed(),
                _ => inner.clone().prop_map(Term::inv).boxed(),
            };
            arms.push(s);
        }
        prop::strategy::Union::new(arms)
    })
    .boxed()
}

fn statement(t: BoxedStrategy<Term>, sig: Signature) -> impl Strategy<Value = Statement> {
    (t.clone(), t, any::<bool>()).prop_map(move |(l, r, eq)| {
        let rel = if eq { Relation::Eq } else { Relation::Le };
        Statement::new(rel, l, r, sig).unwrap()
    })
}

fn semiring_statement() -> impl Strategy<Value = Statement> {
    statement(term(3, &["*", "\\/"], vec![Term::One]), Signature::Semiring)
}

fn orders() -> Vec<FiniteAlgebra> {
    vec![
        endo_monoid_algebra(2).unwrap(),
        endo_monoid_algebra(3).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lgroup_certificates_verify(st in lgroup_statement(3, 3)) {
        audit(&st, Class::Lgroup)?;
    }

    #[test]
    fn dlmonoid_verdicts_hold_in_chain_endomorphisms(
        st in statement(term(3, &["*", "\\/", "/\\"], vec![Term::One]), Signature::Lgroup),
    ) {
        if let Some(v) = audit(&st, Class::Dlmonoid)? {
            if v.is_valid() {
                for a in orders() {
                    prop_assert!(holds_finite(&a, &st).unwrap().holds, "{} fails in {}", st, a.name);
                }
            }
        }
    }

    /// Valid over semifields, then over commutative ones, then in the chain
    /// endomorphism algebras.
    #[test]
    fn necessary_condition_chain(st in semiring_statement()) {
        let Some(sf) = audit(&st, Class::Semifield)? else { return Ok(()) };
        let comm = audit(&st, Class::Commutative)?.expect("no search budget in the tropical backend");
        if sf.is_valid() {
            prop_assert!(comm.is_valid(), "{st}");
            for a in orders() {
                prop_assert!(holds_finite(&a, &st).unwrap().holds, "{} fails in {}", st, a.name);
            }
        }
        // The commutative verdict against random integer points.
        if comm.is_valid() {
            let vars: Vec<Var> = st.vars().into_iter().collect();
            for seed in 0..40i64 {
                let env: BTreeMap<Var, i64> =
                    vars.iter().enumerate().map(|(i, v)| (v.clone(), (seed * 7 + i as i64 * 13) % 11 - 5)).collect();
                let (l, r) = (eval_integer(&st.lhs, &env).unwrap(), eval_integer(&st.rhs, &env).unwrap());
                prop_assert!(if st.relation == Relation::Eq { l == r } else { l <= r }, "{st} at {env:?}");
            }
        }
    }

    #[test]
    fn efree_certificates_verify(st in statement(term(3, &["*", "\\/"], vec![]), Signature::Semiring)) {
        let a = audit(&st, Class::SemifieldEfree)?;
        let b = audit(&st, Class::Semifield)?;
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(a.status, b.status);
        }
    }

    #[test]
    fn semifield0_verdicts(st in statement(term(3, &["*", "\\/"], vec![Term::One, Term::Zero]), Signature::Semiring0)) {
        if let Some(v) = audit(&st, Class::Semifield0)? {
            if v.is_valid() {
                prop_assert!(holds_finite(&FiniteAlgebra::boolean_zero(), &st).unwrap().holds, "{st}");
            }
        }
    }

    #[test]
    fn valid_simple_inequations_are_left_regular(eps in simple(3, 3, 3)) {
        if eps.decide().unwrap().is_valid() {
            prop_assert!(is_left_regular(&eps), "{eps}");
        }
    }

    #[test]
    fn more_joinands_stay_valid(eps in basic(3, 2, 3), extra in prop::collection::vec(group_word(3, 3), 1..=2)) {
        let Ok(v) = decide_lgroup_with(&eps, &limits()) else { return Ok(()) };
        if v.is_valid() {
            let wider = BasicInequation::new(eps.lhs().clone(), eps.rhs().iter().cloned().chain(extra));
            if let Ok(w) = decide_lgroup_with(&wider, &limits()) {
                prop_assert!(w.is_valid(), "{eps} valid but {wider} not");
            }
        }
    }

    #[test]
    fn renaming_and_repetition_do_not_change_verdicts(eps in basic(3, 3, 3)) {
        let Ok(v) = decide_lgroup_with(&eps, &limits()) else { return Ok(()) };
        let rename = |w: &GroupWord| -> GroupWord {
            w.letters().iter().map(|l| {
                let var = Var::new(&format!("{}{}", l.var.as_str(), "r"));
                if l.inverse { Letter::neg(var) } else { Letter::pos(var) }
            }).collect()
        };
        let lhs = rename(&eps.lhs().to_group_word()).to_monoid_word().unwrap();
        let renamed = BasicInequation::new(lhs, eps.rhs().iter().map(rename));
        let r = decide_lgroup_with(&renamed, &limits()).unwrap();
        prop_assert_eq!(v.status, r.status, "{} vs {}", eps, renamed);
        let again = decide_lgroup_with(&eps, &limits()).unwrap();
        prop_assert_eq!(v, again);
    }
}

#[test]
fn known_verdicts() {
    let p = |s: &str| semifield_core::terms::parse_statement(s, Signature::Lgroup).unwrap();
    let lg = |s: &str| decide_statement_with(&p(s), Class::Lgroup, &Limits::default()).unwrap();
    assert!(lg("e <= x \\/ x^-1").is_valid());
    assert!(!lg("e <= x").is_valid());
    assert!(!lg("e <= x /\\ y").is_valid());
    assert!(lg("x /\\ y <= x \\/ y").is_valid());
    assert!(lg("x*(y \\/ z) = x*y \\/ x*z").is_valid());
    assert!(lg("(x \\/ y)^-1 = x^-1 /\\ y^-1").is_valid());
    assert!(!lg("x*y = y*x").is_valid());
    let dl =
        decide_statement_with(&p("e <= x /\\ y"), Class::Dlmonoid, &Limits::default()).unwrap();
    assert!(!dl.is_valid());
    let o2 = endo_monoid_algebra(2).unwrap();
    assert!(!holds_finite(&o2, &p("e <= x /\\ y")).unwrap().holds);
}
