mod common;

use common::*;
use proptest::prelude::*;
use semifield_core::decide::{Diagram, Limits};
use semifield_core::orders::*;
use semifield_core::terms::{parse_term, GroupWord, MonoidWord, Signature, Statement, Term};

fn w(s: &str) -> GroupWord {
    parse_term(s, Signature::Group)
        .unwrap()
        .to_group_word()
        .unwrap()
}

fn m(s: &str) -> MonoidWord {
    parse_term(s, Signature::Monoid)
        .unwrap()
        .to_monoid_word()
        .unwrap()
}

fn limits() -> Limits {
    Limits {
        nodes: 300_000,
        ..Limits::default()
    }
}

fn query(words: &[GroupWord]) -> Option<OrderVerdict> {
    match group_right_order_exists_with(words, &limits()) {
        Ok(v) => Some(v),
        Err(e) if e.is_budget() => None,
        Err(e) => panic!("{words:?}: {e}"),
    }
}

/// The diagram, extended to automorphisms of the reals, puts some point
/// strictly above its image under every word.
fn certifies(d: &Diagram, words: &[GroupWord]) -> bool {
    let st = Statement::inequation(
        Term::One,
        Term::join(words.iter().map(GroupWord::to_term)),
        Signature::Lgroup,
    )
    .unwrap();
    let env = extend(d);
    (0..d.points)
        .map(|p| p as f64)
        .chain(sample_points())
        .any(|p| fails_at(&st, &env, p))
}

fn nonempty_word(vars: usize, max: usize) -> impl Strategy<Value = GroupWord> {
    group_word(vars, max).prop_filter("nontrivial", |w| !w.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sign_convention(w in nonempty_word(3, 5)) {
        let one = group_right_order_exists(&[w.clone()]).unwrap();
        prop_assert!(one.exists, "{}", w);
        prop_assert!(certifies(one.certificate.as_ref().unwrap(), &[w.clone()]));
        let both = group_right_order_exists(&[w.clone(), w.inverse()]).unwrap();
        prop_assert!(!both.exists, "{}", w);
        prop_assert!(both.certificate.is_none());
    }

    #[test]
    fn certificates_make_every_word_positive(ws in prop::collection::vec(nonempty_word(2, 3), 1..=3)) {
        let Some(v) = query(&ws) else { return Ok(()) };
        prop_assert_eq!(v.exists, v.certificate.is_some());
        if let Some(d) = &v.certificate {
            prop_assert!(certifies(d, &ws), "{:?}", ws);
        }
    }

    #[test]
    fn embedding_preserves_existence(ws in prop::collection::vec(group_word(2, 3), 1..=2)) {
        let embedded = rank2_embed(&ws);
        prop_assert_eq!(embedded.len(), ws.len());
        for (w, e) in ws.iter().zip(&embedded) {
            prop_assert_eq!(w.is_empty(), e.is_empty());
            prop_assert!(e.vars().iter().all(|v| v.as_str() == "x1" || v.as_str() == "x2"));
        }
        if let (Some(a), Some(b)) = (query(&ws), query(&embedded)) {
            prop_assert_eq!(a.exists, b.exists, "{:?} vs {:?}", ws, embedded);
        }
    }

    #[test]
    fn monoid_queries_reduce_to_group_queries(
        pairs in prop::collection::vec((monoid_word(2, 0..=3), monoid_word(2, 0..=3)), 1..=2),
    ) {
        let v = match monoid_right_order_exists_with(&pairs, &limits()) {
            Ok(v) => v,
            Err(e) if e.is_budget() => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        if pairs.iter().any(|(s, t)| s == t) {
            prop_assert!(!v.exists);
        }
        let words: Vec<GroupWord> = pairs
            .iter()
            .map(|(s, t)| t.to_group_word().mul(&s.to_group_word().inverse()))
            .collect();
        prop_assert_eq!(&v.reduced_words, &words);
        if let Some(d) = &v.certificate {
            prop_assert!(certifies(d, &words));
        }
    }
}

#[test]
fn pair_index_is_a_bijection_on_the_window() {
    let mut seen = std::collections::BTreeSet::new();
    for k in (-20..=20).filter(|&k| k != 0) {
        for l in (-20..=20).filter(|&l| l != 0) {
            let n = pair_index(k, l).unwrap();
            assert_eq!(pair_index_inverse(n), (k, l));
            assert!(seen.insert(n));
        }
    }
    // Every index up to the diagonal through (40, 40) is hit.
    for n in 0..(40 * 41 / 2) {
        let (k, l) = pair_index_inverse(n);
        assert_eq!(pair_index(k, l).unwrap(), n);
    }
    assert_eq!(pair_index(1, 1).unwrap(), 0);
    assert_eq!(pair_index_inverse(0), (1, 1));
    assert!(pair_index(0, 1).is_err());
    assert!(pair_index(3, 0).is_err());
}

#[test]
fn known_queries() {
    assert!(group_right_order_exists(&[w("x")]).unwrap().exists);
    assert!(
        !group_right_order_exists(&[w("x"), w("x^-1")])
            .unwrap()
            .exists
    );
    assert!(!group_right_order_exists(&[w("e")]).unwrap().exists);
    assert!(group_right_order_exists(&[]).is_err());
    assert!(
        monoid_right_order_exists(&[(m("x*y"), m("y*x"))])
            .unwrap()
            .exists
    );
    assert!(
        !monoid_right_order_exists(&[(m("x"), m("x"))])
            .unwrap()
            .exists
    );
    assert!(
        monoid_right_order_exists(&[(m("e"), m("x")), (m("e"), m("y"))])
            .unwrap()
            .exists
    );
    // x < y and y < x cannot both hold.
    assert!(
        !monoid_right_order_exists(&[(m("x"), m("y")), (m("y"), m("x"))])
            .unwrap()
            .exists
    );
}

#[test]
fn commutator_images() {
    assert_eq!(commutator_image(1), w("x1^-1*x2^-1*x1*x2"));
    assert_eq!(
        rank2_embed(&[w("y1*y2")]),
        vec![w("x1^-1*x2^-1*x1*x2*x1^-1*x2^-2*x1*x2^2")]
    );
    assert_eq!(
        rank2_embed(&[GroupWord::identity()]),
        vec![GroupWord::identity()]
    );
    for j in 1..=6 {
        assert_eq!(commutator_image(j).len(), 2 * j + 2);
    }
    // Distinct variables go to distinct commutators.
    let images = rank2_embed(&[w("a"), w("b"), w("c")]);
    assert!(images[0] != images[1] && images[1] != images[2] && images[0] != images[2]);
}
