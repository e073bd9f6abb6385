//! Exhaustive evaluation of statements and quasiequations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{flat_extension, FiniteAlgebra, FiniteMonoid};
use crate::terms::{MonoidWord, Relation, Signature, Statement, Term, Var};
use crate::translate::Quasiequation;
use crate::{Error, Result};

/// Most assignments a brute-force check may enumerate.
pub const DEFAULT_EVAL_BUDGET: u64 = 10_000_000;

/// Variables to element indices.
pub type Assignment = BTreeMap<Var, usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    /// The lexicographically least violating assignment (variables in name
    /// order, elements in table order).
    pub witness: Option<Assignment>,
}

enum Compiled {
    Var(usize),
    Const(usize),
    Mul(Vec<Compiled>),
    Join(Vec<Compiled>),
    Meet(Vec<Compiled>),
}

fn compile(t: &Term, a: &FiniteAlgebra, vars: &[Var]) -> Result<Compiled> {
    let all = |ts: &[Term]| {
        ts.iter()
            .map(|c| compile(c, a, vars))
            .collect::<Result<Vec<_>>>()
    };
    Ok(match t {
        Term::Var(v) => Compiled::Var(vars.iter().position(|w| w == v).expect("collected")),
        Term::One => Compiled::Const(a.unit()),
        Term::Zero => Compiled::Const(a.zero().ok_or_else(|| mismatch(a, "0"))?),
        Term::Mul(ts) => Compiled::Mul(all(ts)?),
        Term::Join(ts) => Compiled::Join(all(ts)?),
        Term::Meet(ts) if a.has_meet() => Compiled::Meet(all(ts)?),
        Term::Meet(_) => return Err(mismatch(a, "/\\")),
        Term::Inv(_) => return Err(mismatch(a, "^-1")),
    })
}

fn mismatch(a: &FiniteAlgebra, symbol: &str) -> Error {
    Error::SignatureMismatch(format!("{} has no interpretation of `{symbol}`", a.name))
}

fn eval(t: &Compiled, a: &FiniteAlgebra, env: &[usize]) -> usize {
    let fold = |ts: &[Compiled], f: &dyn Fn(usize, usize) -> usize| {
        let mut it = ts.iter().map(|c| eval(c, a, env));
        let first = it.next().expect("compound terms have children");
        it.fold(first, f)
    };
    match t {
        Compiled::Var(i) => env[*i],
        Compiled::Const(c) => *c,
        Compiled::Mul(ts) => fold(ts, &|x, y| a.mul(x, y)),
        Compiled::Join(ts) => fold(ts, &|x, y| a.join(x, y)),
        Compiled::Meet(ts) => fold(ts, &|x, y| a.meet(x, y).expect("checked at compile time")),
    }
}

/// Run `visit` over all assignments of `n` elements to `k` variables in
/// lexicographic order until it returns `false`. Returns the stopping
/// assignment.
fn enumerate(
    n: usize,
    k: usize,
    budget: u64,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<Option<Vec<usize>>> {
    let total = (n as u64).checked_pow(k as u32).filter(|&t| t <= budget);
    if total.is_none() {
        return Err(Error::Budget {
            resource: "evaluations",
            limit: budget,
        });
    }
    let mut env = alloc::vec![0usize; k];
    loop {
        if !visit(&env) {
            return Ok(Some(env));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

fn to_check(vars: &[Var], stop: Option<Vec<usize>>) -> Check {
    Check {
        holds: stop.is_none(),
        witness: stop.map(|env| vars.iter().cloned().zip(env).collect()),
    }
}

/// Does `a` satisfy `st`? Brute force with the default budget.
pub fn holds_finite(a: &FiniteAlgebra, st: &Statement) -> Result<Check> {
    holds_finite_with(a, st, DEFAULT_EVAL_BUDGET)
}

pub fn holds_finite_with(a: &FiniteAlgebra, st: &Statement, budget: u64) -> Result<Check> {
    let vars: Vec<Var> = st.vars().into_iter().collect();
    let (l, r) = (compile(&st.lhs, a, &vars)?, compile(&st.rhs, a, &vars)?);
    let stop = enumerate(a.len(), vars.len(), budget, |env| {
        let (x, y) = (eval(&l, a, env), eval(&r, a, env));
        match st.relation {
            Relation::Eq => x == y,
            Relation::Le => a.join(x, y) == y,
        }
    })?;
    Ok(to_check(&vars, stop))
}

fn eval_word(
    mul: &dyn Fn(usize, usize) -> usize,
    unit: usize,
    w: &MonoidWord,
    vars: &[Var],
    env: &[usize],
) -> usize {
    w.vars().iter().fold(unit, |acc, v| {
        mul(
            acc,
            env[vars.iter().position(|u| u == v).expect("collected")],
        )
    })
}

fn quasi_check(
    n: usize,
    unit: usize,
    mul: &dyn Fn(usize, usize) -> usize,
    q: &Quasiequation,
) -> Result<Check> {
    let vars: Vec<Var> = q.vars().into_iter().collect();
    let holds = |env: &[usize]| {
        let value = |w: &MonoidWord| eval_word(mul, unit, w, &vars, env);
        let eq = |l: &MonoidWord, r: &MonoidWord| value(l) == value(r);
        !q.premises.iter().all(|p| eq(&p.lhs, &p.rhs)) || eq(&q.conclusion.lhs, &q.conclusion.rhs)
    };
    let stop = enumerate(n, vars.len(), DEFAULT_EVAL_BUDGET, holds)?;
    Ok(to_check(&vars, stop))
}

/// Does the monoid `m` satisfy `q`?
pub fn holds_quasi(m: &FiniteMonoid, q: &Quasiequation) -> Result<Check> {
    quasi_check(m.len(), m.unit(), &|a, b| m.mul(a, b), q)
}

/// Does the monoid reduct of `a` satisfy `q`?
pub fn holds_quasi_algebra(a: &FiniteAlgebra, q: &Quasiequation) -> Result<Check> {
    quasi_check(a.len(), a.unit(), &|x, y| a.mul(x, y), q)
}

pub fn holds_quasi_zn(q: &Quasiequation, n: usize) -> Result<Check> {
    if n == 0 {
        return Err(Error::Domain(alloc::string::String::from(
            "Z_n needs n >= 1",
        )));
    }
    holds_quasi(&FiniteMonoid::cyclic(n), q)
}

fn exponent_difference(l: &MonoidWord, r: &MonoidWord, vars: &[Var]) -> Vec<BigRational> {
    let mut out = alloc::vec![BigRational::zero(); vars.len()];
    for (w, sign) in [(l, 1i64), (r, -1)] {
        for v in w.vars() {
            let i = vars.iter().position(|u| u == v).expect("collected");
            out[i] += BigRational::from_integer(sign.into());
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let lead: Vec<BigRational> = rows[r].iter().map(|x| x / &pivot).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&lead) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = lead;
        r += 1;
    }
    r
}

/// Does `<Z, +, 0>` satisfy `q`? True exactly when the conclusion's
/// exponent-difference vector is a rational combination of the premises'.
pub fn holds_quasi_z(q: &Quasiequation) -> bool {
    let vars: Vec<Var> = q.vars().into_iter().collect();
    let premises: Vec<Vec<BigRational>> = q
        .premises
        .iter()
        .map(|p| exponent_difference(&p.lhs, &p.rhs, &vars))
        .collect();
    let goal = exponent_difference(&q.conclusion.lhs, &q.conclusion.rhs, &vars);
    if goal.iter().all(Zero::is_zero) {
        return true;
    }
    let base = rank(premises.clone());
    let mut with_goal = premises;
    with_goal.push(goal);
    rank(with_goal) == base
}

/// The inequation `x <= e \/ x^n`, which holds in every ℓ-group, with the
/// flat extension of `Z_n` refuting it.
#[derive(Debug, Clone)]
pub struct NfbWitness {
    pub inequation: Statement,
    pub algebra: FiniteAlgebra,
    /// `None` when nothing is refuted (`n = 1`).
    pub assignment: Option<Assignment>,
    pub degenerate: bool,
}

pub fn nfb_witness(n: usize) -> Result<NfbWitness> {
    if n == 0 {
        return Err(Error::Domain(alloc::string::String::from(
            "the witness family starts at n = 1",
        )));
    }
    let x = Term::var("x");
    let rhs = Term::join([Term::One, Term::mul(core::iter::repeat(x.clone()).take(n))]);
    let inequation = Statement::inequation(x, rhs, Signature::Semiring)?;
    let algebra = flat_extension(&FiniteMonoid::cyclic(n));
    let check = holds_finite(&algebra, &inequation)?;
    Ok(NfbWitness {
        degenerate: check.holds,
        assignment: check.witness,
        inequation,
        algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::endo_monoid_algebra;
    use crate::terms::parse_statement;

    fn st(s: &str) -> Statement {
        parse_statement(s, Signature::Lgroup).unwrap()
    }

    fn q(s: &str) -> Quasiequation {
        Quasiequation::parse(s).unwrap()
    }

    #[test]
    fn flat_z2_refutes_at_a() {
        let f = flat_extension(&FiniteMonoid::cyclic(2));
        let c = holds_finite(&f, &st("x <= e \\/ x^2")).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap()[&Var::new("x")], f.element("a").unwrap());
        let f3 = flat_extension(&FiniteMonoid::cyclic(3));
        assert!(holds_finite(&f3, &st("x <= e \\/ x^2")).unwrap().holds);
        assert!(holds_finite(&f3, &st("e = e")).unwrap().holds);
    }

    #[test]
    fn dlmonoid_check_in_o2() {
        let o2 = endo_monoid_algebra(2).unwrap();
        assert!(!holds_finite(&o2, &st("e <= x /\\ y")).unwrap().holds);
        assert!(holds_finite(&o2, &st("x /\\ y <= x \\/ y")).unwrap().holds);
        assert!(holds_finite(&o2, &st("x^-1 <= e")).is_err());
    }

    #[test]
    fn quasi_over_zn() {
        assert!(!holds_quasi_zn(&q("e = x^2 => e = x"), 2).unwrap().holds);
        assert!(holds_quasi_zn(&q("e = x^2 => e = x"), 3).unwrap().holds);
        assert!(holds_quasi_zn(&q("=> e = e"), 5).unwrap().holds);
    }

    #[test]
    fn quasi_over_flat_reduct() {
        // The top element squares to itself without being e.
        let f = flat_extension(&FiniteMonoid::cyclic(3));
        let c = holds_quasi_algebra(&f, &q("x = x*x => x = e")).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap()[&Var::new("x")], f.top().unwrap());
        assert!(
            holds_quasi(&FiniteMonoid::cyclic(3), &q("x = x*x => x = e"))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn quasi_over_z() {
        assert!(holds_quasi_z(&q("e = x^2 => e = x")));
        assert!(!holds_quasi_z(&q("=> e = x")));
        assert!(holds_quasi_z(&q("x = y => x^2 = y^2")));
        assert!(!holds_quasi_z(&q("x = y => x = z")));
    }

    #[test]
    fn witness_family() {
        let w = nfb_witness(2).unwrap();
        assert!(!w.degenerate);
        assert_eq!(
            w.assignment.unwrap()[&Var::new("x")],
            w.algebra.element("a").unwrap()
        );
        let w = nfb_witness(1).unwrap();
        assert!(w.degenerate && w.assignment.is_none());
    }

    #[test]
    fn evaluation_budget() {
        let f = flat_extension(&FiniteMonoid::cyclic(8));
        let err = holds_finite_with(&f, &st("x*y*z <= x*y*z"), 100).unwrap_err();
        assert!(err.is_budget());
    }
}
