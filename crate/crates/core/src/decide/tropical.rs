//! Validity over the tropical semifield `<Z, max, +, 0>`, equivalently over
//! Abelian ℓ-groups, via exact rational Fourier–Motzkin elimination.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::terms::{GroupWord, Term, Var};
use crate::{Error, Result};

/// Rows allowed in any elimination stage before giving up.
pub const DEFAULT_ROW_BUDGET: usize = 20_000;

/// Exponent sum of every variable of `vars` in `w`.
pub fn abelianize(w: &GroupWord, vars: &[Var]) -> Vec<i64> {
    let mut out = alloc::vec![0i64; vars.len()];
    for l in w.letters() {
        let i = vars
            .iter()
            .position(|v| *v == l.var)
            .expect("variable listed");
        out[i] += if l.inverse { -1 } else { 1 };
    }
    out
}

/// `coef . x >= rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coef: Vec<BigRational>,
    rhs: BigRational,
}

enum Normal {
    Keep(Row),
    Trivial,
    Contradiction,
}

impl Row {
    fn normalize(mut self) -> Normal {
        match self.coef.iter().find(|c| !c.is_zero()).cloned() {
            None if self.rhs.is_positive() => Normal::Contradiction,
            None => Normal::Trivial,
            Some(lead) => {
                let scale = lead.abs();
                for c in &mut self.coef {
                    *c /= &scale;
                }
                self.rhs /= &scale;
                Normal::Keep(self)
            }
        }
    }
}

/// Fourier–Motzkin on `rows`; a rational solution if the system is feasible.
fn solve(rows: Vec<Row>, dim: usize, budget: usize) -> Result<Option<Vec<BigRational>>> {
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();
    let mut current = match tidy(rows) {
        Some(rs) => rs,
        None => return Ok(None),
    };
    let mut remaining: Vec<usize> = (0..dim).collect();

    while !remaining.is_empty() {
        // Eliminate the variable producing the fewest new rows.
        let (at, &k) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &k)| {
                let pos = current.iter().filter(|r| r.coef[k].is_positive()).count();
                let neg = current.iter().filter(|r| r.coef[k].is_negative()).count();
                pos * neg
            })
            .expect("nonempty");
        remaining.remove(at);

        let mut next = Vec::new();
        let (mut lower, mut upper) = (Vec::new(), Vec::new());
        for r in &current {
            if r.coef[k].is_positive() {
                lower.push(r);
            } else if r.coef[k].is_negative() {
                upper.push(r);
            } else {
                next.push(r.clone());
            }
        }
        if lower.len() * upper.len() + next.len() > budget {
            return Err(Error::Budget {
                resource: "tropical rows",
                limit: budget as u64,
            });
        }
        for lo in &lower {
            for up in &upper {
                let (a, b) = (lo.coef[k].clone(), -up.coef[k].clone());
                let coef = lo
                    .coef
                    .iter()
                    .zip(&up.coef)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                next.push(Row {
                    coef,
                    rhs: &lo.rhs * &b + &up.rhs * &a,
                });
            }
        }
        stages.push((k, core::mem::take(&mut current)));
        current = match tidy(next) {
            Some(rs) => rs,
            None => return Ok(None),
        };
    }

    let mut x = alloc::vec![BigRational::zero(); dim];
    for (k, rows) in stages.iter().rev() {
        let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
        for r in rows {
            let c = &r.coef[*k];
            if c.is_zero() {
                continue;
            }
            let rest: BigRational = r
                .coef
                .iter()
                .enumerate()
                .filter(|(j, _)| j != k)
                .map(|(j, cj)| cj * &x[j])
                .sum();
            let bound = (&r.rhs - rest) / c;
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        x[*k] = pick(lo, hi);
    }
    Ok(Some(x))
}

/// The integer of least magnitude in `[lo, hi]`, or an endpoint when the
/// interval holds no integer.
fn pick(lo: Option<BigRational>, hi: Option<BigRational>) -> BigRational {
    let zero = BigRational::zero();
    match (lo, hi) {
        (lo, hi)
            if lo.as_ref().map_or(true, |l| *l <= zero)
                && hi.as_ref().map_or(true, |h| *h >= zero) =>
        {
            zero
        }
        (Some(l), hi) if l > zero => {
            let c = l.ceil();
            if hi.map_or(true, |h| c <= h) {
                c
            } else {
                l
            }
        }
        (lo, Some(h)) => {
            let f = h.floor();
            if lo.map_or(true, |l| f >= l) {
                f
            } else {
                h
            }
        }
        _ => unreachable!("interval containing no zero has a bound on the far side"),
    }
}

/// Normalize, drop trivial rows and duplicates. `None` on a contradiction.
fn tidy(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        match r.normalize() {
            Normal::Keep(r) => out.push(r),
            Normal::Trivial => {}
            Normal::Contradiction => return None,
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// An integer vector `x` with `a . x >= 1` for every row `a`, if one exists.
pub fn strictly_negative_solution(rows: &[Vec<i64>], budget: usize) -> Result<Option<Vec<i64>>> {
    let dim = rows.first().map_or(0, Vec::len);
    let rows: Vec<Row> = rows
        .iter()
        .map(|a| Row {
            coef: a
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            rhs: BigRational::one(),
        })
        .collect();
    let Some(x) = solve(rows, dim, budget)? else {
        return Ok(None);
    };
    let denom = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    x.iter()
        .map(|q| {
            (q.numer() * (&denom / q.denom())).to_i64().ok_or_else(|| {
                Error::Domain(alloc::string::String::from("witness out of i64 range"))
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Evaluate a `0`-free term in `<Z, max, min, +, -, 0>`. `None` on `0`, an
/// unassigned variable or overflow.
pub fn eval_integer(t: &Term, assignment: &BTreeMap<Var, i64>) -> Option<i64> {
    match t {
        Term::Var(v) => assignment.get(v).copied(),
        Term::One => Some(0),
        Term::Zero => None,
        Term::Mul(ts) => ts
            .iter()
            .try_fold(0i64, |acc, c| acc.checked_add(eval_integer(c, assignment)?)),
        Term::Join(ts) => ts
            .iter()
            .map(|c| eval_integer(c, assignment))
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .max(),
        Term::Meet(ts) => ts
            .iter()
            .map(|c| eval_integer(c, assignment))
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .min(),
        Term::Inv(c) => eval_integer(c, assignment)?.checked_neg(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn fm_finds_scaled_witness() {
        // x - y >= 1, y >= 1  (with rational data hidden behind scaling)
        let sol = strictly_negative_solution(&[vec![1, -1], vec![0, 1]], 100)
            .unwrap()
            .unwrap();
        assert!(sol[0] - sol[1] >= 1 && sol[1] >= 1);
        assert_eq!(
            strictly_negative_solution(&[vec![1], vec![-1]], 100).unwrap(),
            None
        );
        assert_eq!(
            strictly_negative_solution(&[vec![0, 0]], 100).unwrap(),
            None
        );
    }

    #[test]
    fn fractional_bounds_are_scaled() {
        // 2x - 3y >= 1 and -x + 2y >= 1: x = 5, y = 3 works, solution must be integral.
        let rows = [vec![2, -3], vec![-1, 2]];
        let sol = strictly_negative_solution(&rows, 100).unwrap().unwrap();
        for r in &rows {
            assert!(r[0] * sol[0] + r[1] * sol[1] >= 1, "{sol:?}");
        }
    }

    #[test]
    fn row_budget() {
        let rows: Vec<Vec<i64>> = (0..12)
            .map(|i| {
                (0..4)
                    .map(|j| if (i >> j) & 1 == 1 { 1 } else { -1 })
                    .collect()
            })
            .collect();
        assert!(strictly_negative_solution(&rows, 5)
            .unwrap_err()
            .is_budget());
    }
}
