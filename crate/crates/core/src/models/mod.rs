//! Finite monoids and algebras, and brute-force checking over them.

mod check;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use check::{
    holds_finite, holds_finite_with, holds_quasi, holds_quasi_algebra, holds_quasi_z,
    holds_quasi_zn, nfb_witness, Assignment, Check, NfbWitness, DEFAULT_EVAL_BUDGET,
};

use crate::{Error, Result};

type Table = Vec<Vec<usize>>;

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiniteMonoid {
    pub name: String,
    names: Vec<String>,
    unit: usize,
    mul: Table,
}

fn square(table: &Table, n: usize) -> bool {
    table.len() == n
        && table
            .iter()
            .all(|row| row.len() == n && row.iter().all(|&v| v < n))
}

impl FiniteMonoid {
    /// Checks that the table is associative with `unit` as identity.
    pub fn new(name: &str, names: Vec<String>, unit: usize, mul: Table) -> Result<Self> {
        let n = names.len();
        if n == 0 || unit >= n || !square(&mul, n) {
            return Err(Error::Domain(format!("{name}: malformed monoid table")));
        }
        let m = FiniteMonoid {
            name: String::from(name),
            names,
            unit,
            mul,
        };
        if let Some(law) = m.law_failure() {
            return Err(Error::Domain(format!("{name}: {law}")));
        }
        Ok(m)
    }

    fn law_failure(&self) -> Option<String> {
        let n = self.len();
        let m = &self.mul;
        for a in 0..n {
            if m[self.unit][a] != a || m[a][self.unit] != a {
                return Some(format!("unit law fails at {}", self.names[a]));
            }
            for b in 0..n {
                for c in 0..n {
                    if m[m[a][b]][c] != m[a][m[b][c]] {
                        return Some(format!(
                            "associativity fails at {}, {}, {}",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        None
    }

    /// `Z_n` written multiplicatively as `e, a, a^2, ..., a^(n-1)`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic monoid needs n >= 1");
        let names = (0..n)
            .map(|i| match i {
                0 => String::from("e"),
                1 => String::from("a"),
                _ => format!("a^{i}"),
            })
            .collect();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteMonoid {
            name: format!("Z{n}"),
            names,
            unit: 0,
            mul,
        }
    }

    pub fn trivial() -> Self {
        FiniteMonoid {
            name: String::from("trivial"),
            names: alloc::vec![String::from("e")],
            unit: 0,
            mul: alloc::vec![alloc::vec![0]],
        }
    }

    /// `{e, a}` with `a a = a`.
    pub fn idempotent_pair() -> Self {
        FiniteMonoid {
            name: String::from("idempotent-pair"),
            names: alloc::vec![String::from("e"), String::from("a")],
            unit: 0,
            mul: alloc::vec![alloc::vec![0, 1], alloc::vec![1, 1]],
        }
    }

    pub fn product(&self, other: &FiniteMonoid) -> Self {
        let (n, k) = (self.len(), other.len());
        let names = (0..n * k)
            .map(|i| format!("({},{})", self.names[i / k], other.names[i % k]))
            .collect();
        let mul = (0..n * k)
            .map(|i| {
                (0..n * k)
                    .map(|j| self.mul[i / k][j / k] * k + other.mul[i % k][j % k])
                    .collect()
            })
            .collect();
        FiniteMonoid {
            name: format!("{}x{}", self.name, other.name),
            names,
            unit: self.unit * k + other.unit,
            mul,
        }
    }

    /// The fixed catalog used by property tests: trivial, `Z_2`..`Z_8`,
    /// `Z_2 x Z_3` and the non-cancellative idempotent pair.
    pub fn catalog() -> Vec<FiniteMonoid> {
        let mut out = alloc::vec![FiniteMonoid::trivial()];
        out.extend((2..=8).map(FiniteMonoid::cyclic));
        out.push(FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(3)));
        out.push(FiniteMonoid::idempotent_pair());
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// Left and right cancellation.
    pub fn is_cancellative(&self) -> bool {
        let n = self.len();
        (0..n).all(|c| {
            (0..n).all(|a| {
                (a + 1..n)
                    .all(|b| self.mul[c][a] != self.mul[c][b] && self.mul[a][c] != self.mul[b][c])
            })
        })
    }

    /// `c a d = c b d` implies `a = b`, checked over all quadruples.
    pub fn is_cancellative_by_definition(&self) -> bool {
        let n = self.len();
        let m = &self.mul;
        (0..n).all(|a| {
            (0..n).all(|b| a == b || (0..n).all(|c| (0..n).all(|d| m[m[c][a]][d] != m[m[c][b]][d])))
        })
    }
}

/// A finite algebra with `*`, `e` and `\/`, and optionally `/\` and `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiniteAlgebra {
    pub name: String,
    names: Vec<String>,
    unit: usize,
    zero: Option<usize>,
    top: Option<usize>,
    mul: Table,
    join: Table,
    meet: Option<Table>,
}

/// Equational classes whose laws [`FiniteAlgebra::law_failures`] can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    IdempotentSemiring,
    /// Idempotent semiring with `0` absorbing for `*` and neutral for `\/`.
    IdempotentSemiring0,
    DistributiveLatticeMonoid,
}

impl FiniteAlgebra {
    pub fn new(
        name: &str,
        names: Vec<String>,
        unit: usize,
        zero: Option<usize>,
        mul: Table,
        join: Table,
        meet: Option<Table>,
    ) -> Result<Self> {
        let n = names.len();
        let ok = n > 0
            && unit < n
            && zero.map_or(true, |z| z < n)
            && square(&mul, n)
            && square(&join, n)
            && meet.as_ref().map_or(true, |t| square(t, n));
        if !ok {
            return Err(Error::Domain(format!("{name}: malformed algebra tables")));
        }
        Ok(FiniteAlgebra {
            name: String::from(name),
            names,
            unit,
            zero,
            top: None,
            mul,
            join,
            meet,
        })
    }

    /// Table shapes and constants are in range. Deserialized algebras should
    /// pass this before use.
    pub fn validate(&self) -> Result<()> {
        let n = self.names.len();
        let ok = n > 0
            && self.unit < n
            && self.zero.map_or(true, |z| z < n)
            && self.top.map_or(true, |t| t < n)
            && square(&self.mul, n)
            && square(&self.join, n)
            && self.meet.as_ref().map_or(true, |t| square(t, n));
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{}: malformed algebra tables",
                self.name
            )))
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn has_meet(&self) -> bool {
        self.meet.is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet.as_ref().map(|t| t[a][b])
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Every law of `theory` that fails, with a violating instance.
    pub fn law_failures(&self, theory: Theory) -> Vec<String> {
        let n = self.len();
        let (m, j) = (&self.mul, &self.join);
        let mut out = Vec::new();
        let mut law = |ok: bool, what: &str, at: &[usize]| {
            if !ok && !out.iter().any(|s: &String| s.starts_with(what)) {
                let at: Vec<&str> = at.iter().map(|&i| self.names[i].as_str()).collect();
                out.push(format!("{what} at {}", at.join(", ")));
            }
        };
        for a in 0..n {
            law(m[self.unit][a] == a && m[a][self.unit] == a, "unit", &[a]);
            law(j[a][a] == a, "join idempotence", &[a]);
            if let Some(t) = &self.meet {
                law(t[a][a] == a, "meet idempotence", &[a]);
            }
            if theory == Theory::IdempotentSemiring0 {
                match self.zero {
                    Some(z) => {
                        law(m[z][a] == z && m[a][z] == z, "zero absorbs", &[a]);
                        law(j[z][a] == a, "zero is the least element", &[a]);
                    }
                    None => law(false, "zero exists", &[a]),
                }
            }
            for b in 0..n {
                law(j[a][b] == j[b][a], "join commutativity", &[a, b]);
                if let Some(t) = &self.meet {
                    law(t[a][b] == t[b][a], "meet commutativity", &[a, b]);
                    law(
                        j[a][t[a][b]] == a && t[a][j[a][b]] == a,
                        "absorption",
                        &[a, b],
                    );
                }
                for c in 0..n {
                    let abc = [a, b, c];
                    law(m[m[a][b]][c] == m[a][m[b][c]], "associativity", &abc);
                    law(j[j[a][b]][c] == j[a][j[b][c]], "join associativity", &abc);
                    law(
                        m[a][j[b][c]] == j[m[a][b]][m[a][c]],
                        "left distributivity",
                        &abc,
                    );
                    law(
                        m[j[a][b]][c] == j[m[a][c]][m[b][c]],
                        "right distributivity",
                        &abc,
                    );
                    if theory == Theory::DistributiveLatticeMonoid {
                        match &self.meet {
                            Some(t) => {
                                law(t[t[a][b]][c] == t[a][t[b][c]], "meet associativity", &abc);
                                law(
                                    t[a][j[b][c]] == j[t[a][b]][t[a][c]],
                                    "lattice distributivity",
                                    &abc,
                                );
                                law(
                                    m[a][t[b][c]] == t[m[a][b]][m[a][c]],
                                    "left meet distributivity",
                                    &abc,
                                );
                                law(
                                    m[t[a][b]][c] == t[m[a][c]][m[b][c]],
                                    "right meet distributivity",
                                    &abc,
                                );
                            }
                            None => law(false, "meet exists", &abc),
                        }
                    }
                }
            }
        }
        out
    }

    /// The two-element semifield `{0, e}` with `0 < e`.
    pub fn boolean_zero() -> Self {
        let v = |rows: [[usize; 2]; 2]| rows.iter().map(|r| r.to_vec()).collect::<Table>();
        FiniteAlgebra {
            name: String::from("B0"),
            names: alloc::vec![String::from("0"), String::from("e")],
            unit: 1,
            zero: Some(0),
            top: None,
            mul: v([[0, 0], [0, 1]]),
            join: v([[0, 1], [1, 1]]),
            meet: Some(v([[0, 0], [0, 1]])),
        }
    }
}

/// `M` plus a top element absorbing both operations; distinct elements of
/// `M` join to the top.
pub fn flat_extension(m: &FiniteMonoid) -> FiniteAlgebra {
    let n = m.len();
    let top = n;
    let mut names = m.names.clone();
    names.push(String::from("T"));
    let mul = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| {
                    if a == top || b == top {
                        top
                    } else {
                        m.mul[a][b]
                    }
                })
                .collect()
        })
        .collect();
    let join = (0..=n)
        .map(|a| (0..=n).map(|b| if a == b { a } else { top }).collect())
        .collect();
    FiniteAlgebra {
        name: format!("flat({})", m.name),
        names,
        unit: m.unit,
        zero: None,
        top: Some(top),
        mul,
        join,
        meet: None,
    }
}

/// The order-preserving self-maps of a `k`-chain under composition (first
/// map applied first), with pointwise join and meet; the identity is the
/// unit. Elements are named by their value lists, e.g. `[0,1,1]`.
pub fn endo_monoid_algebra(k: usize) -> Result<FiniteAlgebra> {
    if !(2..=4).contains(&k) {
        return Err(Error::Domain(format!(
            "endomorphism algebras are built for 2 <= k <= 4, got {k}"
        )));
    }
    let mut maps: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for f in &maps {
            let from = f.last().copied().unwrap_or(0);
            for v in from..k {
                let mut g = f.clone();
                g.push(v);
                next.push(g);
            }
        }
        maps = next;
    }
    let index = |f: &[usize]| {
        maps.iter()
            .position(|g| g == f)
            .expect("monotone maps are closed")
    };
    let build = |op: &dyn Fn(&[usize], &[usize]) -> Vec<usize>| -> Table {
        maps.iter()
            .map(|f| maps.iter().map(|g| index(&op(f, g))).collect())
            .collect()
    };
    let mul = build(&|f, g| f.iter().map(|&p| g[p]).collect());
    let join = build(&|f, g| f.iter().zip(g).map(|(a, b)| *a.max(b)).collect());
    let meet = build(&|f, g| f.iter().zip(g).map(|(a, b)| *a.min(b)).collect());
    let identity: Vec<usize> = (0..k).collect();
    let names = maps
        .iter()
        .map(|f| {
            format!(
                "[{}]",
                f.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    Ok(FiniteAlgebra {
        name: format!("O{k}"),
        names,
        unit: index(&identity),
        zero: None,
        top: None,
        mul,
        join,
        meet: Some(meet),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_z2_shape() {
        let f = flat_extension(&FiniteMonoid::cyclic(2));
        assert_eq!(f.len(), 3);
        let (e, a, t) = (
            f.element("e").unwrap(),
            f.element("a").unwrap(),
            f.top().unwrap(),
        );
        assert_eq!(f.join(e, a), t);
        assert_eq!(f.mul(a, a), e);
        assert_eq!(f.mul(t, e), t);
        assert_eq!(flat_extension(&FiniteMonoid::trivial()).len(), 2);
        let f3 = flat_extension(&FiniteMonoid::cyclic(3));
        let a3 = f3.element("a").unwrap();
        assert_eq!(f3.mul(a3, a3), f3.element("a^2").unwrap());
        assert_eq!(f3.join(a3, a3), a3);
    }

    #[test]
    fn cancellativity() {
        assert!(FiniteMonoid::cyclic(4).is_cancellative());
        assert!(FiniteMonoid::trivial().is_cancellative());
        assert!(!FiniteMonoid::idempotent_pair().is_cancellative());
        for m in FiniteMonoid::catalog() {
            assert_eq!(
                m.is_cancellative(),
                m.is_cancellative_by_definition(),
                "{}",
                m.name
            );
        }
    }

    #[test]
    fn flat_extension_is_a_semiring_iff_cancellative() {
        for m in FiniteMonoid::catalog() {
            let fails = flat_extension(&m).law_failures(Theory::IdempotentSemiring);
            assert_eq!(
                fails.is_empty(),
                m.is_cancellative(),
                "{}: {fails:?}",
                m.name
            );
        }
    }

    #[test]
    fn endomorphism_algebras() {
        let counts: Vec<usize> = (2..=4)
            .map(|k| endo_monoid_algebra(k).unwrap().len())
            .collect();
        assert_eq!(counts[..2], [3, 10]);
        for k in 2..=4 {
            let o = endo_monoid_algebra(k).unwrap();
            assert_eq!(
                o.law_failures(Theory::DistributiveLatticeMonoid),
                Vec::<String>::new()
            );
        }
        assert!(endo_monoid_algebra(5).is_err());
    }

    #[test]
    fn boolean_zero_laws() {
        assert!(FiniteAlgebra::boolean_zero()
            .law_failures(Theory::IdempotentSemiring0)
            .is_empty());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let names = alloc::vec![String::from("e"), String::from("a")];
        // Not associative-with-unit: a*a = e but e*a = e.
        let bad = alloc::vec![alloc::vec![0, 0], alloc::vec![1, 0]];
        assert!(FiniteMonoid::new("bad", names.clone(), 0, bad).is_err());
        let good = alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]];
        assert!(FiniteMonoid::new("z2", names, 0, good)
            .unwrap()
            .is_cancellative());
    }
}
