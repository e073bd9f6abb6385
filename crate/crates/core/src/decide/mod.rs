//! Decision procedures.
//!
//! [`decide_lgroup`] decides basic inequations over all ℓ-groups by
//! searching for a refuting [`Diagram`]; [`decide_tropical`] decides them
//! over the tropical semifield by linear feasibility; [`decide_statement`]
//! routes a statement of any supported class through the right
//! translations.

mod diagram;
mod search;
pub mod tropical;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use diagram::{verify_diagram, Diagram};
pub use search::MAX_POINTS;
pub use tropical::{abelianize, eval_integer};

use crate::terms::{GroupWord, Letter, Op, Relation, Signature, Statement, Term, Var};
use crate::translate::{
    ell_to_basic_with, right_regularize, split_to_basic, to_simple, zero_simplify_statement,
    BasicInequation, SimpleInequation, DEFAULT_TERM_BUDGET,
};
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_POINT_BUDGET: usize = 24;

/// Search budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Branching choices explored before giving up.
    pub nodes: u64,
    /// Points a diagram may have (capped at [`MAX_POINTS`]).
    pub points: usize,
    /// Words allowed while normalizing lattice terms.
    pub terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            nodes: DEFAULT_NODE_BUDGET,
            points: DEFAULT_POINT_BUDGET,
            terms: DEFAULT_TERM_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Status {
    Valid,
    Invalid,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Valid => "valid",
            Status::Invalid => "invalid",
        })
    }
}

/// Evidence for an invalid verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Certificate {
    /// A diagram refuting `target`, a basic inequation produced from the
    /// statement by the class pipeline.
    Diagram {
        target: BasicInequation,
        diagram: Diagram,
    },
    /// An assignment into `<Z, max, +, 0>` under which the statement fails.
    Integer { assignment: BTreeMap<Var, i64> },
    /// An assignment into the two-element semifield `{0, e}`: the listed
    /// variables go to `0`, all others to `e`.
    BooleanZero { zeros: BTreeSet<Var> },
    /// A semifield countermodel for `inner`, extended by sending `zeros` to an
    /// adjoined `0`.
    ZeroPadded {
        zeros: BTreeSet<Var>,
        inner: alloc::boxed::Box<Certificate>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Stats {
    /// Search branches explored.
    pub nodes: u64,
    /// Basic or simple inequations the statement was split into.
    pub subproblems: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub stats: Stats,
}

impl Verdict {
    fn valid(stats: Stats) -> Self {
        Verdict {
            status: Status::Valid,
            certificate: None,
            stats,
        }
    }

    fn invalid(certificate: Certificate, stats: Stats) -> Self {
        Verdict {
            status: Status::Invalid,
            certificate: Some(certificate),
            stats,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }
}

/// Classes a statement can be decided over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Class {
    /// ℓ-groups, full signature.
    Lgroup,
    /// Distributive ℓ-monoids: lattice and monoid symbols, no inverse.
    Dlmonoid,
    /// Idempotent semifields over the semiring signature.
    Semifield,
    /// Idempotent semifields over the semiring signature without `e`.
    SemifieldEfree,
    /// Idempotent semifields with an adjoined `0`.
    Semifield0,
    /// Commutative idempotent semifields.
    Commutative,
}

impl Class {
    pub const ALL: [Class; 6] = [
        Class::Lgroup,
        Class::Dlmonoid,
        Class::Semifield,
        Class::SemifieldEfree,
        Class::Semifield0,
        Class::Commutative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Lgroup => "lgroup",
            Class::Dlmonoid => "dlmonoid",
            Class::Semifield => "semifield",
            Class::SemifieldEfree => "semifield_efree",
            Class::Semifield0 => "semifield0",
            Class::Commutative => "commutative",
        }
    }

    /// The signature statements of this class are parsed in.
    pub fn signature(self) -> Signature {
        match self {
            Class::Lgroup | Class::Dlmonoid => Signature::Lgroup,
            Class::Semifield | Class::SemifieldEfree | Class::Commutative => Signature::Semiring,
            Class::Semifield0 => Signature::Semiring0,
        }
    }

    fn excluded(self) -> Option<Op> {
        match self {
            Class::Dlmonoid => Some(Op::Inv),
            Class::SemifieldEfree => Some(Op::One),
            _ => None,
        }
    }

    /// `Err` unless `st` lies in this class's language.
    pub fn check(self, st: &Statement) -> Result<()> {
        if !st.signature.is_subsignature_of(self.signature()) {
            return Err(Error::SignatureMismatch(format!(
                "{} statements use the {} signature, got {}",
                self.name(),
                self.signature(),
                st.signature
            )));
        }
        if let Some(op) = self.excluded() {
            if st.lhs.ops().contains(&op) || st.rhs.ops().contains(&op) {
                return Err(Error::OutsideSignature {
                    symbol: String::from(op.symbol()),
                    signature: String::from(self.name()),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown class `{s}`")))
    }
}

/// Decide `eps` over all ℓ-groups with default budgets.
pub fn decide_lgroup(eps: &BasicInequation) -> Result<Verdict> {
    decide_lgroup_with(eps, &Limits::default())
}

pub fn decide_lgroup_with(eps: &BasicInequation, limits: &Limits) -> Result<Verdict> {
    let words = eps.normalized_joinands();
    let stats = Stats {
        nodes: 0,
        subproblems: 1,
    };
    if words.iter().any(GroupWord::is_empty) {
        return Ok(Verdict::valid(stats));
    }
    // A tropical countermodel is an ℓ-group countermodel made of translations.
    if let Some(d) = translation_diagram(&words)? {
        return Ok(Verdict::invalid(
            Certificate::Diagram {
                target: eps.clone(),
                diagram: d,
            },
            stats,
        ));
    }
    let out = search::find_diagram(&words, limits)?;
    let stats = Stats {
        nodes: out.nodes,
        subproblems: 1,
    };
    Ok(match out.diagram {
        Some(d) => Verdict::invalid(
            Certificate::Diagram {
                target: eps.clone(),
                diagram: d,
            },
            stats,
        ),
        None => Verdict::valid(stats),
    })
}

fn word_vars(words: &[GroupWord]) -> Vec<Var> {
    let set: BTreeSet<Var> = words.iter().flat_map(GroupWord::vars).collect();
    set.into_iter().collect()
}

/// An integer assignment making every word's exponent sum at most `-1`.
fn tropical_witness(words: &[GroupWord]) -> Result<Option<BTreeMap<Var, i64>>> {
    let vars = word_vars(words);
    let rows: Vec<Vec<i64>> = words
        .iter()
        .map(|w| abelianize(w, &vars).into_iter().map(|c| -c).collect())
        .collect();
    let sol = tropical::strictly_negative_solution(&rows, tropical::DEFAULT_ROW_BUDGET)?;
    Ok(sol.map(|x| vars.into_iter().zip(x).collect()))
}

/// The diagram of translations `p -> p + a_x` restricted to the traces, when
/// a tropical witness exists. Gives up quietly if the linear system is too
/// large.
fn translation_diagram(words: &[GroupWord]) -> Result<Option<Diagram>> {
    let assignment = match tropical_witness(words) {
        Ok(Some(a)) => a,
        Ok(None) => return Ok(None),
        Err(e) if e.is_budget() => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(Some(orbit_diagram(words, 0i64, |v, inverse, &p| {
        if inverse {
            p - assignment[v]
        } else {
            p + assignment[v]
        }
    })))
}

/// The diagram of a concrete action on a chain, restricted to the traces of
/// `words` from `base`.
fn orbit_diagram<P: Ord + Clone>(
    words: &[GroupWord],
    base: P,
    act: impl Fn(&Var, bool, &P) -> P,
) -> Diagram {
    let mut values: BTreeSet<P> = BTreeSet::new();
    let mut steps: BTreeSet<(Var, P, P)> = BTreeSet::new();
    values.insert(base.clone());
    for w in words {
        let mut p = base.clone();
        for Letter { var, inverse } in w.letters() {
            let q = act(var, *inverse, &p);
            steps.insert(if *inverse {
                (var.clone(), q.clone(), p)
            } else {
                (var.clone(), p, q.clone())
            });
            values.insert(q.clone());
            p = q;
        }
    }
    let index: BTreeMap<&P, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut maps: BTreeMap<Var, Vec<(usize, usize)>> = BTreeMap::new();
    for (var, from, to) in &steps {
        maps.entry(var.clone())
            .or_default()
            .push((index[from], index[to]));
    }
    Diagram::from_maps(values.len(), index[&base], maps, words)
}

/// Decide `eps` over `<Z, max, +, 0>` (equivalently, all commutative
/// idempotent semifields and all Abelian ℓ-groups).
pub fn decide_tropical(eps: &BasicInequation) -> Result<Verdict> {
    let stats = Stats {
        nodes: 0,
        subproblems: 1,
    };
    Ok(match tropical_witness(&eps.normalized_joinands())? {
        None => Verdict::valid(stats),
        Some(mut assignment) => {
            for v in eps.vars() {
                assignment.entry(v).or_insert(0);
            }
            Verdict::invalid(Certificate::Integer { assignment }, stats)
        }
    })
}

/// The basic inequations a statement of `class` is reduced to, each paired
/// with the variables sent to `0` (nonempty only for the `0`-expanded class).
fn reduce(st: &Statement, class: Class, limits: &Limits) -> Result<Reduction> {
    class.check(st)?;
    Ok(match class {
        Class::Lgroup | Class::Dlmonoid => {
            // Fresh variables make the search much harder, so the pointwise
            // split is preferred while its normal forms stay within budget.
            let outputs = match split_to_basic(st, limits.terms) {
                Err(e) if e.is_budget() => ell_to_basic_with(st, limits.terms)?.outputs,
                other => other?,
            };
            Reduction::Basic(outputs.into_iter().map(|b| (BTreeSet::new(), b)).collect())
        }
        Class::Semifield | Class::SemifieldEfree | Class::Commutative => Reduction::Basic(
            to_simple(st)?
                .iter()
                .map(|s| (BTreeSet::new(), s.to_basic()))
                .collect(),
        ),
        Class::Semifield0 => reduce_zero(st)?,
    })
}

enum Reduction {
    /// The statement holds iff every listed inequation does.
    Basic(Vec<(BTreeSet<Var>, BasicInequation)>),
    Settled(Status, Option<Certificate>),
}

fn reduce_zero(st: &Statement) -> Result<Reduction> {
    let (l, rel, r) = zero_simplify_statement(st)?;
    let all_e = || Certificate::BooleanZero {
        zeros: BTreeSet::new(),
    };
    match (l == Term::Zero, r == Term::Zero, rel) {
        (true, true, _) | (true, false, Relation::Le) => {
            return Ok(Reduction::Settled(Status::Valid, None));
        }
        (true, false, Relation::Eq) | (false, true, _) => {
            return Ok(Reduction::Settled(Status::Invalid, Some(all_e())));
        }
        (false, false, _) => {}
    }
    let plain = Statement::new(rel, l, r, Signature::Semiring)?;
    let mut out = Vec::new();
    for eps in to_simple(&plain)? {
        let zeros: BTreeSet<Var> = eps
            .vars()
            .difference(&eps.lhs().var_set())
            .cloned()
            .collect();
        match right_regularize(&eps) {
            None => {
                return Ok(Reduction::Settled(
                    Status::Invalid,
                    Some(Certificate::BooleanZero { zeros }),
                ))
            }
            Some(rr) => out.push((zeros, rr.to_basic())),
        }
    }
    Ok(Reduction::Basic(out))
}

/// Decide `st` over `class` with default budgets.
pub fn decide_statement(st: &Statement, class: Class) -> Result<Verdict> {
    decide_statement_with(st, class, &Limits::default())
}

/// Every subproblem is decided; the first invalid one (in translation order)
/// supplies the certificate. A budget error is returned only if no
/// subproblem is invalid.
pub fn decide_statement_with(st: &Statement, class: Class, limits: &Limits) -> Result<Verdict> {
    let parts = match reduce(st, class, limits)? {
        Reduction::Settled(Status::Valid, _) => return Ok(Verdict::valid(Stats::default())),
        Reduction::Settled(Status::Invalid, cert) => {
            return Ok(Verdict::invalid(
                cert.expect("invalid settlements carry a certificate"),
                Stats::default(),
            ))
        }
        Reduction::Basic(parts) => parts,
    };
    let mut stats = Stats {
        nodes: 0,
        subproblems: parts.len(),
    };
    let mut pending: Option<Error> = None;
    for (zeros, eps) in &parts {
        let verdict = if class == Class::Commutative {
            decide_tropical(eps)
        } else {
            decide_lgroup_with(eps, limits)
        };
        match verdict {
            Ok(v) => {
                stats.nodes += v.stats.nodes;
                if let Some(cert) = v.certificate {
                    let cert = match cert {
                        _ if class == Class::Semifield0 => Certificate::ZeroPadded {
                            zeros: zeros.clone(),
                            inner: alloc::boxed::Box::new(cert),
                        },
                        // Variables only in other left joinands can take any value.
                        Certificate::Integer { mut assignment } => {
                            for v in st.vars() {
                                assignment.entry(v).or_insert(0);
                            }
                            Certificate::Integer { assignment }
                        }
                        other => other,
                    };
                    return Ok(Verdict::invalid(cert, stats));
                }
            }
            Err(e) if e.is_budget() => {
                pending.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    match pending {
        Some(e) => Err(e),
        None => Ok(Verdict::valid(stats)),
    }
}

/// Evaluate a `0`-free semiring term in `{0, e}` with `zeros` sent to `0`.
fn eval_boolean(t: &Term, zeros: &BTreeSet<Var>) -> Option<bool> {
    match t {
        Term::Var(v) => Some(!zeros.contains(v)),
        Term::One => Some(true),
        Term::Zero => Some(false),
        Term::Mul(ts) => ts
            .iter()
            .try_fold(true, |acc, c| Some(acc & eval_boolean(c, zeros)?)),
        Term::Join(ts) => ts
            .iter()
            .try_fold(false, |acc, c| Some(acc | eval_boolean(c, zeros)?)),
        Term::Meet(_) | Term::Inv(_) => None,
    }
}

/// Independently check that `cert` refutes `st` over `class`.
pub fn verify_certificate(
    st: &Statement,
    class: Class,
    cert: &Certificate,
) -> core::result::Result<(), String> {
    match cert {
        Certificate::Integer { assignment } => {
            let l = eval_integer(&st.lhs, assignment).ok_or("statement is not evaluable in Z")?;
            let r = eval_integer(&st.rhs, assignment).ok_or("statement is not evaluable in Z")?;
            let fails = match st.relation {
                Relation::Eq => l != r,
                Relation::Le => l > r,
            };
            fails
                .then_some(())
                .ok_or_else(|| format!("statement holds at the assignment ({l} vs {r})"))
        }
        Certificate::BooleanZero { zeros } => {
            if !matches!(class, Class::Semifield0) {
                return Err(format!(
                    "a {{0, e}} assignment does not refute over {class}"
                ));
            }
            let l = eval_boolean(&st.lhs, zeros).ok_or("statement is not evaluable in {0, e}")?;
            let r = eval_boolean(&st.rhs, zeros).ok_or("statement is not evaluable in {0, e}")?;
            let fails = match st.relation {
                Relation::Eq => l != r,
                Relation::Le => l && !r,
            };
            fails
                .then_some(())
                .ok_or_else(|| String::from("statement holds at the assignment"))
        }
        Certificate::Diagram { target, diagram } => {
            if matches!(class, Class::Semifield0 | Class::Commutative) {
                return Err(format!("a bare diagram does not refute over {class}"));
            }
            check_target(st, class, &BTreeSet::new(), target)?;
            verify_diagram(diagram, target)
        }
        Certificate::ZeroPadded { zeros, inner } => {
            let Certificate::Diagram { target, diagram } = &**inner else {
                return Err(String::from("zero padding must wrap a diagram"));
            };
            if class != Class::Semifield0 {
                return Err(format!("zero padding does not apply to {class}"));
            }
            check_target(st, class, zeros, target)?;
            verify_diagram(diagram, target)
        }
    }
}

fn check_target(
    st: &Statement,
    class: Class,
    zeros: &BTreeSet<Var>,
    target: &BasicInequation,
) -> core::result::Result<(), String> {
    let limits = Limits::default();
    match reduce(st, class, &limits).map_err(|e| format!("{e}"))? {
        Reduction::Basic(parts) if parts.iter().any(|(z, b)| z == zeros && b == target) => Ok(()),
        _ => Err(format!(
            "`{target}` is not among the inequations `{st}` reduces to"
        )),
    }
}

impl SimpleInequation {
    /// Decide over all ℓ-groups (equivalently, idempotent semifields).
    pub fn decide(&self) -> Result<Verdict> {
        decide_lgroup(&self.to_basic())
    }
}
