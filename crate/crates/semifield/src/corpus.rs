//! Seeded statement corpora and their file format.
//!
//! A corpus file is plain text: `#` lines are comments, a
//! `# signature: <name>` line fixes the signature of everything below it, and
//! every other nonempty line is one statement.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semifield_core::terms::{
    parse_statement, GroupWord, Letter, MonoidWord, Signature, Statement, Term, Var,
};
use semifield_core::{Error, Result};

pub const VAR_NAMES: [&str; 10] = ["x", "y", "z", "u", "v", "w", "p", "q", "r", "s"];
pub const MAX_COUNT: usize = 1_000_000;
pub const MAX_LEN: usize = 64;
pub const MAX_JOINANDS: usize = 16;

/// What a corpus line looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `s = t` between monoid words.
    Monoid,
    /// `s = t` between reduced group words.
    Group,
    /// Simple inequations `s <= t_1 \/ ... \/ t_n`.
    Simple,
    /// Semiring statements with scattered `0`s.
    Zero,
    /// Basic inequations: monoid word below a join of group words.
    Basic,
    /// `/\ \/ s_ij <= \/ /\ (t_kl \/ u_kl)` over group words.
    Shaped,
    /// Random ℓ-group terms.
    Lgroup,
}

impl Kind {
    pub fn signature(self) -> Signature {
        match self {
            Kind::Monoid => Signature::Monoid,
            Kind::Group => Signature::Group,
            Kind::Simple => Signature::Semiring,
            Kind::Zero => Signature::Semiring0,
            Kind::Basic | Kind::Shaped | Kind::Lgroup => Signature::Lgroup,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Monoid => "monoid",
            Kind::Group => "group",
            Kind::Simple => "simple",
            Kind::Zero => "zero",
            Kind::Basic => "basic",
            Kind::Shaped => "shaped",
            Kind::Lgroup => "lgroup",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Kind as clap::ValueEnum>::from_str(s, false)
            .map_err(|_| Error::Domain(format!("unknown corpus kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GenParams {
    pub kind: Kind,
    pub vars: usize,
    pub joinands: usize,
    pub max_len: usize,
    pub count: usize,
}

impl GenParams {
    pub fn new(kind: Kind, vars: usize, joinands: usize, max_len: usize, count: usize) -> Self {
        GenParams {
            kind,
            vars,
            joinands,
            max_len,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::Domain(what));
        if !(1..=VAR_NAMES.len()).contains(&self.vars) {
            return bad(format!("vars must be between 1 and {}", VAR_NAMES.len()));
        }
        if !(1..=MAX_JOINANDS).contains(&self.joinands) {
            return bad(format!("joinands must be between 1 and {MAX_JOINANDS}"));
        }
        if !(1..=MAX_LEN).contains(&self.max_len) {
            return bad(format!("max-len must be between 1 and {MAX_LEN}"));
        }
        if self.count > MAX_COUNT {
            return bad(format!("count must be at most {MAX_COUNT}"));
        }
        Ok(())
    }
}

struct Gen {
    rng: ChaCha8Rng,
    vars: Vec<Var>,
    p: GenParams,
}

impl Gen {
    fn var(&mut self) -> Var {
        self.vars
            .choose(&mut self.rng)
            .expect("at least one variable")
            .clone()
    }

    fn monoid_word(&mut self, min: usize) -> MonoidWord {
        let len = self.rng.gen_range(min.min(self.p.max_len)..=self.p.max_len);
        MonoidWord::new((0..len).map(|_| self.var()).collect())
    }

    /// A nonempty reduced word of length at most `max_len`.
    fn group_word(&mut self) -> GroupWord {
        loop {
            let len = self.rng.gen_range(1..=self.p.max_len);
            let w: GroupWord = (0..len)
                .map(|_| {
                    let v = self.var();
                    if self.rng.gen_bool(0.5) {
                        Letter::neg(v)
                    } else {
                        Letter::pos(v)
                    }
                })
                .collect();
            if !w.is_empty() {
                return w;
            }
        }
    }

    fn joinand_count(&mut self) -> usize {
        self.rng.gen_range(1..=self.p.joinands)
    }

    fn statement(&mut self) -> Statement {
        let sig = self.p.kind.signature();
        let built = match self.p.kind {
            Kind::Monoid => {
                let (s, t) = (self.monoid_word(0), self.monoid_word(0));
                Statement::equation(s.to_term(), t.to_term(), sig)
            }
            Kind::Group => {
                let (s, t) = (self.group_word(), self.group_word());
                Statement::equation(s.to_term(), t.to_term(), sig)
            }
            Kind::Simple => {
                let s = self.monoid_word(1);
                let n = self.joinand_count();
                let rhs = Term::join((0..n).map(|_| self.monoid_word(0).to_term()));
                Statement::inequation(s.to_term(), rhs, sig)
            }
            Kind::Zero => {
                let lhs = self.zero_side(2);
                let n = self.joinand_count();
                let rhs = self.zero_side(n);
                if self.rng.gen_bool(0.2) {
                    Statement::equation(lhs, rhs, sig)
                } else {
                    Statement::inequation(lhs, rhs, sig)
                }
            }
            Kind::Basic => {
                let s = self.monoid_word(0);
                let n = self.joinand_count();
                let rhs = Term::join((0..n).map(|_| self.group_word().to_term()));
                Statement::inequation(s.to_term(), rhs, sig)
            }
            Kind::Shaped => {
                let meets = self.rng.gen_range(1..=2);
                let lhs = Term::meet((0..meets).map(|_| {
                    let k = self.rng.gen_range(1..=2);
                    Term::join((0..k).map(|_| self.group_word().to_term()))
                }));
                let n = self.joinand_count();
                let rhs = Term::join((0..n).map(|_| {
                    let m = self.rng.gen_range(1..=3);
                    Term::meet((0..m).map(|_| {
                        let k = self.rng.gen_range(1..=2);
                        Term::join((0..k).map(|_| self.group_word().to_term()))
                    }))
                }));
                Statement::inequation(lhs, rhs, sig)
            }
            Kind::Lgroup => {
                let (l, r) = (
                    self.lattice_term(self.p.max_len),
                    self.lattice_term(self.p.max_len),
                );
                if self.rng.gen_bool(0.25) {
                    Statement::equation(l, r, sig)
                } else {
                    Statement::inequation(l, r, sig)
                }
            }
        };
        built.expect("generated statements lie in their signature")
    }

    /// A join of up to `n` words, some multiplied by `0`, occasionally `0` itself.
    fn zero_side(&mut self, n: usize) -> Term {
        if self.rng.gen_bool(0.1) {
            return Term::Zero;
        }
        let k = self.rng.gen_range(1..=n);
        Term::join((0..k).map(|_| {
            let w = self.monoid_word(0).to_term();
            if self.rng.gen_bool(0.2) {
                Term::mul([w, Term::Zero])
            } else {
                w
            }
        }))
    }

    /// A term with at most `leaves` variable or `e` leaves.
    fn lattice_term(&mut self, leaves: usize) -> Term {
        if leaves <= 1 || self.rng.gen_bool(0.2) {
            let t = if self.rng.gen_bool(0.1) {
                Term::One
            } else {
                Term::Var(self.var())
            };
            return if self.rng.gen_bool(0.25) {
                Term::inv(t)
            } else {
                t
            };
        }
        let left = self.rng.gen_range(1..leaves);
        let (a, b) = (self.lattice_term(left), self.lattice_term(leaves - left));
        let t = match self.rng.gen_range(0..3) {
            0 => Term::mul([a, b]),
            1 => Term::join([a, b]),
            _ => Term::meet([a, b]),
        };
        if self.rng.gen_bool(0.15) {
            Term::inv(t)
        } else {
            t
        }
    }
}

/// `count` statements drawn deterministically from `seed`.
pub fn generate(seed: u64, params: &GenParams) -> Result<Vec<Statement>> {
    params.validate()?;
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        vars: VAR_NAMES[..params.vars]
            .iter()
            .map(|n| Var::new(n))
            .collect(),
        p: *params,
    };
    Ok((0..params.count).map(|_| g.statement()).collect())
}

/// The corpus file for `generate(seed, params)`.
pub fn generate_corpus(seed: u64, params: &GenParams) -> Result<String> {
    let statements = generate(seed, params)?;
    let mut out = String::new();
    let p = params;
    writeln!(out, "# signature: {}", p.kind.signature()).unwrap();
    writeln!(out, "# kind: {}", p.kind.name()).unwrap();
    writeln!(
        out,
        "# seed: {seed} vars: {} joinands: {} max-len: {} count: {}",
        p.vars, p.joinands, p.max_len, p.count
    )
    .unwrap();
    for st in &statements {
        writeln!(out, "{st}").unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub kind: Option<Kind>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub line: usize,
    pub statement: Statement,
}

/// Parse a corpus file. Statements before any signature line use `default`.
pub fn read_corpus(text: &str, default: Signature) -> Result<Corpus> {
    let mut sig = default;
    let mut kind = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(name) = comment.strip_prefix("signature:") {
                sig = name.trim().parse()?;
            } else if let Some(name) = comment.strip_prefix("kind:") {
                kind = Some(name.trim().parse()?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let statement = parse_statement(line, sig).map_err(|e| match e {
            Error::Parse(p) => Error::Domain(format!("line {}: {p}", i + 1)),
            other => Error::Domain(format!("line {}: {other}", i + 1)),
        })?;
        entries.push(Entry {
            line: i + 1,
            statement,
        });
    }
    Ok(Corpus { kind, entries })
}
